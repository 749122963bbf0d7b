import csv
import io
import json

from ksums import (build_extension_graphs, enumerate_representations, exhaustive_search,
                   ksum_multiplicity, ratio_check, structural_checks, verify_counting_chain)
from ksums.serialize import CSV_COLUMNS, dumps, verdicts_csv


def test_graph_json_shape():
    doc = json.loads(dumps(build_extension_graphs([1, 2, 3], 1)))
    assert doc["k"] == 1
    assert doc["U"] == [1, 2, 3] and doc["V"] == [3, 4, 5]
    assert doc["edges"][0] == [1, 3, False]
    assert doc["S_set"] == [] and doc["T_set"] == []


def test_report_json_shape():
    doc = json.loads(dumps(verify_counting_chain([1, 2, 3, 4], 2)))
    assert doc["instance"] == {"A": [1, 2, 3, 4], "k": 2}
    assert doc["hypothesis_flags"] == {"theorem": False, "question": False}
    names = [c["name"] for c in doc["checks"]]
    assert names[-1] == "conclusion"
    assert doc["checks"][-1]["witness"]["counts"]["size_k1"] == 4


def test_tables_and_reps():
    doc = json.loads(dumps(ksum_multiplicity([1, 2, 3, 4, 5], 2)))
    assert doc["entries"][2] == [5, 2]
    doc = json.loads(dumps(enumerate_representations([1, 2, 3, 4], 2)))
    assert doc["groups"][2] == [5, [[1, 4], [2, 3]]]
    doc = json.loads(dumps(structural_checks([1, 2, 4, 8])))
    assert doc["gp_params"] == [1, 2]


def test_search_timing_optional():
    rep = exhaustive_search(6, 3, 1)
    assert "wall_time" in json.loads(dumps(rep))
    assert "wall_time" not in json.loads(dumps(rep, timing=False))


def test_csv_columns():
    text = verdicts_csv([ratio_check([1, 2, 3, 4], 2), ratio_check([1, 2, 4, 8], 1)])
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_COLUMNS
    assert rows[1] == ["1,2,3,4", "4", "2", "5", "4", "12", "10", "0", "0", "0"]

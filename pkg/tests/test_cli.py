import csv
import io
import json

import pytest

from ksums.cli import main, parse_gen, parse_krange


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_json(capsys):
    code, out, _ = run(capsys, "compute", "--set", "1,2,3,4,5", "--k", "2", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    res = doc["results"][0]
    assert res["size"] == 7
    assert dict(map(tuple, res["table"]["entries"])) == {3: 1, 4: 1, 5: 2, 6: 2, 7: 2, 8: 1, 9: 1}
    assert doc["config"]["set"] == ["1,2,3,4,5"]
    assert doc["version"] and "wall_time" in doc


def test_compute_oracle_crosscheck(capsys):
    code, out, _ = run(capsys, "compute", "--gen", "random:n=8,lo=-20,hi=20,seed=3",
                       "--check-oracle", "--cap", "100")
    assert code == 0
    assert all(r["oracle_agrees"] for r in json.loads(out)["results"])


def test_verify_gp(capsys):
    code, out, _ = run(capsys, "verify", "--gen", "gp:n=5,r=2,a0=1", "--k", "1..3")
    assert code == 0
    results = json.loads(out)["results"]
    assert [r["report"]["instance"]["k"] for r in results] == [1, 2, 3]
    for r in results:
        assert r["report"]["chain_holds"]
        assert r["ratio"]["equality"]


def test_verify_default_k_range_and_text(capsys):
    code, out, _ = run(capsys, "verify", "--set", "1,2,3,4", "--format", "text")
    assert code == 0
    assert out.count("chain=ok") == 3
    assert "12 <= 10 -> False" in out


def test_search_exhaustive(capsys):
    code, out, _ = run(capsys, "search", "--exhaustive", "--universe", "6", "--n", "3", "--k", "1")
    assert code == 0
    assert json.loads(out)["results"][0]["instances_checked"] == 20


def test_search_csv_rows(capsys):
    code, out, _ = run(capsys, "search", "--exhaustive", "--universe", "6", "--n", "3", "--k", "1",
                       "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 20
    assert list(rows[0]) == ["set", "n", "k", "size_k", "size_k1", "lhs_cross", "rhs_cross",
                             "holds", "hyp_theorem", "hyp_question"]


def test_search_stochastic_reproducible(capsys):
    argv = ["search", "--stochastic", "--n", "5", "--k", "2", "--range=-20..20",
            "--seed", "4", "--budget", "300", "--reproducible"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv)
    assert a == b
    assert json.loads(a)["config"]["seed"] == 4


@pytest.mark.parametrize("argv,code", [
    (["compute", "--set", "1,1,2"], 2),
    (["compute", "--set", "1,x"], 2),
    (["compute", "--set", "1,2,3", "--k", "5"], 2),
    (["verify", "--set", "1,2,3", "--k", "3"], 2),
    (["compute", "--gen", "gp:n=70,r=2,a0=1"], 2),
    (["search", "--exhaustive", "--universe", "4", "--n", "5", "--k", "1"], 2),
    (["search", "--exhaustive", "--universe", "40", "--n", "10", "--k", "2", "--budget", "10"], 3),
    (["search", "--stochastic", "--n", "5", "--k", "2", "--range", "1..4"], 2),
    (["compute"], 2),
])
def test_exit_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert err.startswith("ksums:")


def test_file_input_and_report(tmp_path, capsys):
    sets = tmp_path / "sets.txt"
    sets.write_text("# corpus\n1,2,3,4\n\n1,2,4,8  # gp\n")
    out1 = tmp_path / "v.json"
    code, _, _ = run(capsys, "verify", "--file", str(sets), "--output", str(out1))
    assert code == 0
    out2 = tmp_path / "s.csv"
    run(capsys, "search", "--exhaustive", "--universe", "5", "--n", "4", "--k", "1",
        "--format", "csv", "--output", str(out2))
    code, out, _ = run(capsys, "report", str(out1), str(out2), "--format", "json", "--reproducible")
    assert code == 0
    rows = json.loads(out)["results"]
    keyed = {(tuple(r["A"]), r["k"]): r for r in rows}
    assert keyed[((1, 2, 3, 4), 2)]["ratio"] == "4/5"
    assert keyed[((1, 2, 3, 4), 2)]["bound"] == "2/3"
    assert keyed[((1, 2, 4, 8), 1)]["holds"] is True
    assert len(keyed) == len(rows)
    code, text, _ = run(capsys, "report", str(out1), "--format", "text")
    assert "ratio" in text.splitlines()[0]


def test_counterexample_exits_zero_with_certificate(tmp_path, capsys):
    # a hand-made CSV claiming a violation with n > 2k must be reported, not rejected
    fake = tmp_path / "fake.csv"
    fake.write_text("set,n,k,size_k,size_k1,lhs_cross,rhs_cross,holds,hyp_theorem,hyp_question\n"
                    "\"1,2,3,4,5\",5,1,5,9,18,20,1,1,1\n\"1,2,3,4,6\",5,1,2,9,18,8,0,1,1\n")
    code, _, err = run(capsys, "report", str(fake))
    assert code == 0
    assert "COUNTEREXAMPLE" in err


def test_parsers():
    assert parse_krange("1..3") == (1, 3)
    assert parse_krange("4") == (4, 4)
    assert parse_gen("random:n=6,range=-50..50,seed=7") == ("random", {"n": 6, "lo": -50, "hi": 50, "seed": 7})
    assert parse_gen("random:n=3,lo=0,hi=9")[1]["seed"] == 0


def test_separate_processes_byte_identical():
    import subprocess
    import sys
    argv = [sys.executable, "-m", "ksums.cli", "verify", "--gen", "random:n=7,lo=-30,hi=30,seed=9",
            "--reproducible"]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b and a

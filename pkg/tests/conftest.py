import hypothesis.strategies as st
import pytest
from hypothesis import settings

from ksums import ksum_multiplicity, ksum_sizes

settings.register_profile("ci", max_examples=60, deadline=None)
settings.load_profile("ci")


def small_sets(min_size=1, max_size=10, lo=-50, hi=50):
    return st.lists(st.integers(lo, hi), min_size=min_size, max_size=max_size, unique=True)


@pytest.fixture(scope="session", autouse=True)
def warm_jit():
    # compile kernels once so timing assertions measure run time only
    ksum_sizes([1, 2, 3])
    ksum_multiplicity([1, 2, 3], 1, cap=2)
    ksum_multiplicity([1, 2, 3], 1, cap=1000)

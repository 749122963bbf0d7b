import pytest

from ksums import IntegerSet, InvalidInputError, SumOverflowError


def test_sorted_and_canonical_text():
    A = IntegerSet([5, -3, 2])
    assert A.elements == (-3, 2, 5)
    assert A.n == 3
    assert A.to_text() == "-3,2,5"
    assert IntegerSet.parse(" -3, 2 ,5 ") == A


def test_duplicates_rejected():
    with pytest.raises(InvalidInputError, match="duplicate"):
        IntegerSet([1, 2, 2])


@pytest.mark.parametrize("bad", [[1.5], ["x"], [True]])
def test_non_integers_rejected(bad):
    with pytest.raises(InvalidInputError):
        IntegerSet(bad)


def test_overflow_detected_at_construction():
    big = 1 << 62
    IntegerSet([big, 1, 2])  # sum of positives fits
    with pytest.raises(SumOverflowError):
        IntegerSet([big, big - 1, big - 2])
    with pytest.raises(SumOverflowError):
        IntegerSet([-big, -big + 1, -big + 2])


def test_parse_errors():
    with pytest.raises(InvalidInputError):
        IntegerSet.parse("1,two,3")
    with pytest.raises(InvalidInputError):
        IntegerSet.parse("  ")


def test_without():
    A = IntegerSet([1, 2, 3])
    assert A.without(2).elements == (1, 3)
    with pytest.raises(InvalidInputError):
        A.without(7)

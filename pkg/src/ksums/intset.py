"""Canonical integer sets."""

from __future__ import annotations

import numbers
from typing import Iterable

import numpy as np

from .errors import InvalidInputError, SumOverflowError

INT64_MAX = (1 << 63) - 1
INT64_MIN = -(1 << 63)


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise InvalidInputError(f"not an integer: {x!r}")
    if not isinstance(x, numbers.Integral):
        if isinstance(x, numbers.Real) and float(x).is_integer():
            return int(x)
        raise InvalidInputError(f"not an integer: {x!r}")
    return int(x)


class IntegerSet:
    """A finite set of distinct 64-bit integers, stored sorted.

    Construction rejects duplicates rather than merging them, and rejects
    any set whose subset sums could leave the signed 64-bit range.
    """

    __slots__ = ("elements", "_array")

    def __init__(self, elements: Iterable[int]):
        vals = [_as_int(x) for x in elements]
        ordered = sorted(vals)
        for a, b in zip(ordered, ordered[1:]):
            if a == b:
                raise InvalidInputError(f"duplicate element {a}; a set cannot repeat values")
        pos = sum(v for v in ordered if v > 0)
        neg = sum(v for v in ordered if v < 0)
        if pos > INT64_MAX or neg < INT64_MIN:
            raise SumOverflowError(
                "subset sums of this set do not fit in a signed 64-bit integer "
                f"(range [{neg}, {pos}])"
            )
        self.elements = tuple(ordered)
        self._array = None

    @classmethod
    def coerce(cls, obj) -> "IntegerSet":
        return obj if isinstance(obj, cls) else cls(obj)

    @classmethod
    def parse(cls, text: str) -> "IntegerSet":
        """Parse the canonical text form ``"1,2,3"`` (whitespace tolerated)."""
        parts = [p.strip() for p in text.replace(" ", ",").split(",")]
        parts = [p for p in parts if p]
        if not parts:
            raise InvalidInputError(f"empty set: {text!r}")
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            if isinstance(exc, InvalidInputError):
                raise
            raise InvalidInputError(f"cannot parse set {text!r}: {exc}") from None

    @property
    def n(self) -> int:
        return len(self.elements)

    def as_array(self) -> np.ndarray:
        if self._array is None:
            arr = np.array(self.elements, dtype=np.int64)
            arr.setflags(write=False)
            self._array = arr
        return self._array

    def without(self, a: int) -> "IntegerSet":
        if a not in self.elements:
            raise InvalidInputError(f"{a} is not an element of the set")
        return IntegerSet(x for x in self.elements if x != a)

    def to_text(self) -> str:
        return ",".join(str(x) for x in self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self.elements

    def __eq__(self, other):
        if isinstance(other, IntegerSet):
            return self.elements == other.elements
        return NotImplemented

    def __lt__(self, other):
        return self.elements < other.elements

    def __hash__(self):
        return hash(self.elements)

    def __repr__(self):
        return f"IntegerSet([{self.to_text()}])"


def check_k(k, lo: int, hi: int, what: str = "k") -> int:
    if isinstance(k, bool) or not isinstance(k, numbers.Integral):
        raise InvalidInputError(f"{what} must be an integer, got {k!r}")
    k = int(k)
    if not lo <= k <= hi:
        raise InvalidInputError(f"{what}={k} out of range [{lo}, {hi}]")
    return k

"""Exact geometry of finite interval unions on the real line.

All endpoints are `fractions.Fraction`, so unions, intersections,
differences and Lebesgue measures are computed exactly.  An IntervalSet
is kept in canonical form: sorted, pairwise disjoint, half-open pieces
[lo, hi) with adjacent pieces merged.  The canonical form is unique per
almost-everywhere equivalence class of finite interval unions, which
turns "equal up to a null set" and "contained up to a null set" into
decidable, exact relations: two sets agree a.e. iff their canonical
forms are structurally equal.

Half-open pieces stand in for closed or open intervals of the same
endpoints; the difference is a finite set of points and therefore
Lebesgue-null.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Union

RationalLike = Union[Fraction, int, str]

__all__ = ["RationalLike", "as_rational", "Interval", "IntervalSet"]


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int, float, Fraction, or "p/q" string to an exact Fraction.

    Floats convert exactly (every double is a dyadic rational); strings
    accept "p", "p/q", and decimal literals.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"invalid rational literal {value!r}") from exc
    raise TypeError(f"cannot interpret {type(value).__name__} as a rational")


@dataclass(frozen=True, slots=True, order=True)
class Interval:
    """Half-open interval [lo, hi) of positive length."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_rational(self.lo))
        object.__setattr__(self, "hi", as_rational(self.hi))
        if self.lo >= self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi})")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: RationalLike) -> bool:
        q = as_rational(x)
        return self.lo <= q < self.hi

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi})"


class IntervalSet:
    """Canonical finite union of half-open rational intervals."""

    __slots__ = ("parts",)

    parts: tuple[Interval, ...]

    def __init__(self, intervals: Iterable[Interval] = ()):
        pairs = sorted((iv.lo, iv.hi) for iv in intervals)
        merged: list[list[Fraction]] = []
        for lo, hi in pairs:
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        object.__setattr__(self, "parts", tuple(Interval(lo, hi) for lo, hi in merged))

    @classmethod
    def of(cls, *pairs: tuple[RationalLike, RationalLike]) -> "IntervalSet":
        """Build from (lo, hi) pairs; overlapping input is unified."""
        return cls(Interval(as_rational(lo), as_rational(hi)) for lo, hi in pairs)

    @classmethod
    def empty(cls) -> "IntervalSet":
        return _EMPTY

    # -- set algebra ------------------------------------------------------

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet((*self.parts, *other.parts))

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        a, b = self.parts, other.parts
        i = j = 0
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo < hi:
                out.append(Interval(lo, hi))
            if a[i].hi <= b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(out)

    def subtract(self, other: "IntervalSet") -> "IntervalSet":
        out = []
        for part in self.parts:
            lo = part.lo
            for q in other.parts:
                if q.hi <= lo:
                    continue
                if q.lo >= part.hi:
                    break
                if q.lo > lo:
                    out.append(Interval(lo, q.lo))
                lo = max(lo, q.hi)
                if lo >= part.hi:
                    break
            if lo < part.hi:
                out.append(Interval(lo, part.hi))
        return IntervalSet(out)

    __or__ = union
    __and__ = intersect
    __sub__ = subtract

    # -- measure-theoretic relations --------------------------------------

    def measure(self) -> Fraction:
        return sum((p.length for p in self.parts), Fraction(0))

    def ae_subset(self, other: "IntervalSet") -> bool:
        """True iff self is contained in other up to a null set."""
        return not self.subtract(other).parts

    def ae_equal(self, other: "IntervalSet") -> bool:
        """True iff self equals other up to a null set (canonical equality)."""
        return self.parts == other.parts

    def contains(self, x: RationalLike) -> bool:
        q = as_rational(x)
        for p in self.parts:
            if q < p.lo:
                return False
            if q < p.hi:
                return True
        return False

    # -- views -------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.parts

    def hull(self) -> Interval | None:
        if not self.parts:
            return None
        return Interval(self.parts[0].lo, self.parts[-1].hi)

    def endpoints(self) -> list[Fraction]:
        out = []
        for p in self.parts:
            out.append(p.lo)
            out.append(p.hi)
        return out

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __repr__(self) -> str:
        if not self.parts:
            return "IntervalSet()"
        return " u ".join(repr(p) for p in self.parts)


_EMPTY = IntervalSet()

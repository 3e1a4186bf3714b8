"""Piecewise-affine bijections between interval sets.

A PAMap is a finite collection of affine pieces x -> a*x + b with
pairwise disjoint sources and pairwise disjoint images; it represents an
a.e. bijection from the union of the sources onto the union of the
images.  Slopes and offsets are exact rationals, so inverses compose
back exactly and the supports of transported functions never drift.

Under Lebesgue measure, the pushforward of a set through a piece of
slope a scales lengths by |a|; the Radon-Nikodym weight of the map is
therefore the piecewise constant |a|, strictly positive because slopes
of zero are rejected at construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import SupportError
from .intervals import Interval, IntervalSet, RationalLike, as_rational

__all__ = ["AffinePiece", "PAMap", "affine_between"]


@dataclass(frozen=True, slots=True)
class AffinePiece:
    """One affine branch x -> a*x + b restricted to a source interval."""

    src: Interval
    a: Fraction
    b: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", as_rational(self.a))
        object.__setattr__(self, "b", as_rational(self.b))
        if self.a == 0:
            raise ValueError("affine piece must have nonzero slope")

    @property
    def image(self) -> Interval:
        """Image interval in canonical half-open form (a.e. exact)."""
        y1 = self.a * self.src.lo + self.b
        y2 = self.a * self.src.hi + self.b
        return Interval(min(y1, y2), max(y1, y2))

    def map_point(self, x: RationalLike) -> Fraction:
        return self.a * as_rational(x) + self.b

    def inverse(self) -> "AffinePiece":
        return AffinePiece(self.image, 1 / self.a, -self.b / self.a)


def affine_between(src: Interval, dst: Interval) -> AffinePiece:
    """The orientation-preserving affine piece mapping src onto dst."""
    a = dst.length / src.length
    b = dst.lo - a * src.lo
    return AffinePiece(src, a, b)


class PAMap:
    """Piecewise-affine a.e. bijection domain -> image.

    Pieces are kept sorted by source; adjacent pieces realizing the same
    affine law are merged, so two maps that agree pointwise have equal
    piece lists.
    """

    __slots__ = ("pieces", "domain", "image")

    pieces: tuple[AffinePiece, ...]
    domain: IntervalSet
    image: IntervalSet

    def __init__(self, pieces: Iterable[AffinePiece]):
        items = sorted(pieces, key=lambda p: p.src.lo)
        merged: list[AffinePiece] = []
        for p in items:
            if (
                merged
                and merged[-1].src.hi == p.src.lo
                and merged[-1].a == p.a
                and merged[-1].b == p.b
            ):
                last = merged.pop()
                p = AffinePiece(Interval(last.src.lo, p.src.hi), p.a, p.b)
            merged.append(p)
        for prev, nxt in zip(merged, merged[1:]):
            if prev.src.hi > nxt.src.lo:
                raise ValueError(f"overlapping sources {prev.src} and {nxt.src}")
        images = sorted(p.image for p in merged)
        for prev_iv, nxt_iv in zip(images, images[1:]):
            if prev_iv.hi > nxt_iv.lo:
                raise ValueError(f"overlapping images {prev_iv} and {nxt_iv}")
        object.__setattr__(self, "pieces", tuple(merged))
        object.__setattr__(self, "domain", IntervalSet(p.src for p in merged))
        object.__setattr__(self, "image", IntervalSet(images))

    def _piece_at(self, x: Fraction) -> AffinePiece:
        for p in self.pieces:
            if p.src.lo <= x < p.src.hi:
                return p
        # Closure fallback: an orientation-reversing piece sends its source's
        # missing right endpoint where the canonical half-open image needs it,
        # so evaluation at src.hi keeps inverse-of-inverse exact pointwise.
        for p in self.pieces:
            if x == p.src.hi:
                return p
        raise SupportError(f"{x} is outside the map domain {self.domain}")

    def __call__(self, x: RationalLike) -> Fraction:
        q = as_rational(x)
        p = self._piece_at(q)
        return p.a * q + p.b

    def rn_weight(self, x: RationalLike) -> Fraction:
        """Radon-Nikodym weight |slope| of the piece containing x."""
        return abs(self._piece_at(as_rational(x)).a)

    def invert(self) -> "PAMap":
        return PAMap(p.inverse() for p in self.pieces)

    def image_of(self, region: IntervalSet) -> IntervalSet:
        """Exact forward image of a region intersected with the domain."""
        out = []
        for p in self.pieces:
            hit = region.intersect(IntervalSet((p.src,)))
            for part in hit:
                y1 = p.a * part.lo + p.b
                y2 = p.a * part.hi + p.b
                out.append(Interval(min(y1, y2), max(y1, y2)))
        return IntervalSet(out)

    def preimage_of(self, region: IntervalSet) -> IntervalSet:
        return self.invert().image_of(region)

    def __eq__(self, other) -> bool:
        return isinstance(other, PAMap) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        laws = ", ".join(f"{p.src}: {p.a}x+{p.b}" for p in self.pieces)
        return f"PAMap({laws})"

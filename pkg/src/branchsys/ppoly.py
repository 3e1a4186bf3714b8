"""Piecewise polynomials with exact rational breakpoints.

This is the dense class of compactly supported functions on which the
whole operator calculus acts in closed form: multiplication by
indicators, affine changes of variable, pointwise products and squares,
and integration all land back in the class.  Supports are tracked
exactly (Fraction endpoints); coefficient arithmetic is double-precision
complex.  The split keeps set-level facts (where a function lives) exact
while values carry ordinary floating-point error.

Internally each piece stores its polynomial in the *local* basis
(x - lo)^k around the piece's left endpoint.  Affine substitution then
reduces to scaling coefficients by powers of the slope plus at most one
small shift, so transporting functions back and forth between intervals
far from the origin does not suffer the catastrophic cancellation the
global monomial basis exhibits.  The public constructor and the wire
format still speak global monomials (value at x is sum of c_k * x^k).

A PPoly is canonical: pieces sorted, pairwise disjoint, trailing zero
coefficients trimmed, identically-zero pieces dropped, and adjacent
pieces realizing the same polynomial merged.  The zero function is the
empty piece list.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .errors import DegreeLimitError
from .intervals import Interval, IntervalSet, RationalLike, as_rational
from .roots import sign_change_points

__all__ = ["PPoly", "MAX_DEGREE"]

MAX_DEGREE = 16

# One piece: (lo, hi, coeffs) with value sum c_k (x - lo)^k for x in [lo, hi).
Piece = tuple[Fraction, Fraction, tuple[complex, ...]]


def _shift(coeffs: Sequence[complex], d) -> list[complex]:
    """Coefficients of t -> p(t + d), by Ruffini-Horner Taylor shift."""
    out = list(coeffs)
    if d == 0:
        return out
    n = len(out)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            out[j] += d * out[j + 1]
    return out


def _scale_arg(coeffs: Sequence[complex], a) -> list[complex]:
    """Coefficients of t -> p(a * t)."""
    out = []
    power = 1.0
    for c in coeffs:
        out.append(c * power)
        power *= a
    return out


def _local_integral(coeffs: Sequence[complex], length: float) -> complex:
    """Integral of the local polynomial over [0, length)."""
    total = 0j
    power = length
    for k, c in enumerate(coeffs):
        total += c * power / (k + 1)
        power *= length
    return total


def _segment_integral(coeffs: Sequence[complex], u: float, v: float) -> complex:
    """Integral of the local polynomial over [u, v) in local coordinates."""
    total = 0j
    pu, pv = u, v
    for k, c in enumerate(coeffs):
        total += c * (pv - pu) / (k + 1)
        pu *= u
        pv *= v
    return total


def _convolve(ca: Sequence[complex], cb: Sequence[complex]) -> list[complex]:
    out = [0j] * (len(ca) + len(cb) - 1)
    for i, x in enumerate(ca):
        for j, y in enumerate(cb):
            out[i + j] += x * y
    return out


def _trimmed(coeffs: Iterable[complex]) -> tuple[complex, ...]:
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def _overlay(pa: tuple[Piece, ...], pb: tuple[Piece, ...]):
    """Segments (u, v, ca, cb) of the common refinement, coefficients
    recentered to u; None where a side vanishes."""
    bps = sorted(
        {q for p in pa for q in (p[0], p[1])} | {q for p in pb for q in (p[0], p[1])}
    )
    ia = ib = 0
    na, nb = len(pa), len(pb)
    for u, v in zip(bps, bps[1:]):
        while ia < na and pa[ia][1] <= u:
            ia += 1
        while ib < nb and pb[ib][1] <= u:
            ib += 1
        ca = cb = None
        if ia < na and pa[ia][0] <= u:
            ca = _shift(pa[ia][2], float(u - pa[ia][0]))
        if ib < nb and pb[ib][0] <= u:
            cb = _shift(pb[ib][2], float(u - pb[ib][0]))
        if ca is None and cb is None:
            continue
        yield u, v, ca, cb


class PPoly:
    """Complex piecewise-polynomial function of compact support."""

    __slots__ = ("pieces",)

    pieces: tuple[Piece, ...]

    def __init__(
        self,
        pieces: Iterable[tuple[RationalLike, RationalLike, Sequence[complex]]] = (),
        *,
        local: bool = False,
    ):
        """Build from (lo, hi, coefficients) triples.

        Coefficients are global monomials (value = sum c_k x^k) unless
        ``local=True``, in which case they are already relative to each
        piece's left endpoint.  Pieces must not overlap.
        """
        cleaned: list[Piece] = []
        for lo, hi, coeffs in pieces:
            qlo, qhi = as_rational(lo), as_rational(hi)
            if qlo >= qhi:
                continue
            if not local:
                coeffs = _shift(coeffs, float(qlo))
            cs = _trimmed(coeffs)
            if not cs:
                continue
            if len(cs) - 1 > MAX_DEGREE:
                raise DegreeLimitError(
                    f"degree {len(cs) - 1} exceeds the supported maximum {MAX_DEGREE}"
                )
            cleaned.append((qlo, qhi, cs))
        cleaned.sort(key=lambda p: p[0])
        merged: list[Piece] = []
        for piece in cleaned:
            if merged and piece[0] < merged[-1][1]:
                raise ValueError(f"overlapping pieces at {piece[0]}")
            if merged and piece[0] == merged[-1][1]:
                prev = merged[-1]
                carried = _trimmed(_shift(prev[2], float(piece[0] - prev[0])))
                if carried == piece[2]:
                    merged[-1] = (prev[0], piece[1], prev[2])
                    continue
            merged.append(piece)
        object.__setattr__(self, "pieces", tuple(merged))

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls) -> "PPoly":
        return cls()

    @classmethod
    def indicator(cls, region: IntervalSet | Interval) -> "PPoly":
        if isinstance(region, Interval):
            region = IntervalSet((region,))
        return cls(((p.lo, p.hi, (1.0 + 0j,)) for p in region), local=True)

    @classmethod
    def single(cls, lo: RationalLike, hi: RationalLike, coeffs: Sequence[complex]) -> "PPoly":
        """One piece with *global* monomial coefficients."""
        return cls(((lo, hi, coeffs),))

    # -- structure ----------------------------------------------------------

    @property
    def degree(self) -> int:
        return max((len(c) - 1 for _, _, c in self.pieces), default=0)

    @property
    def is_zero(self) -> bool:
        return not self.pieces

    @property
    def is_real(self) -> bool:
        return all(c.imag == 0.0 for _, _, cs in self.pieces for c in cs)

    def support(self) -> IntervalSet:
        """Support up to null sets: the union of the piece intervals."""
        return IntervalSet(Interval(lo, hi) for lo, hi, _ in self.pieces)

    def monomial_pieces(self) -> list[tuple[Fraction, Fraction, tuple[complex, ...]]]:
        """Pieces with coefficients rebased to global monomials (wire form)."""
        return [
            (lo, hi, _trimmed(_shift(cs, -float(lo)))) for lo, hi, cs in self.pieces
        ]

    # -- evaluation ---------------------------------------------------------

    def __call__(self, x: RationalLike) -> complex:
        q = as_rational(x)
        for lo, hi, coeffs in self.pieces:
            if q < lo:
                return 0j
            if q < hi:
                t = float(q - lo)
                acc = 0j
                for c in reversed(coeffs):
                    acc = acc * t + c
                return acc
        return 0j

    def sample(self, xs: np.ndarray) -> np.ndarray:
        """Vectorized evaluation at float sample points.

        Membership tests happen at double precision, so keep sample points
        away from breakpoints (use midpoint grids).
        """
        xs = np.asarray(xs, dtype=float)
        out = np.zeros(xs.shape, dtype=complex)
        for lo, hi, coeffs in self.pieces:
            flo = float(lo)
            mask = (xs >= flo) & (xs < float(hi))
            if mask.any():
                out[mask] = np.polyval(list(reversed(coeffs)), xs[mask] - flo)
        return out

    # -- linear structure -----------------------------------------------------

    def __add__(self, other: "PPoly") -> "PPoly":
        if not isinstance(other, PPoly):
            return NotImplemented
        if not self.pieces:
            return other
        if not other.pieces:
            return self
        segs = []
        for u, v, ca, cb in _overlay(self.pieces, other.pieces):
            if ca is None:
                segs.append((u, v, cb))
            elif cb is None:
                segs.append((u, v, ca))
            else:
                n = max(len(ca), len(cb))
                coeffs = [
                    (ca[i] if i < len(ca) else 0j) + (cb[i] if i < len(cb) else 0j)
                    for i in range(n)
                ]
                segs.append((u, v, coeffs))
        return PPoly(segs, local=True)

    def __neg__(self) -> "PPoly":
        return PPoly(
            ((lo, hi, [-c for c in cs]) for lo, hi, cs in self.pieces), local=True
        )

    def __sub__(self, other: "PPoly") -> "PPoly":
        return self.__add__(-other)

    def __mul__(self, other):
        if isinstance(other, PPoly):
            segs = []
            for u, v, ca, cb in _overlay(self.pieces, other.pieces):
                if ca is not None and cb is not None:
                    segs.append((u, v, _convolve(ca, cb)))
            return PPoly(segs, local=True)
        if isinstance(other, (int, float, complex)):
            s = complex(other)
            if s == 0:
                return PPoly()
            return PPoly(
                ((lo, hi, [s * c for c in cs]) for lo, hi, cs in self.pieces),
                local=True,
            )
        return NotImplemented

    __rmul__ = __mul__

    def conjugate(self) -> "PPoly":
        return PPoly(
            ((lo, hi, [c.conjugate() for c in cs]) for lo, hi, cs in self.pieces),
            local=True,
        )

    def square(self) -> "PPoly":
        """Pointwise square without conjugation: (u+iv)^2, not |.|^2."""
        return self * self

    # -- support surgery ------------------------------------------------------

    def restrict(self, region: IntervalSet | Interval) -> "PPoly":
        if isinstance(region, Interval):
            region = IntervalSet((region,))
        out = []
        for lo, hi, coeffs in self.pieces:
            for part in region.parts:
                if part.hi <= lo:
                    continue
                if part.lo >= hi:
                    break
                s = lo if lo > part.lo else part.lo
                e = hi if hi < part.hi else part.hi
                cs = coeffs if s == lo else _shift(coeffs, float(s - lo))
                out.append((s, e, cs))
        return PPoly(out, local=True)

    def compose_affine(self, a: RationalLike, b: RationalLike) -> "PPoly":
        """The function x -> self(a*x + b), for invertible affine maps.

        In the local basis this is a pure rescaling of coefficients by
        powers of the slope (plus one length-bounded shift when the slope
        is negative), so it is numerically benign even far from 0.
        """
        qa, qb = as_rational(a), as_rational(b)
        if qa == 0:
            raise ValueError("affine substitution requires nonzero slope")
        fa = float(qa)
        segs = []
        for lo, hi, coeffs in self.pieces:
            x1 = (lo - qb) / qa
            x2 = (hi - qb) / qa
            if qa > 0:
                # new lo maps to old lo: p(lo + a t)
                segs.append((x1, x2, _scale_arg(coeffs, fa)))
            else:
                # new lo maps to old hi: p(hi + a t)
                at_hi = _shift(coeffs, float(hi - lo))
                segs.append((x2, x1, _scale_arg(at_hi, fa)))
        return PPoly(segs, local=True)

    # -- integration ----------------------------------------------------------

    def integral(self, region: IntervalSet | None = None) -> complex:
        target = self if region is None else self.restrict(region)
        return sum(
            (_local_integral(c, float(hi - lo)) for lo, hi, c in target.pieces), 0j
        )

    def inner(self, other: "PPoly") -> complex:
        """L2 inner product, conjugate-linear in the second argument."""
        total = 0j
        for u, v, ca, cb in _overlay(self.pieces, other.pieces):
            if ca is not None and cb is not None:
                conv = _convolve(ca, [c.conjugate() for c in cb])
                total += _local_integral(conv, float(v - u))
        return total

    def norm2(self) -> float:
        return math.sqrt(max(self.inner(self).real, 0.0))

    def norm1(self) -> float:
        """L1 norm.

        Real functions use exact sign decomposition (Sturm-chain root
        isolation) plus the antiderivative; |.| of a genuinely complex
        function is not piecewise-polynomial, so that case falls back to
        adaptive Gauss-Kronrod quadrature per piece.
        """
        if self.is_real:
            total = 0.0
            for lo, hi, coeffs in self.pieces:
                total += _abs_integral_real([c.real for c in coeffs], hi - lo)
            return total
        from scipy.integrate import quad  # deferred: keeps import cost off hot paths

        total = 0.0
        for lo, hi, coeffs in self.pieces:
            rc = list(reversed(coeffs))
            val, _ = quad(
                lambda t: abs(np.polyval(rc, t)),
                0.0,
                float(hi - lo),
                epsabs=1e-12,
                epsrel=1e-10,
                limit=200,
            )
            total += val
        return total

    # -- misc -------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, PPoly) and self.pieces == other.pieces

    def __hash__(self) -> int:
        return hash(self.pieces)

    def __repr__(self) -> str:
        if not self.pieces:
            return "PPoly(0)"
        bits = []
        for lo, hi, coeffs in self.pieces[:4]:
            bits.append(f"[{lo},{hi}):deg{len(coeffs) - 1}")
        if len(self.pieces) > 4:
            bits.append(f"...{len(self.pieces)} pieces")
        return f"PPoly({', '.join(bits)})"


def _abs_integral_real(coeffs: list[float], length: Fraction) -> float:
    """Integral of |p| over [0, length) in local coordinates, via exact
    sign decomposition of the stored double-precision polynomial."""
    splits = sign_change_points(coeffs, Fraction(0), length)
    cuts = [Fraction(0), *splits, length]
    total = 0.0
    for u, v in zip(cuts, cuts[1:]):
        mid = float(u + v) / 2
        val = 0.0
        for c in reversed(coeffs):
            val = val * mid + c
        seg = _segment_integral([complex(c) for c in coeffs], float(u), float(v)).real
        total += -seg if val < 0 else seg
    return total

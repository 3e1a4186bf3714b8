"""Composite-Simpson reference quadrature.

These routines integrate by sampled function values only, never through
the antiderivative path in `ppoly`, so they serve as independent
cross-checks of the exact-integration code.  Panels are refined at the
integrand's breakpoints (and at any caller-supplied split points, e.g.
independently located roots of |p|): each Simpson run then sees a smooth
polynomial, where the composite rule's h^4 error is far below the
tolerances used in the verification suites.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .intervals import IntervalSet
from .ppoly import PPoly

__all__ = ["simpson_values", "simpson_integral", "simpson_abs_integral"]

DEFAULT_PANELS = 2**14


def simpson_values(ys: np.ndarray, h: float):
    """Composite Simpson total for equally spaced samples (even count - 1)."""
    acc = ys[0] + ys[-1] + 4.0 * ys[1:-1:2].sum() + 2.0 * ys[2:-2:2].sum()
    return acc * h / 3.0


def _segment(coeffs: Sequence[complex], length: float, panels: int) -> complex:
    """Simpson total of a local-basis polynomial over a piece of that length."""
    ts = np.linspace(0.0, length, panels + 1)
    ys = np.polyval(list(reversed(coeffs)), ts)
    return complex(simpson_values(ys, length / panels))


def _cut_points(lo: Fraction, hi: Fraction, cuts: Iterable[Fraction]) -> list[Fraction]:
    inner = sorted(c for c in cuts if lo < c < hi)
    return [lo, *inner, hi]


def simpson_integral(
    phi: PPoly, region: IntervalSet | None = None, panels: int = DEFAULT_PANELS
) -> complex:
    """Integral of phi over the region, by Simpson panels per smooth segment."""
    target = phi if region is None else phi.restrict(region)
    total = 0j
    for lo, hi, coeffs in target.pieces:
        total += _segment(coeffs, float(hi - lo), panels)
    return total


def simpson_abs_integral(
    phi: PPoly,
    extra_cuts: Iterable[Fraction] = (),
    panels: int = DEFAULT_PANELS,
) -> float:
    """Integral of |phi| by Simpson on |values|.

    Pass the (independently found) sign-change points of each piece in
    `extra_cuts` to keep the integrand smooth per segment; otherwise the
    kinks of |.| degrade the composite rule to low order.
    """
    cuts = list(extra_cuts)
    total = 0.0
    for lo, hi, coeffs in phi.pieces:
        rc = list(reversed(coeffs))
        pts = _cut_points(lo, hi, cuts)
        for u, v in zip(pts, pts[1:]):
            ts = np.linspace(float(u - lo), float(v - lo), panels + 1)
            ys = np.abs(np.polyval(rc, ts))
            total += float(simpson_values(ys, float(v - u) / panels))
    return total

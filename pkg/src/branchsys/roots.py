"""Exact sign analysis of real polynomials on rational intervals.

Double-precision coefficients convert exactly to rationals, so the sign
pattern of the polynomial *as stored* can be decided rigorously.  The
workhorse is a Sturm chain over integer coefficients (primitive
pseudo-remainder sequence, which keeps coefficient growth polynomial);
sign evaluations at rational points are pure integer arithmetic.

`sign_change_points` returns the odd-multiplicity roots inside an
interval, each bracketed by bisection down to a configurable width.
Roots of even multiplicity are deliberately skipped: they do not flip
the sign, so they are irrelevant when decomposing |p| into signed
pieces.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

__all__ = ["sign_change_points", "poly_sign_at"]

DEFAULT_WIDTH = Fraction(1, 10**14)


def _trim(poly: list[int]) -> list[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _to_int_poly(coeffs: Sequence[float]) -> list[int]:
    """Exact integer polynomial with the same roots as the float one."""
    fracs = [Fraction(c) for c in coeffs]
    den = 1
    for f in fracs:
        den = den * f.denominator // gcd(den, f.denominator)
    ints = _trim([int(f * den) for f in fracs])
    if not ints:
        return []
    content = 0
    for c in ints:
        content = gcd(content, abs(c))
    return [c // content for c in ints]


def _derivative(poly: Sequence[int]) -> list[int]:
    return [k * c for k, c in enumerate(poly)][1:]


def _pseudo_rem(f: Sequence[int], g: Sequence[int]) -> list[int]:
    """Integer remainder equal to a positive multiple of (f mod g)."""
    lg = g[-1]
    r = list(f)
    steps = 0
    while r and len(r) - 1 >= len(g) - 1:
        lead = r[-1]
        off = len(r) - len(g)
        r = [c * lg for c in r[:-1]]
        for i in range(len(g) - 1):
            r[off + i] -= lead * g[i]
        _trim(r)
        steps += 1
    if lg < 0 and steps % 2 == 1:
        r = [-c for c in r]
    return r


def _primitive(poly: list[int]) -> list[int]:
    content = 0
    for c in poly:
        content = gcd(content, abs(c))
    if content > 1:
        return [c // content for c in poly]
    return poly


def _sturm_chain(poly: list[int]) -> list[list[int]]:
    chain = [poly, _primitive(_derivative(poly))]
    while chain[-1]:
        rem = _pseudo_rem(chain[-2], chain[-1])
        if not rem:
            break
        chain.append(_primitive([-c for c in rem]))
    return chain


def poly_sign_at(poly: Sequence[int], x: Fraction) -> int:
    """Sign of poly at a rational point, by integer homogenization."""
    if not poly:
        return 0
    num, den = x.numerator, x.denominator
    acc = poly[-1]
    dp = 1
    for c in reversed(poly[:-1]):
        dp *= den
        acc = acc * num + c * dp
    return (acc > 0) - (acc < 0)


def _variations(chain: list[list[int]], x: Fraction) -> int:
    count = 0
    prev = 0
    for poly in chain:
        s = poly_sign_at(poly, x)
        if s == 0:
            continue
        if prev != 0 and s != prev:
            count += 1
        prev = s
    return count


def _nonzero_probe(poly: list[int], x: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    """A point near x, strictly inside (lo, hi), where poly does not vanish."""
    if lo < x < hi and poly_sign_at(poly, x) != 0:
        return x
    step = (hi - lo) / 16
    while step > Fraction(1, 10**30):  # poly has finitely many roots
        for cand in (x + step, x - step):
            if lo < cand < hi and poly_sign_at(poly, cand) != 0:
                return cand
        step /= 2
    raise ArithmeticError("could not find a nonzero probe point")


def _refine_bracket(
    poly: list[int], a: Fraction, b: Fraction, sa: int, width: Fraction
) -> Fraction:
    """Bisect a sign-changing bracket down to `width`; return the midpoint."""
    while b - a > width:
        m = (a + b) / 2
        sm = poly_sign_at(poly, m)
        if sm == 0:
            return m  # exact rational root
        if sm == sa:
            a = m
        else:
            b = m
    return (a + b) / 2


def sign_change_points(
    coeffs: Sequence[float],
    lo: Fraction,
    hi: Fraction,
    width: Fraction = DEFAULT_WIDTH,
) -> list[Fraction]:
    """Odd-multiplicity roots of the real polynomial in (lo, hi), sorted.

    Each returned point is within `width` of a true sign change of the
    exact rational polynomial given by the float coefficients.
    """
    poly = _to_int_poly(coeffs)
    if len(poly) <= 1:
        return []
    if len(poly) == 2:
        root = -Fraction(poly[0], poly[1])
        return [root] if lo < root < hi else []

    chain = _sturm_chain(poly)
    a = lo if poly_sign_at(poly, lo) != 0 else _nonzero_probe(poly, lo, lo, hi)
    b = hi if poly_sign_at(poly, hi) != 0 else _nonzero_probe(poly, hi, lo, hi)
    out: list[Fraction] = []
    stack = [(a, b, _variations(chain, a), _variations(chain, b))]
    while stack:
        xa, xb, va, vb = stack.pop()
        nroots = va - vb
        if nroots <= 0:
            continue
        sa = poly_sign_at(poly, xa)
        sb = poly_sign_at(poly, xb)
        if nroots == 1:
            if sa != sb:
                out.append(_refine_bracket(poly, xa, xb, sa, width))
            continue  # single even-multiplicity root: no sign change
        if xb - xa <= width:
            # Unresolvable cluster: record one split point iff the overall
            # sign flips across it.
            if sa != sb:
                out.append((xa + xb) / 2)
            continue
        m = _nonzero_probe(poly, (xa + xb) / 2, xa, xb)
        vm = _variations(chain, m)
        stack.append((xa, m, va, vm))
        stack.append((m, xb, vm, vb))
    out.sort()
    return out

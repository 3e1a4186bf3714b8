import random
from fractions import Fraction

import pytest

from branchsys.affine import AffinePiece, PAMap, affine_between
from branchsys.errors import SupportError
from branchsys.intervals import Interval, IntervalSet
from branchsys.ppoly import PPoly


def piece(lo, hi, a, b):
    return AffinePiece(Interval(Fraction(lo), Fraction(hi)), Fraction(a), Fraction(b))


def _random_pamap(rng: random.Random) -> PAMap:
    pieces = []
    x = Fraction(rng.randint(-8, 0))
    y = Fraction(rng.randint(20, 30))  # keep images clear of the sources
    for _ in range(rng.randint(1, 4)):
        width = Fraction(rng.randint(1, 8), rng.randint(1, 4))
        a = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.randint(1, 3))
        src = Interval(x, x + width)
        anchor = y if a > 0 else y + abs(a) * width
        pieces.append(AffinePiece(src, a, anchor - a * src.lo))
        x += width + Fraction(rng.randint(0, 2))
        y += abs(a) * width + 1
    return PAMap(pieces)


class TestPiece:
    def test_zero_slope_rejected(self):
        with pytest.raises(ValueError):
            piece(0, 1, 0, 2)

    def test_image_orientation(self):
        assert piece(0, 1, 2, 0).image == Interval(Fraction(0), Fraction(2))
        assert piece(0, 1, -2, 0).image == Interval(Fraction(-2), Fraction(0))

    def test_inverse_composes_to_identity(self):
        p = piece(1, 3, "-3/2", 7)
        q = p.inverse()
        assert q.inverse() == p


class TestPAMap:
    def test_shift_map_values(self):
        # translation by 1 from [-1,0) onto [0,1)
        m = PAMap([piece(-1, 0, 1, 1)])
        assert m(Fraction(-1, 2)) == Fraction(1, 2)
        assert m.invert()(Fraction(1, 2)) == Fraction(-1, 2)

    def test_halving_map_values(self):
        # x/2 from [2,4) onto [1,2)
        m = PAMap([piece(2, 4, "1/2", 0)])
        assert m(3) == Fraction(3, 2)
        assert m.rn_weight(3) == Fraction(1, 2)

    def test_apply_outside_domain(self):
        m = PAMap([piece(0, 1, 1, 0)])
        with pytest.raises(SupportError):
            m(5)

    def test_overlapping_sources_rejected(self):
        with pytest.raises(ValueError):
            PAMap([piece(0, 2, 1, 0), piece(1, 3, 1, 10)])

    def test_overlapping_images_rejected(self):
        with pytest.raises(ValueError):
            PAMap([piece(0, 1, 1, 0), piece(2, 3, 1, -2)])

    def test_adjacent_same_law_pieces_merge(self):
        m = PAMap([piece(2, 3, "1/2", 0), piece(3, 4, "1/2", 0)])
        assert m.pieces == (piece(2, 4, "1/2", 0),)

    def test_roundtrip_exact(self):
        rng = random.Random(3)
        for _ in range(60):
            m = _random_pamap(rng)
            inv = m.invert()
            for part in m.domain:
                for x in (
                    part.lo,
                    part.lo + part.length / 3,
                    part.lo + part.length * Fraction(7, 8),
                ):
                    assert inv(m(x)) == x

    def test_double_inversion_is_identity(self):
        rng = random.Random(4)
        for _ in range(40):
            m = _random_pamap(rng)
            assert m.invert().invert() == m

    def test_image_of_region(self):
        m = PAMap([piece(0, 2, 2, 0)])
        got = m.image_of(IntervalSet.of(("1/2", 1), (3, 9)))
        assert got == IntervalSet.of((1, 2))

    def test_affine_between(self):
        p = affine_between(Interval(Fraction(-1), Fraction(0)), Interval(Fraction(0), Fraction(1)))
        assert (p.a, p.b) == (Fraction(1), Fraction(1))


class TestChangeOfVariables:
    def test_weighted_pushforward_preserves_integral(self):
        # integral over the image of (phi o f^-1) * |1/a|  ==  integral of phi
        # over the source, for polynomials up to degree 6.
        rng = random.Random(9)
        for _ in range(50):
            m = _random_pamap(rng)
            p = m.pieces[rng.randrange(len(m.pieces))]
            coeffs = [rng.uniform(-1, 1) for _ in range(rng.randint(1, 7))]
            phi = PPoly(((p.src.lo, p.src.hi, coeffs),), local=True)
            inv = p.inverse()
            pushed = phi.compose_affine(inv.a, inv.b).restrict(inv.src)
            lhs = (float(abs(inv.a)) * pushed).integral().real
            rhs = phi.integral().real
            assert abs(lhs - rhs) <= 1e-12 * (1 + abs(rhs))

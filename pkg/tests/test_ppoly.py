import math
import random
from fractions import Fraction

import numpy as np
import pytest

from branchsys.errors import DegreeLimitError
from branchsys.intervals import IntervalSet
from branchsys.ppoly import MAX_DEGREE, PPoly
from branchsys.quadrature import simpson_abs_integral, simpson_integral


def ind(*pairs):
    return PPoly.indicator(IntervalSet.of(*pairs))


def _random_real(rng: random.Random, degree=4, span=(-2, 3)) -> PPoly:
    pieces = []
    cuts = sorted(
        Fraction(rng.randint(span[0] * 8, span[1] * 8), 8) for _ in range(6)
    )
    for lo, hi in zip(cuts[::2], cuts[1::2]):
        if lo >= hi:
            continue
        coeffs = [rng.uniform(-1, 1) for _ in range(rng.randint(1, degree + 1))]
        pieces.append((lo, hi, coeffs))
    try:
        return PPoly(pieces)
    except ValueError:
        return PPoly()


class TestCanonicalForm:
    def test_zero_function(self):
        assert PPoly().is_zero
        assert PPoly.single(0, 1, [0.0]).is_zero

    def test_trailing_zero_trim(self):
        p = PPoly.single(0, 1, [1.0, 0.0, 0.0])
        assert p.pieces[0][2] == (1 + 0j,)

    def test_adjacent_equal_pieces_merge(self):
        p = ind((0, 1)) + ind((1, 2))
        assert p == ind((0, 2))

    def test_adjacent_matching_polynomials_merge(self):
        # x on [0,1) and x on [1,2) continue each other
        p = PPoly(((0, 1, [0.0, 1.0]), (1, 2, [0.0, 1.0])))
        assert len(p.pieces) == 1

    def test_overlap_rejected(self):
        with pytest.raises(ValueError):
            PPoly(((0, 2, [1.0]), (1, 3, [1.0])))

    def test_degree_cap(self):
        with pytest.raises(DegreeLimitError):
            PPoly.single(0, 1, [1.0] * (MAX_DEGREE + 2))
        # products past the cap must fail loudly, not truncate
        p = PPoly.single(0, 1, [1.0] * 10)
        with pytest.raises(DegreeLimitError):
            p * p

    def test_monomial_round_trip(self):
        p = PPoly.single(3, 5, [1.0, -2.0, 0.5])
        lo, hi, coeffs = p.monomial_pieces()[0]
        assert (lo, hi) == (Fraction(3), Fraction(5))
        assert np.allclose(coeffs, [1.0, -2.0, 0.5])


class TestEvaluation:
    def test_piecewise_lookup_half_open(self):
        p = PPoly(((0, 1, [1.0]), (1, 2, [2.0])))
        assert p(Fraction(1, 2)) == 1
        assert p(1) == 2
        assert p(2) == 0
        assert p(-1) == 0

    def test_polynomial_value(self):
        p = PPoly.single(-1, 2, [1.0, 2.0, 3.0])  # 1 + 2x + 3x^2
        assert abs(p(Fraction(1, 2)) - 2.75) < 1e-15

    def test_sample_matches_pointwise(self):
        rng = random.Random(1)
        p = _random_real(rng)
        xs = np.linspace(-1.9, 2.9, 173)
        ys = p.sample(xs)
        for x, y in zip(xs, ys):
            assert abs(p(Fraction(x)) - y) < 1e-12


class TestAlgebra:
    def test_pointwise_ring_operations(self):
        rng = random.Random(2)
        for _ in range(10):
            f = _random_real(rng, degree=3)
            g = _random_real(rng, degree=3)
            s = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
            add, mul, scl = f + g, f * g, s * f
            for _ in range(100):
                x = Fraction(rng.randint(-16 * 8, 24 * 8), 8)
                fx, gx = f(x), g(x)
                assert abs(add(x) - (fx + gx)) <= 1e-12
                assert abs(mul(x) - fx * gx) <= 1e-12
                assert abs(scl(x) - s * fx) <= 1e-12

    def test_square_of_complex_indicator(self):
        p = ((1 + 1j) * ind((0, 1))).square()
        assert p.pieces[0][2] == (2j,)

    def test_square_is_not_modulus(self):
        p = (1j * ind((0, 1))).square()
        assert p.pieces[0][2] == (-1 + 0j,)

    def test_restrict(self):
        one = ind((-1, 4))
        assert one.restrict(IntervalSet.of((-1, 0))) == ind((-1, 0))

    def test_compose_affine_support(self):
        # x -> chi_[2,4)(2x) is supported on [1,2)
        assert ind((2, 4)).compose_affine(2, 0) == ind((1, 2))

    def test_compose_affine_values(self):
        p = PPoly.single(0, 8, [0.0, 1.0])  # x
        q = p.compose_affine(Fraction(-1, 2), 3)  # -x/2 + 3 on (-10, 6]
        assert q.support() == IntervalSet.of((-10, 6))
        assert abs(q(0) - 3.0) < 1e-15
        assert abs(q(4) - 1.0) < 1e-15


class TestIntegration:
    def test_indicator_mass(self):
        assert ind((0, 1)).integral(IntervalSet.of((0, 2))) == 1

    def test_disjoint_supports_orthogonal(self):
        assert ind((0, 1)).inner(ind((1, 2))) == 0

    def test_norm2_of_scaled_indicator(self):
        assert abs((math.sqrt(2) * ind((1, 2))).norm2() - math.sqrt(2)) < 1e-15

    def test_inner_conjugates_second_argument(self):
        f = (1 + 1j) * ind((0, 1))
        g = 1j * ind((0, 1))
        # (1+i) * conj(i) = (1+i) * (-i) = 1 - i
        assert abs(f.inner(g) - (1 - 1j)) < 1e-15

    def test_integral_against_simpson(self):
        rng = random.Random(5)
        for _ in range(20):
            p = _random_real(rng)
            exact = p.integral()
            quad = simpson_integral(p, panels=2**14)
            assert abs(exact - quad) <= 1e-12 * (1 + abs(exact))


class TestNorm1:
    def test_piecewise_constant(self):
        p = ind((0, 1)) - 2.0 * ind((1, 3))
        assert abs(p.norm1() - 5.0) < 1e-15

    def test_sign_change_inside_piece(self):
        p = PPoly.single(-1, 1, [0.0, 1.0])  # x on [-1, 1)
        assert abs(p.norm1() - 1.0) < 1e-14

    def test_even_multiplicity_root(self):
        p = PPoly.single(-1, 1, [0.0, 0.0, 1.0])  # x^2, kisses zero
        assert abs(p.norm1() - 2.0 / 3.0) < 1e-14

    def test_against_simpson_oracle(self):
        # Independent route: numpy roots locate the kinks of |p|, Simpson
        # integrates |values| between them.
        rng = random.Random(6)
        for _ in range(40):
            p = _random_real(rng, degree=4)
            cuts = []
            for lo, hi, coeffs in p.pieces:
                flo = float(lo)
                for r in np.roots(list(reversed(coeffs))):
                    if abs(r.imag) < 1e-12 and 0 < r.real < float(hi - lo):
                        cuts.append(Fraction(float(r.real)) + lo)
            got = p.norm1()
            want = simpson_abs_integral(p, extra_cuts=cuts, panels=2**14)
            assert abs(got - want) <= 1e-8

    def test_complex_norm1(self):
        p = (3 + 4j) * ind((0, 2))
        assert abs(p.norm1() - 10.0) < 1e-10

    def test_complex_varying_modulus(self):
        # |t + i| on [0,1) integrates to [t sqrt(t^2+1) + asinh t]/2
        p = PPoly.single(0, 1, [1j, 1.0])
        want = (math.sqrt(2) + math.asinh(1)) / 2
        assert abs(p.norm1() - want) < 1e-10

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from zkwander.errors import ModeUnsupportedError, SingularSystemError
from zkwander.scalars import (FLOAT, INTERVAL, RATIONAL, Interval, Radical,
                              SmallMatrix, abs_sq, conj, cramer_solve3, det3,
                              det4, is_exact_zero, power_interval,
                              scalar_from_json, scalar_to_json, strictly_less,
                              to_float, to_regime)

rationals = st.fractions(min_value=-1000, max_value=1000,
                         max_denominator=10 ** 6)
nonzero_rationals = rationals.filter(lambda q: q != 0)


class TestInterval:

    def test_exact_point_for_representable(self):
        iv = Interval.exact(Fraction(1, 2))
        assert iv.lo == iv.hi == 0.5

    def test_exact_encloses_unrepresentable(self):
        iv = Interval.exact(Fraction(1, 3))
        assert iv.lo < iv.hi
        assert Fraction(iv.lo) < Fraction(1, 3) < Fraction(iv.hi)

    @given(a=rationals, b=rationals)
    @settings(max_examples=50)
    def test_add_contains_exact(self, a, b):
        iv = Interval.exact(a) + Interval.exact(b)
        assert Fraction(iv.lo) <= a + b <= Fraction(iv.hi)

    @given(a=rationals, b=rationals)
    @settings(max_examples=50)
    def test_mul_contains_exact(self, a, b):
        iv = Interval.exact(a) * Interval.exact(b)
        assert Fraction(iv.lo) <= a * b <= Fraction(iv.hi)

    @given(a=rationals, b=nonzero_rationals)
    @settings(max_examples=50)
    def test_div_contains_exact(self, a, b):
        iv = Interval.exact(a) / Interval.exact(b)
        assert Fraction(iv.lo) <= a / b <= Fraction(iv.hi)

    @given(a=rationals, n=st.integers(min_value=0, max_value=8))
    @settings(max_examples=50)
    def test_pow_contains_exact(self, a, n):
        iv = Interval.exact(a) ** n
        assert Fraction(iv.lo) <= a ** n <= Fraction(iv.hi)

    @given(a=rationals.filter(lambda q: q > 0))
    @settings(max_examples=50)
    def test_sqrt_contains_square_root(self, a):
        iv = (Interval.exact(a) * Interval.exact(a)).sqrt()
        assert Fraction(iv.lo) <= a <= Fraction(iv.hi)

    def test_division_through_zero_rejected(self):
        with pytest.raises(ZeroDivisionError):
            Interval.exact(1) / Interval(-1.0, 1.0)

    def test_contains_zero_and_sign_queries(self):
        assert Interval(-1.0, 2.0).contains_zero()
        assert Interval(0.5, 2.0).is_positive()
        assert Interval(-2.0, -0.5).is_negative()
        assert not Interval(-1.0, 2.0).is_positive()

    def test_strict_compare_uses_outer_endpoints(self):
        assert strictly_less(Interval(0.0, 1.0), Interval(1.5, 2.0))
        assert not strictly_less(Interval(0.0, 1.0), Interval(0.9, 2.0))

    @given(a=rationals.filter(lambda q: q > 0),
           e=st.fractions(min_value=-4, max_value=4, max_denominator=16))
    @settings(max_examples=30, deadline=None)
    def test_power_interval_contains_true_power(self, a, e):
        iv = power_interval(a, e)
        # compare in high-precision floats through mpmath
        import mpmath
        with mpmath.workprec(120):
            true = mpmath.power(mpmath.mpf(a.numerator) / a.denominator,
                                mpmath.mpf(e.numerator) / e.denominator)
            assert mpmath.mpf(iv.lo) <= true <= mpmath.mpf(iv.hi)


class TestRadical:

    def test_sqrt_squares_back(self):
        r = Radical.sqrt(Fraction(6))
        assert (r * r).as_fraction() == 6

    def test_perfect_square_collapses(self):
        assert Radical.sqrt(4).is_rational
        assert Radical.sqrt(4).as_fraction() == 2
        assert Radical.sqrt(Fraction(9, 16)).as_fraction() == Fraction(3, 4)

    def test_pair_cancellation_without_factoring(self):
        r = Radical.sqrt(Fraction(10, 7))
        s = Radical(Fraction(3), (Fraction(10, 7), Fraction(2)))
        prod = r * s
        assert prod.coeff == 3 * Fraction(10, 7)
        assert prod.roots == (Fraction(2),)

    def test_addition_needs_matching_atoms(self):
        a = Radical.sqrt(2)
        b = Radical.sqrt(3)
        assert (a + a).coeff == 2
        with pytest.raises(ModeUnsupportedError):
            a + b

    def test_division(self):
        a = Radical.sqrt(2)
        assert ((1 / a) * a).as_fraction() == 1
        assert (a / a).as_fraction() == 1

    def test_float_and_sign(self):
        assert float(Radical.sqrt(2)) == pytest.approx(math.sqrt(2))
        assert float(-Radical.sqrt(2)) == pytest.approx(-math.sqrt(2))

    def test_irrational_as_fraction_raises(self):
        with pytest.raises(ModeUnsupportedError):
            Radical.sqrt(2).as_fraction()

    def test_equality_and_hash(self):
        assert Radical.sqrt(2) == Radical(Fraction(1), (Fraction(2),))
        assert hash(Radical.of(3)) == hash(Radical(Fraction(3)))

    def test_abs_and_conjugate(self):
        r = Radical(Fraction(-2), (Fraction(3),))
        assert abs(r).coeff == 2
        assert r.conjugate() == r


class TestHelpers:

    def test_conj_and_abs_sq(self):
        assert conj(Fraction(2, 3)) == Fraction(2, 3)
        assert conj(1 + 2j) == 1 - 2j
        assert abs_sq(3 + 4j) == pytest.approx(25.0)
        assert abs_sq(Fraction(-3)) == 9

    def test_is_exact_zero(self):
        assert is_exact_zero(Fraction(0))
        assert not is_exact_zero(Fraction(1, 10 ** 30))
        assert is_exact_zero(0.0)
        assert not is_exact_zero(Interval(-1e-30, 1e-30))

    def test_to_regime_conversions(self):
        q = Fraction(1, 3)
        assert to_regime(q, RATIONAL) == q
        assert isinstance(to_regime(q, RATIONAL), Fraction)
        assert isinstance(to_regime(q, INTERVAL), Interval)
        assert to_regime(q, FLOAT) == pytest.approx(1 / 3)

    def test_to_float_of_interval_is_midpoint(self):
        assert to_float(Interval(1.0, 3.0)) == 2.0

    @pytest.mark.parametrize("value", [
        Fraction(-22, 7),
        Interval(1.25, 1.75),
        complex(1.5, -2.5),
        2.75,
        Radical(Fraction(3, 2), (Fraction(5),)),
    ])
    def test_json_round_trip(self, value):
        again = scalar_from_json(scalar_to_json(value))
        assert again == value


def _matrix(rows):
    return SmallMatrix.from_rows(rows)


class TestSmallMatrix:

    def test_det3_known(self):
        m = _matrix([[Fraction(2), 0, 0], [0, Fraction(3), 0],
                     [0, 0, Fraction(5)]])
        assert det3(m) == 30

    def test_det4_known(self):
        m = _matrix([[Fraction(1), 0, 0, 0],
                     [0, Fraction(2), 0, 0],
                     [0, 0, Fraction(3), 0],
                     [0, 0, 0, Fraction(4)]])
        assert det4(m) == 24

    @given(entries=st.lists(rationals, min_size=9, max_size=9))
    @settings(max_examples=40)
    def test_det_transpose_invariance(self, entries):
        rows = [entries[0:3], entries[3:6], entries[6:9]]
        cols = [[rows[j][i] for j in range(3)] for i in range(3)]
        assert det3(_matrix(rows)) == det3(_matrix(cols))

    @given(entries=st.lists(rationals, min_size=9, max_size=9),
           rhs=st.lists(rationals, min_size=3, max_size=3))
    @settings(max_examples=40)
    def test_cramer_solves_exactly(self, entries, rhs):
        rows = [entries[0:3], entries[3:6], entries[6:9]]
        m = _matrix(rows)
        if det3(m) == 0:
            with pytest.raises(SingularSystemError):
                cramer_solve3(m, tuple(rhs))
            return
        x = cramer_solve3(m, tuple(rhs))
        for i in range(3):
            assert sum(rows[i][j] * x[j] for j in range(3)) == rhs[i]

    @given(entries=st.lists(rationals, min_size=9, max_size=9))
    @settings(max_examples=30)
    def test_regime_agreement(self, entries):
        """Float dets track the exact value; interval dets enclose it."""
        rows = [entries[0:3], entries[3:6], entries[6:9]]
        exact = det3(_matrix(rows))
        fl = det3(_matrix([[float(v) for v in r] for r in rows]))
        # Cancelation can shrink the det itself, so scale by entry size.
        biggest = max(abs(float(v)) for v in entries)
        scale = max(1.0, biggest ** 3)
        assert abs(fl - float(exact)) / scale < 1e-12
        iv = det3(_matrix([[Interval.exact(v) for v in r] for r in rows]))
        assert Fraction(iv.lo) <= exact <= Fraction(iv.hi)

import math
from fractions import Fraction

import pytest

from zkwander.errors import (DegenerateReductionError, DegenerateZ3Error,
                             SingularSystemError)
from zkwander.model import DegreePattern
from zkwander.reduction import (b0_minimum, build_N, compute_C, objective_B0,
                                objective_B1, objective_B2, pivot_modulus,
                                reduce_system, split_e, z1_star)
from zkwander.reference_data import (D_SQ_UPPER, DET_N1_INTERVAL, E_INTERVALS,
                                     G_INTERVALS, H_UPPER, in_published_interval)
from zkwander.scalars import FLOAT, INTERVAL, Radical, det3
from zkwander.weights import dirichlet, weight

# Frozen from a high-precision mpmath evaluation of the same formulas,
# independent of the Fraction pipeline under test.
DET_N1 = 1.620761583531512e-56
E_REF = (-16.374779565561333, 65.63437068012293, -73.35945623501185)
G_REF = (7.812622610731204e14, -4.303741611350925e15, 5.469540438318715e15)
C_REF = {"C1": 3.640198727870885e-14, "C2": 3.3720005626009325e-16,
         "C3": 0.7115690922069678, "C4": 20703950080879.242,
         "C5": 0.6270822842171272}
B2_REF = 0.02792549252831457
B1_REF = 0.02323523492261636


def _close(x, ref, rel=1e-12):
    return math.isclose(float(x), ref, rel_tol=rel)


class TestReducedSystem:

    def test_matrix_shapes_and_det_identity(self, seq16, pattern6):
        n, n0, n1 = build_N(seq16, pattern6)
        assert (n.rows, n.cols) == (3, 4)
        assert (n0.rows, n0.cols) == (4, 4)
        assert (n1.rows, n1.cols) == (3, 3)
        from zkwander.scalars import det4
        assert det4(n0) == det3(n1)

    def test_det_against_frozen_value(self, rs16):
        assert _close(rs16.det_N1, DET_N1)

    def test_det_inside_published_window(self, rs16):
        assert in_published_interval(rs16.det_N1, DET_N1_INTERVAL)

    def test_E_and_G_frozen_and_published(self, rs16):
        for i in range(3):
            assert _close(rs16.E[i], E_REF[i])
            assert _close(rs16.G[i], G_REF[i])
            assert in_published_interval(rs16.E[i], E_INTERVALS[i])
            assert in_published_interval(rs16.G[i], G_INTERVALS[i])

    def test_E_solves_the_linear_system_exactly(self, rs16, seq16, pattern6):
        k, g = pattern6.k, pattern6.gamma
        for r, s in enumerate((1, 2, 3)):
            lhs = sum(weight(seq16, s * k + g[i + 1]) * rs16.E[i]
                      for i in range(3))
            assert lhs == -weight(seq16, s * k + g[0])

    def test_G_solves_the_linear_system_exactly(self, rs16, seq16, pattern6):
        k, g = pattern6.k, pattern6.gamma
        for r, s in enumerate((1, 2, 3)):
            lhs = sum(weight(seq16, s * k + g[i + 1]) * rs16.G[i]
                      for i in range(3))
            assert lhs == (1 if r == 0 else 0)

    def test_H_and_D_identities(self, rs16):
        for i in range(3):
            assert rs16.H[i] == rs16.E[i] ** 2
            assert rs16.D[i] == -rs16.G[i] / rs16.E[i]

    def test_H_and_D_below_published_caps(self, rs16):
        for i in range(3):
            assert rs16.H[i] <= H_UPPER[i]
            assert rs16.D[i] ** 2 <= D_SQ_UPPER[i]

    @pytest.mark.parametrize("alpha", [0, 1])
    def test_affine_weights_are_singular(self, alpha):
        with pytest.raises(SingularSystemError):
            reduce_system(dirichlet(alpha), DegreePattern.default(6))

    def test_interval_regime_encloses_exact(self, rs16, seq16, pattern6):
        ivs = reduce_system(seq16, pattern6, INTERVAL)
        det = ivs.det_N1
        assert Fraction(det.lo) <= rs16.det_N1 <= Fraction(det.hi)
        for i in range(3):
            e = ivs.E[i]
            assert Fraction(e.lo) <= rs16.E[i] <= Fraction(e.hi)


class TestCQuantities:

    def test_frozen_values(self, c16):
        for name, ref in C_REF.items():
            assert _close(getattr(c16, name), ref)

    def test_c5_identity_and_positivity(self, c16):
        assert c16.C5 == c16.C1 * c16.C4 - c16.C3 ** 2 / 4
        for name in ("C1", "C2", "C4", "C5"):
            assert getattr(c16, name) > 0

    def test_d0_defaults_to_one(self, rs16):
        assert compute_C(rs16, (1, 4, 6)) == compute_C(rs16, (1, 1, 4, 6))

    def test_d_must_be_positive(self, rs16):
        with pytest.raises(ValueError):
            compute_C(rs16, (0, 4, 6))
        with pytest.raises(ValueError):
            compute_C(rs16, (1, -4, 6))

    def test_objectives_frozen(self, c16):
        assert _close(objective_B2(c16), B2_REF)
        assert _close(objective_B1(c16), B1_REF)

    @pytest.mark.parametrize("lam", [2, 3, Fraction(1, 5)])
    def test_objectives_are_scale_invariant(self, rs16, c16, lam):
        # C2 ~ 1/lambda and C4 ~ lambda, so both products drop the scale
        scaled = compute_C(rs16, tuple(lam * v for v in c16.d))
        assert objective_B1(scaled) == objective_B1(c16)
        assert objective_B2(scaled) == objective_B2(c16)

    def test_constituents_do_scale(self, rs16, c16):
        scaled = compute_C(rs16, tuple(2 * v for v in c16.d))
        assert scaled.C1 == 2 * c16.C1
        assert scaled.C2 == c16.C2 / 2
        assert scaled.C4 == 2 * c16.C4
        assert scaled.C5 == 4 * c16.C5


class TestZ3Split:

    def test_pivot_modulus_real(self, c16, z3_main):
        assert pivot_modulus(c16, z3_main) == \
            abs(c16.C1 * z3_main - c16.C3 / 2)

    def test_pivot_modulus_complex_rational(self, c16):
        z3 = (Fraction(10 ** 13), Fraction(10 ** 13))
        mod = pivot_modulus(c16, z3)
        want = (c16.C1 * z3[0] - c16.C3 / 2) ** 2 + (c16.C1 * z3[1]) ** 2
        assert isinstance(mod, Radical)
        assert (mod * mod).as_fraction() == want

    def test_pivot_modulus_complex_float(self, rs16):
        # same point pushed through the float pipeline
        frs = reduce_system(rs16.seq, rs16.pattern, FLOAT)
        c = compute_C(frs, (1.0, 4.0, 6.0))
        mod = pivot_modulus(c, complex(1e13, 1e13))
        want = math.hypot(c.C1 * 1e13 - c.C3 / 2, c.C1 * 1e13)
        assert mod == pytest.approx(want)

    def test_degenerate_z3_detected(self, c16):
        with pytest.raises(DegenerateZ3Error):
            pivot_modulus(c16, c16.C3 / (2 * c16.C1))


class TestB0:

    def test_split_e_frozen(self, c16, z3_main):
        e0, e1 = split_e(c16, z3_main)
        assert _close(e0, 0.5785829760712053)
        assert _close(e1, 0.015399264329175062)

    def test_b0_is_e0_over_z1_plus_e1_z1(self, c16, z3_main):
        e0, e1 = split_e(c16, z3_main)
        for z1 in (Fraction(1), Fraction(7), Fraction(13, 2)):
            assert objective_B0(c16, z3_main, z1) == e0 / z1 + e1 * z1

    def test_z1_must_be_positive(self, c16, z3_main):
        with pytest.raises(ValueError):
            objective_B0(c16, z3_main, Fraction(-1))

    def test_minimum_squares_to_4_e0_e1(self, c16, z3_main):
        e0, e1 = split_e(c16, z3_main)
        val = b0_minimum(c16, z3_main)
        sq = val * val
        if isinstance(sq, Radical):
            sq = sq.as_fraction()
        assert sq == 4 * e0 * e1
        assert _close(val, 0.18878296729187474)

    def test_minimizer_location(self, c16, z3_main):
        z1s = z1_star(c16, z3_main)
        assert _close(z1s, 6.129609936437393)
        # nearby points do strictly worse; compare through exact squares
        e0, e1 = split_e(c16, z3_main)
        best_sq = 4 * e0 * e1
        for q in (Fraction(61296, 10000), Fraction(61297, 10000)):
            b0 = objective_B0(c16, z3_main, q)
            assert b0 * b0 > best_sq

    def test_minimizer_finite_difference(self, c16, z3_main):
        z1s = float(z1_star(c16, z3_main))
        e0, e1 = split_e(c16, z3_main)
        f = lambda t: float(e0) / t + float(e1) * t
        assert f(z1s * (1 + 1e-6)) > f(z1s)
        assert f(z1s * (1 - 1e-6)) > f(z1s)


class TestIntervalObjective:

    def test_near_one_row_certifies_below_one(self):
        """The tightest published row still lands strictly below 1."""
        seq = dirichlet(Fraction(-4999, 1000))
        pattern = DegreePattern.from_phi(6, phi2=2, phi3=34)
        rs = reduce_system(seq, pattern, INTERVAL)
        b1 = objective_B1(compute_C(rs, (4, 11, 100000)))
        assert b1.hi < 1
        assert b1.lo == pytest.approx(0.9990058926783769, rel=1e-9)
        assert b1.hi == pytest.approx(0.9990058926787443, rel=1e-9)

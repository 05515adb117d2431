"""Generator pairs and the inner products that drive the whole construction.

The subspace M is generated by two polynomials built on a degree pattern
gamma_0..gamma_5 (distinct mod k):

    F_1 = sum_{i<4} a_i z^{gamma_i}  +  a_reg z^{gamma_4}
        + sum_{i<4} a_{k+i} z^{k+gamma_i}
    F_2 = sum_{i<4} b_i z^{gamma_i}  +  b_reg z^{gamma_5}

Everything the certificate asserts reduces to the cross inner products
A_{s,1}..A_{s,5} between k-block shifts of F_1 and F_2.  This module computes
them directly from coefficient maps; it is the slow, definition-level oracle
against which the closed-form reduction is cross-checked.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional

from .errors import (DegeneratePairError, InvalidPatternError,
                     NotOrthogonalError)
from .scalars import (RATIONAL, Interval, Radical, abs_sq, conj,
                      is_exact_zero, strictly_less, to_regime)
from .weights import WeightSequence, matrix_indices, weight

CoefficientMap = Dict[int, object]


@dataclass(frozen=True)
class DegreePattern:
    """Shift order k plus the six exponents carried by the generators.

    gamma_0..gamma_3 are the active degrees, gamma_4 and gamma_5 the register
    degrees.  All six must be distinct mod k so that the shifted supports can
    only meet where intended (which forces k >= 6).
    """

    k: int
    gamma: tuple

    def __post_init__(self):
        if self.k < 1:
            raise InvalidPatternError("k must be a positive integer")
        g = tuple(int(x) for x in self.gamma)
        if len(g) != 6:
            raise InvalidPatternError("pattern needs exactly 6 degrees")
        if any(x < 0 for x in g):
            raise InvalidPatternError("degrees must be nonnegative")
        if len({x % self.k for x in g}) != 6:
            raise InvalidPatternError(
                f"degrees {g} are not distinct mod k={self.k}")
        object.__setattr__(self, "gamma", g)

    @classmethod
    def default(cls, k: int) -> "DegreePattern":
        return cls(k, (0, 1, 2, 3, 4, 5))

    @classmethod
    def from_phi(cls, k: int, phi2: int = 0, phi3: int = 0,
                 phi4: int = 0, phi5: int = 0) -> "DegreePattern":
        if min(phi2, phi3, phi4, phi5) < 0:
            raise InvalidPatternError("phi multipliers must be >= 0")
        return cls(k, (0, 1, phi2 * k + 2, phi3 * k + 3,
                       phi4 * k + 4, phi5 * k + 5))

    @property
    def low_degrees(self) -> tuple:
        return self.gamma[:4]

    @property
    def register_degrees(self) -> tuple:
        return self.gamma[4:]

    def matrix_indices(self) -> tuple:
        return matrix_indices(self.k, self.gamma)


@dataclass(frozen=True)
class GeneratorPair:
    """Coefficients of (F_1, F_2) on a pattern; scalars in any one regime."""

    pattern: DegreePattern
    a_low: tuple       # F_1 at gamma_0..gamma_3
    a_high: tuple      # F_1 at k+gamma_0..k+gamma_3
    b_low: tuple       # F_2 at gamma_0..gamma_3
    a_reg: object = Fraction(0)   # F_1 at gamma_4
    b_reg: object = Fraction(0)   # F_2 at gamma_5

    def __post_init__(self):
        for name in ("a_low", "a_high", "b_low"):
            if len(getattr(self, name)) != 4:
                raise ValueError(f"{name} must hold 4 coefficients")

    @property
    def has_registers(self) -> bool:
        return not (is_exact_zero(self.a_reg) and is_exact_zero(self.b_reg))

    def with_registers(self, a_reg, b_reg) -> "GeneratorPair":
        return GeneratorPair(self.pattern, self.a_low, self.a_high,
                             self.b_low, a_reg, b_reg)

    def f1_map(self) -> CoefficientMap:
        p = self.pattern
        out: CoefficientMap = {}
        for i in range(4):
            _map_add(out, p.gamma[i], self.a_low[i])
            _map_add(out, p.k + p.gamma[i], self.a_high[i])
        _map_add(out, p.gamma[4], self.a_reg)
        return out

    def f2_map(self) -> CoefficientMap:
        p = self.pattern
        out: CoefficientMap = {}
        for i in range(4):
            _map_add(out, p.gamma[i], self.b_low[i])
        _map_add(out, p.gamma[5], self.b_reg)
        return out


@dataclass(frozen=True)
class AQuantities:
    """The five s-level inner products.

    A1 = <z^{k(s-1)} F_1, z^{ks} F_1>     (adjacent block correlation)
    A2 = <z^{ks} F_1,     z^{ks} F_2>
    A3 = ||z^{ks} F_1||^2
    A4 = ||z^{ks} F_2||^2
    A5 = <z^{k(s-1)} F_1, z^{ks} F_2>
    """

    s: int
    A1: object
    A2: object
    A3: object
    A4: object
    A5: object


def _map_add(m: CoefficientMap, degree: int, value):
    if is_exact_zero(value):
        return
    if degree in m:
        m[degree] = m[degree] + value
    else:
        m[degree] = value


def inner_product(f: CoefficientMap, g: CoefficientMap, seq: WeightSequence,
                  regime: str = RATIONAL, shift_f: int = 0, shift_g: int = 0):
    """<z^{shift_f} f, z^{shift_g} g> in the weighted space.

    Terms are accumulated in ascending degree order so float and interval
    results are reproducible.
    """
    total = None
    for d in sorted(f):
        t = d + shift_f
        cg = g.get(t - shift_g)
        if cg is None:
            continue
        term = f[d] * conj(cg) * weight(seq, t, regime)
        total = term if total is None else total + term
    if total is None:
        return to_regime(Fraction(0), regime)
    return total


def norm_sq(f: CoefficientMap, seq: WeightSequence,
            regime: str = RATIONAL, shift: int = 0):
    total = None
    for d in sorted(f):
        term = abs_sq(f[d]) * weight(seq, d + shift, regime)
        total = term if total is None else total + term
    if total is None:
        return to_regime(Fraction(0), regime)
    return total


def compute_A(pair: GeneratorPair, seq: WeightSequence, s: int,
              regime: str = RATIONAL) -> AQuantities:
    """All five A-quantities at level s >= 1, straight from the definitions."""
    if s < 1:
        raise ValueError("s must be >= 1")
    k = pair.pattern.k
    f1 = pair.f1_map()
    f2 = pair.f2_map()
    lo, hi = k * (s - 1), k * s
    return AQuantities(
        s=s,
        A1=inner_product(f1, f1, seq, regime, shift_f=lo, shift_g=hi),
        A2=inner_product(f1, f2, seq, regime, shift_f=hi, shift_g=hi),
        A3=norm_sq(f1, seq, regime, shift=hi),
        A4=norm_sq(f2, seq, regime, shift=hi),
        A5=inner_product(f1, f2, seq, regime, shift_f=lo, shift_g=hi),
    )


def _is_zero_with_tol(x, atol: float) -> bool:
    if isinstance(x, Interval):
        return x.contains_zero() and x.width <= atol
    if isinstance(x, (float, complex)):
        return abs(x) <= atol
    return is_exact_zero(x)


def _check_engineered(pair: GeneratorPair, seq: WeightSequence, regime: str,
                      atol: float) -> AQuantities:
    """Verify the five orthogonality relations; return the level-1 block."""
    q1 = compute_A(pair, seq, 1, regime)
    if not _is_zero_with_tol(q1.A1, atol):
        raise NotOrthogonalError(f"A_(1,1) = {q1.A1!r} is not zero")
    for s in (2, 3):
        qs = compute_A(pair, seq, s, regime)
        if not _is_zero_with_tol(qs.A1, atol):
            raise NotOrthogonalError(f"A_({s},1) = {qs.A1!r} is not zero")
        if not _is_zero_with_tol(qs.A5, atol):
            raise NotOrthogonalError(f"A_({s},5) = {qs.A5!r} is not zero")
    return q1


def construct_F3(pair: GeneratorPair, seq: WeightSequence,
                 regime: str = RATIONAL, atol: float = 1e-20) -> CoefficientMap:
    """Second spanning element of M (-) z^k M, as a coefficient map.

        F_3 = F_1 + z^k * A_15 / (|A_12|^2 - A_13 A_14)
                        * (A_13 F_2 - conj(A_12) F_1)

    Requires the engineered orthogonality relations and a strict
    Cauchy-Schwarz gap |A_12|^2 < A_13 A_14.
    """
    q1 = _check_engineered(pair, seq, regime, atol)
    lhs = abs_sq(q1.A2)
    rhs = q1.A3 * q1.A4
    if _is_zero_with_tol(q1.A3, atol) or _is_zero_with_tol(q1.A4, atol):
        raise DegeneratePairError("a shifted generator has zero norm")
    if not strictly_less(lhs, rhs):
        raise DegeneratePairError(
            f"|A_12|^2 = {lhs!r} does not sit strictly below "
            f"A_13*A_14 = {rhs!r}")
    k = pair.pattern.k
    scale = q1.A5 / (lhs - rhs)
    c2 = scale * q1.A3            # multiplies F_2, shifted by k
    c1 = -(scale * conj(q1.A2))   # multiplies F_1, shifted by k
    out: CoefficientMap = dict(pair.f1_map())
    for d, v in pair.f2_map().items():
        _map_add(out, d + k, c2 * v)
    for d, v in pair.f1_map().items():
        _map_add(out, d + k, c1 * v)
    return {d: v for d, v in sorted(out.items()) if not is_exact_zero(v)}


def construct_F4(pair: GeneratorPair, seq: WeightSequence,
                 regime: str = RATIONAL, atol: float = 1e-20) -> CoefficientMap:
    """Companion element F_4 = F_1 (1 - z^k A_15 conj(A_12) / (|A_12|^2 - A_13 A_14))."""
    q1 = _check_engineered(pair, seq, regime, atol)
    lhs = abs_sq(q1.A2)
    rhs = q1.A3 * q1.A4
    if not strictly_less(lhs, rhs):
        raise DegeneratePairError("Cauchy-Schwarz gap is not strict")
    k = pair.pattern.k
    mu = q1.A5 * conj(q1.A2) / (lhs - rhs)
    out: CoefficientMap = dict(pair.f1_map())
    for d, v in pair.f1_map().items():
        _map_add(out, d + k, -(mu * v))
    return {d: v for d, v in sorted(out.items()) if not is_exact_zero(v)}

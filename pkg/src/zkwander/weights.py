"""Weight sequences for the weighted Hardy spaces under study.

A sequence assigns a strictly positive weight omega_t to each degree t >= 0,
with omega_0 = 1; the norm is  ||f||^2 = sum |a_t|^2 omega_t.  Three kinds are
supported:

* ``dirichlet(alpha)`` -- omega_t = (t+1)^alpha.  alpha = -1, 0, 1 give the
  Bergman, Hardy and Dirichlet norms.
* ``perturbed(base, overrides)`` -- equal to ``base`` except at finitely many
  indices, whose exact rational values are stored explicitly.
* ``custom(prefix, tail)`` -- explicit finite prefix, then another sequence.

Evaluation is regime aware: exact rationals (integer alpha only), outward
rounded intervals, or plain floats for search work.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .errors import InvalidPatternError, ModeUnsupportedError
from .scalars import (FLOAT, INTERVAL, RATIONAL, Interval, power_interval,
                      to_regime)

DIRICHLET = "dirichlet"
PERTURBED = "perturbed"
CUSTOM = "custom"


def _normalize_alpha(alpha) -> Fraction:
    if isinstance(alpha, float):
        # repr round-trips the decimal the caller typed (-4.999 -> -4999/1000)
        return Fraction(repr(alpha))
    return Fraction(alpha)


@dataclass(frozen=True)
class WeightSequence:
    kind: str
    alpha: Optional[Fraction] = None
    base: Optional["WeightSequence"] = None
    overrides: tuple = ()          # sorted ((index, Fraction), ...)
    prefix: tuple = ()             # Fractions
    tail: Optional["WeightSequence"] = None
    label: str = field(default="", compare=False)

    @property
    def alpha_is_integer(self) -> bool:
        return self.alpha is not None and self.alpha.denominator == 1

    def describe(self) -> str:
        if self.label:
            return self.label
        if self.kind == DIRICHLET:
            return f"dirichlet({self.alpha})"
        if self.kind == PERTURBED:
            return f"perturbed({self.base.describe()}, {len(self.overrides)} overrides)"
        return f"custom({len(self.prefix)} prefix, tail={self.tail.describe()})"


def dirichlet(alpha) -> WeightSequence:
    return WeightSequence(kind=DIRICHLET, alpha=_normalize_alpha(alpha))


def perturbed(base: WeightSequence, overrides: dict) -> WeightSequence:
    items = []
    for t, v in overrides.items():
        t = int(t)
        v = Fraction(v)
        if t < 0:
            raise ValueError("override index must be >= 0")
        if v <= 0:
            raise ValueError(f"override value at {t} must be positive")
        items.append((t, v))
    items.sort()
    if len({t for t, _ in items}) != len(items):
        raise ValueError("duplicate override index")
    return WeightSequence(kind=PERTURBED, base=base, overrides=tuple(items))


def custom(prefix: Sequence, tail: WeightSequence) -> WeightSequence:
    pf = tuple(Fraction(v) for v in prefix)
    if any(v <= 0 for v in pf):
        raise ValueError("prefix weights must be positive")
    return WeightSequence(kind=CUSTOM, prefix=pf, tail=tail)


@lru_cache(maxsize=None)
def _override_map(seq: WeightSequence) -> dict:
    return dict(seq.overrides)


def _dirichlet_weight(alpha: Fraction, t: int, regime: str):
    n = t + 1
    if regime == RATIONAL:
        if alpha.denominator != 1:
            raise ModeUnsupportedError(
                f"rational regime needs an integer exponent, got alpha={alpha}")
        a = alpha.numerator
        return Fraction(n ** a) if a >= 0 else Fraction(1, n ** (-a))
    if regime == FLOAT:
        try:
            v = float(n) ** float(alpha)
        except OverflowError as exc:
            raise ModeUnsupportedError(f"float weight overflow at t={t}") from exc
        if v == 0.0:
            raise ModeUnsupportedError(
                f"float weight underflows to 0 at t={t}; use the rational regime")
        return v
    if regime == INTERVAL:
        if alpha.denominator == 1:
            iv = Interval.exact(_dirichlet_weight(alpha, t, RATIONAL))
        else:
            iv = power_interval(n, alpha)
        if not iv.is_positive():
            raise ModeUnsupportedError(
                f"interval weight at t={t} is not certifiably positive "
                "(underflow); use the rational regime")
        return iv
    raise ValueError(f"unknown regime {regime!r}")


def weight(seq: WeightSequence, t: int, regime: str = RATIONAL):
    """omega_t of the sequence in the requested regime."""
    if t < 0:
        raise ValueError("degree must be >= 0")
    if seq.kind == DIRICHLET:
        return _dirichlet_weight(seq.alpha, t, regime)
    if seq.kind == PERTURBED:
        v = _override_map(seq).get(t)
        if v is not None:
            return to_regime(v, regime)
        return weight(seq.base, t, regime)
    if seq.kind == CUSTOM:
        if t < len(seq.prefix):
            return to_regime(seq.prefix[t], regime)
        return weight(seq.tail, t, regime)
    raise ValueError(f"unknown weight kind {seq.kind!r}")


def matrix_indices(k: int, gamma: Sequence[int]) -> tuple:
    """The 12 degrees s*k + gamma_i, s in {1,2,3}, i in {0,..,3}.

    These are exactly the weights entering the 3x4 reduction matrix.
    """
    idx = [s * k + gamma[i] for s in (1, 2, 3) for i in range(4)]
    if len(set(idx)) != 12:
        raise InvalidPatternError(
            f"matrix indices collide for k={k}, gamma={tuple(gamma)}")
    return tuple(idx)


def override_block(base: WeightSequence, donor: WeightSequence,
                   pattern) -> WeightSequence:
    """Replace base weights at the 12 matrix indices with donor values.

    The donor must be exactly evaluable (the values are frozen as rationals),
    so a perturbed sequence certifies independently of the donor object.
    """
    idx = matrix_indices(pattern.k, pattern.gamma)
    values = {t: weight(donor, t, RATIONAL) for t in idx}
    out = perturbed(base, values)
    return WeightSequence(kind=out.kind, base=out.base, overrides=out.overrides,
                          label=f"{base.describe()} <- {donor.describe()} on 12")


def lint_weights(seq: WeightSequence, upto: int = 64) -> list:
    """Soft admissibility checks; returns human-readable warnings.

    The construction is stated for Hardy-type weights (omega_0 = 1, ratios
    omega_t/omega_{t+1} bounded and tending to 1).  Violations do not stop any
    computation here, they only flag that the ambient-space interpretation of
    a result may not apply.
    """
    warnings = []
    try:
        w0 = weight(seq, 0, RATIONAL)
        values = [weight(seq, t, RATIONAL) for t in range(upto + 1)]
    except ModeUnsupportedError:
        w0 = weight(seq, 0, FLOAT)
        values = [weight(seq, t, FLOAT) for t in range(upto + 1)]
    if w0 != 1:
        warnings.append(f"omega_0 = {w0} != 1")
    ratios = [values[t] / values[t + 1] for t in range(upto)]
    if max(ratios) > 4 or min(ratios) < Fraction(1, 4):
        warnings.append("ratio omega_t/omega_{t+1} leaves [1/4, 4] "
                        f"on t <= {upto}")
    endgap = abs(ratios[-1] - 1)
    if endgap > Fraction(1, 2):
        warnings.append(f"ratio omega_t/omega_{{t+1}} is {float(ratios[-1]):.4g} "
                        f"at t = {upto - 1}, not close to 1")
    return warnings


# ---------------------------------------------------------------------------
# serialization

def weights_to_dict(seq: WeightSequence) -> dict:
    if seq.kind == DIRICHLET:
        return {"kind": DIRICHLET, "alpha": str(seq.alpha)}
    if seq.kind == PERTURBED:
        return {"kind": PERTURBED,
                "base": weights_to_dict(seq.base),
                "overrides": {str(t): str(v) for t, v in seq.overrides}}
    return {"kind": CUSTOM,
            "prefix": [str(v) for v in seq.prefix],
            "tail": weights_to_dict(seq.tail)}


def weights_from_dict(obj: dict) -> WeightSequence:
    kind = obj["kind"]
    if kind == DIRICHLET:
        return dirichlet(Fraction(obj["alpha"]))
    if kind == PERTURBED:
        base = weights_from_dict(obj["base"])
        return perturbed(base, {int(t): Fraction(v)
                                for t, v in obj["overrides"].items()})
    if kind == CUSTOM:
        return custom([Fraction(v) for v in obj["prefix"]],
                      weights_from_dict(obj["tail"]))
    raise ValueError(f"unknown weight kind {kind!r}")


def weights_to_json(seq: WeightSequence) -> str:
    return json.dumps(weights_to_dict(seq), sort_keys=True)


def weights_from_json(text: str) -> WeightSequence:
    return weights_from_dict(json.loads(text))

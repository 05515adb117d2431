"""Verification of engineered pairs and self-contained certificates.

A certificate records the generator coefficients, the weights they touch, and
the four conditions that make M = [F_1, F_2] a counterexample to the
wandering property of z^k:

  adjacent_zero       A_{1,1} = 0
  higher_zero         A_{2,1} = A_{3,1} = A_{2,5} = A_{3,5} = 0
  coupling_nonzero    A_{1,5} A_{1,2} != 0
  strict_contraction  A_{1,3} A_{1,4} - |A_{1,2}|^2 < |A_{1,5} A_{1,2}|

All four together give z^{gamma_4} in M but orthogonal to the span of the
wandering vectors, with contraction ratio c < 1 certifying the geometric
decay.  Soundness gate: a pass verdict requires the rational or interval
regime; float runs always report "fail" with an explanatory reason, whatever
the numerics suggest.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .errors import (CertificateError, DegeneratePairError,
                     ModeUnsupportedError)
from .model import (AQuantities, DegreePattern, GeneratorPair, compute_A,
                    construct_F3, inner_product)
from .reduction import _split_z3, objective_B0
from .scalars import (FLOAT, INTERVAL, RATIONAL, Interval, Radical, abs_sq,
                      conj, is_exact_zero, scalar_from_json, scalar_to_json,
                      strictly_less, to_float)
from .weights import (WeightSequence, weight, weights_from_dict,
                      weights_to_dict)

SCHEMA = "zkwander-certificate/v1"

FLOAT_ZERO_RTOL = 1e-9
INTERVAL_WIDTH_RTOL = 1e-20


def default_s_max(pattern: DegreePattern) -> int:
    """High enough that every possible support overlap has been swept."""
    top = 3 * pattern.k + max(pattern.gamma)
    return -(-top // pattern.k) + 2


def _scale_of(a3) -> float:
    v = to_float(abs_sq(a3)) ** 0.5 if isinstance(a3, complex) else abs(to_float(a3))
    return max(1.0, v)


def _zero_report(x, scale: float, regime: str) -> tuple:
    if regime == RATIONAL:
        if isinstance(x, Radical):
            return x.is_zero(), {"exact": True, "value": scalar_to_json(x)}
        return is_exact_zero(x), {"exact": True, "value": scalar_to_json(x)}
    if regime == INTERVAL:
        tol = INTERVAL_WIDTH_RTOL * scale
        contains = x.contains_zero() if isinstance(x, Interval) else x == 0
        width = x.width if isinstance(x, Interval) else 0.0
        return (contains and width <= tol,
                {"contains_zero": contains, "width": width, "tolerance": tol})
    r = abs(x)
    tol = FLOAT_ZERO_RTOL * scale
    return r <= tol, {"residual": r, "tolerance": tol}


def _nonzero_report(x, regime: str) -> tuple:
    if regime == RATIONAL:
        z = x.is_zero() if isinstance(x, Radical) else is_exact_zero(x)
        return not z, {"exact": True, "value": scalar_to_json(x)}
    if regime == INTERVAL:
        contains = x.contains_zero() if isinstance(x, Interval) else x == 0
        return not contains, {"excludes_zero": not contains}
    return abs(x) > 0.0, {"magnitude": abs(x)}


def _abs_exact(x):
    """|x| for a real rational/Radical/Interval/float/complex scalar."""
    if isinstance(x, complex):
        return abs(x)
    if isinstance(x, Radical):
        return abs(x)
    if isinstance(x, Interval):
        return abs(x)
    return abs(x)


@dataclass
class Certificate:
    verdict: str
    regime: str
    pair: GeneratorPair
    seq: WeightSequence
    s_max: int
    conditions: dict
    a_table: dict                  # s -> AQuantities
    c_value: Optional[object]
    reasons: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    membership: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        p = self.pair.pattern
        idx = sorted(set(p.matrix_indices())
                     | {p.k + p.gamma[4], p.k + p.gamma[5]})
        embedded = {}
        for t in idx:
            try:
                embedded[str(t)] = str(weight(self.seq, t, RATIONAL))
            except Exception:
                iv = weight(self.seq, t, INTERVAL)
                embedded[str(t)] = scalar_to_json(iv)
        a_enc = {}
        for s, q in sorted(self.a_table.items()):
            a_enc[str(s)] = {f"A{i}": scalar_to_json(getattr(q, f"A{i}"))
                             for i in range(1, 6)}
        return {
            "schema": SCHEMA,
            "verdict": self.verdict,
            "regime": self.regime,
            "k": p.k,
            "gamma": list(p.gamma),
            "weights": weights_to_dict(self.seq),
            "weights_at_matrix_indices": embedded,
            "coefficients": {
                "a_low": [scalar_to_json(v) for v in self.pair.a_low],
                "a_high": [scalar_to_json(v) for v in self.pair.a_high],
                "b_low": [scalar_to_json(v) for v in self.pair.b_low],
                "a_reg": scalar_to_json(self.pair.a_reg),
                "b_reg": scalar_to_json(self.pair.b_reg),
            },
            "s_max": self.s_max,
            "A": a_enc,
            "conditions": self.conditions,
            "c": None if self.c_value is None else scalar_to_json(self.c_value),
            "c_float": None if self.c_value is None else to_float(self.c_value),
            "reasons": self.reasons,
            "warnings": self.warnings,
            "membership": self.membership,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def verify(pair: GeneratorPair, seq: WeightSequence, regime: str = RATIONAL,
           s_max: Optional[int] = None) -> Certificate:
    """Evaluate the four conditions from the raw coefficients."""
    if s_max is None:
        s_max = default_s_max(pair.pattern)
    if regime == RATIONAL:
        for v in (*pair.a_low, *pair.a_high, *pair.b_low,
                  pair.a_reg, pair.b_reg):
            if isinstance(v, (float, complex, Interval)):
                raise ModeUnsupportedError(
                    "rational regime needs exact coefficients "
                    f"(got {type(v).__name__})")
    a_table = {s: compute_A(pair, seq, s, regime) for s in range(1, s_max + 1)}
    q1 = a_table[1]
    scale = _scale_of(q1.A3)
    conditions = {}
    reasons = []

    def zero_reason(label: str, info: dict) -> str:
        if info.get("contains_zero"):
            return (f"{label} enclosure contains 0 but its width "
                    f"{info['width']:.3e} exceeds the certification "
                    f"tolerance {info['tolerance']:.3e}")
        return f"{label} != 0"

    holds, info = _zero_report(q1.A1, scale, regime)
    conditions["adjacent_zero"] = {"holds": holds, "A_1_1": info}
    if not holds:
        reasons.append(zero_reason("A_(1,1)", info))

    hz_all = True
    hz = {}
    for s in (2, 3):
        for name, val in (("A1", a_table[s].A1), ("A5", a_table[s].A5)):
            ok, info = _zero_report(val, scale, regime)
            label = f"A_({s},{'1' if name == 'A1' else '5'})"
            hz[label] = info
            if not ok:
                hz_all = False
                reasons.append(zero_reason(label, info))
    conditions["higher_zero"] = {"holds": hz_all, **hz}

    coupling = q1.A5 * conj(q1.A2)
    ok, info = _nonzero_report(coupling, regime)
    conditions["coupling_nonzero"] = {"holds": ok, "A15_A12": info}
    if not ok:
        reasons.append("A_(1,5) A_(1,2) = 0")

    lhs = q1.A3 * q1.A4 - abs_sq(q1.A2)
    rhs = _abs_exact(coupling)
    c_value = None
    try:
        if isinstance(rhs, Radical):
            rhs_cmp = rhs.as_fraction()
        else:
            rhs_cmp = rhs
        strict = strictly_less(lhs, rhs_cmp)
        if ok:
            c_value = lhs / rhs_cmp
            if isinstance(c_value, Radical) and c_value.is_rational:
                c_value = c_value.as_fraction()
    except ZeroDivisionError:
        strict = False
    conditions["strict_contraction"] = {
        "holds": strict,
        "lhs": scalar_to_json(lhs),
        "rhs": scalar_to_json(rhs),
        "c": None if c_value is None else to_float(c_value),
    }
    if not strict:
        reasons.append("A_(1,3) A_(1,4) - |A_(1,2)|^2 >= |A_(1,5) A_(1,2)|")

    warnings = []
    for s in range(4, s_max + 1):
        for nm, v in (("1", a_table[s].A1), ("5", a_table[s].A5)):
            zok, _ = _zero_report(v, scale, regime)
            if not zok:
                warnings.append(
                    f"A_({s},{nm}) = {to_float(v) if regime != RATIONAL else float(v):.3e}"
                    " is nonzero (harmless: it multiplies a zero coefficient"
                    " in the membership recursion)")

    all_hold = all(conditions[nm]["holds"] for nm in
                   ("adjacent_zero", "higher_zero", "coupling_nonzero",
                    "strict_contraction"))
    membership = {}
    if all_hold and regime != FLOAT:
        membership = _membership_sweep(pair, seq, regime, s_max, scale)
        if not membership["holds"]:
            all_hold = False
            reasons.append("membership sweep found a nonzero projection")

    verdict = "pass" if (all_hold and regime != FLOAT) else "fail"
    if all_hold and regime == FLOAT:
        reasons.append("float regime cannot back a pass verdict; rerun with "
                       "regime rational or interval")
        warnings.append("all conditions hold numerically in float; verdict "
                        "withheld by the soundness gate")
    return Certificate(verdict=verdict, regime=regime, pair=pair, seq=seq,
                       s_max=s_max, conditions=conditions, a_table=a_table,
                       c_value=c_value, reasons=reasons, warnings=warnings,
                       membership=membership)


def _membership_sweep(pair: GeneratorPair, seq: WeightSequence, regime: str,
                      s_max: int, scale: float) -> dict:
    """Check that F_2 and F_3 really live in M (-) z^k M up to level s_max.

    This re-derives the wandering-failure witness independently of the four
    condition checks; any nonzero projection flags an internal inconsistency.
    """
    k = pair.pattern.k
    atol = (INTERVAL_WIDTH_RTOL if regime == INTERVAL else FLOAT_ZERO_RTOL) * scale
    try:
        f3 = construct_F3(pair, seq, regime, atol=atol)
    except DegeneratePairError as exc:
        return {"holds": False, "error": str(exc)}
    f1, f2 = pair.f1_map(), pair.f2_map()
    worst = 0.0
    for s in range(1, s_max + 1):
        for tag, fmap in (("F2", f2), ("F3", f3)):
            for gname, gmap in (("F1", f1), ("F2", f2)):
                v = inner_product(fmap, gmap, seq, regime,
                                  shift_f=0, shift_g=k * s)
                zok, _ = _zero_report(v, scale, regime)
                if not zok:
                    return {"holds": False,
                            "first_failure": f"<{tag}, z^{k * s} {gname}> != 0"}
                if regime == INTERVAL and isinstance(v, Interval):
                    worst = max(worst, v.width)
                elif regime == FLOAT:
                    worst = max(worst, abs(v))
    return {"holds": True, "levels": s_max, "worst_residual": worst}


def cross_check(params, s_max: Optional[int] = None) -> dict:
    """Reduction identities vs the definition-level oracle, on the core pair.

    Exact equality in the rational regime; float residuals otherwise.  The
    checked identities:

      A_13 = C_1 + Z_1^2 C_2
      A_14 = (|A_15|^2/Z_1^2)(C_1 |Z_3|^2 - C_3 x + C_4)
      |A_12|^2 = (|A_15|^2/Z_1^2) |C_1 Z_3 - C_3/2|^2
      A_15 (oracle) = A_15 (requested)
      c (oracle) = B_0(C; Z_3, Z_1)
    """
    from .reduction import pivot_modulus
    rs, c, pair = params.rs, params.c, params.pair
    if pair.has_registers:
        pair = pair.with_registers(Fraction(0), Fraction(0))
    regime = rs.regime
    q1 = compute_A(pair, rs.seq, 1, regime)
    z1, z3 = params.z1, params.z3
    x, y = _split_z3(z3)
    z3_sq = abs_sq(x) if y is None else abs_sq(x) + abs_sq(y)
    a15_sq = abs_sq(params.a15)
    if isinstance(a15_sq, Radical):
        a15_sq = a15_sq.as_fraction()
    mod = pivot_modulus(c, z3)

    pred_a13 = c.C1 + z1 * z1 * c.C2
    pred_a14 = (a15_sq / (z1 * z1)) * (c.C1 * z3_sq - c.C3 * x + c.C4)
    pred_a12_sq = (a15_sq / (z1 * z1)) * mod * mod
    b0 = objective_B0(c, z3, z1)
    coupling = q1.A5 * conj(q1.A2)
    rhs = _abs_exact(coupling)
    if isinstance(rhs, Radical):
        rhs = rhs.as_fraction()
    c_oracle = (q1.A3 * q1.A4 - abs_sq(q1.A2)) / rhs

    def signed_square(value):
        """(sign, value**2) for a real exact scalar; square kills the radical."""
        if isinstance(value, Radical):
            sq = value.coeff ** 2
            for atom in value.roots:
                sq *= atom
            sign = (value.coeff > 0) - (value.coeff < 0)
            return sign, sq
        q = Fraction(value) if not isinstance(value, Fraction) else value
        return (q > 0) - (q < 0), q * q

    def cmp(lhs, rhsv):
        if regime == RATIONAL:
            return {"equal": signed_square(lhs) == signed_square(rhsv),
                    "exact": True}
        lf, rf = to_float(lhs), to_float(rhsv)
        denom = max(1.0, abs(lf), abs(rf))
        return {"equal": abs(lf - rf) / denom <= 1e-9,
                "relative_residual": abs(lf - rf) / denom}

    report = {
        "A13_from_C": cmp(q1.A3, pred_a13),
        "A14_from_C": cmp(q1.A4, pred_a14),
        "A12_sq_from_C": cmp(abs_sq(q1.A2), pred_a12_sq),
        "A15_engineered": cmp(q1.A5, params.a15),
        "c_equals_B0": cmp(c_oracle, b0),
    }
    report["all_equal"] = all(v["equal"] for v in report.values())
    return report


# ---------------------------------------------------------------------------
# certificate io and independent re-check

def save_certificate(cert: Certificate, path: str) -> None:
    with open(path, "w") as fh:
        fh.write(cert.to_json())


def _pair_from_dict(obj: dict) -> GeneratorPair:
    pattern = DegreePattern(obj["k"], tuple(obj["gamma"]))
    co = obj["coefficients"]
    return GeneratorPair(
        pattern=pattern,
        a_low=tuple(scalar_from_json(v) for v in co["a_low"]),
        a_high=tuple(scalar_from_json(v) for v in co["a_high"]),
        b_low=tuple(scalar_from_json(v) for v in co["b_low"]),
        a_reg=scalar_from_json(co["a_reg"]),
        b_reg=scalar_from_json(co["b_reg"]),
    )


def check_certificate(source) -> dict:
    """Re-derive a stored certificate from its own data.

    Rebuilds the weight sequence and pair, confirms the embedded weights,
    re-runs the verifier in the recorded regime and compares verdict and c.
    Returns a report dict with "ok" set accordingly.
    """
    if isinstance(source, str):
        with open(source) as fh:
            data = json.load(fh)
    else:
        data = source
    if data.get("schema") != SCHEMA:
        raise CertificateError(f"unknown schema {data.get('schema')!r}")
    try:
        seq = weights_from_dict(data["weights"])
        pair = _pair_from_dict(data)
        regime = data["regime"]
        s_max = data["s_max"]
    except (KeyError, ValueError) as exc:
        raise CertificateError(f"malformed certificate: {exc}") from exc

    report = {"ok": True, "mismatches": [], "schema_ok": True,
              "stored_verdict": data["verdict"]}
    for t_str, enc in data["weights_at_matrix_indices"].items():
        t = int(t_str)
        if isinstance(enc, str):
            if weight(seq, t, RATIONAL) != Fraction(enc):
                report["mismatches"].append(f"embedded weight at t={t}")
        else:
            iv = weight(seq, t, INTERVAL)
            emb = scalar_from_json(enc)
            if emb.hi < iv.lo or iv.hi < emb.lo:
                report["mismatches"].append(f"embedded weight enclosure at t={t}")

    redo = verify(pair, seq, regime=regime, s_max=s_max)
    report["recomputed_verdict"] = redo.verdict
    if redo.verdict != data["verdict"]:
        report["mismatches"].append(
            f"verdict: stored {data['verdict']}, recomputed {redo.verdict}")
    stored_c, new_c = data.get("c"), redo.c_value
    if (stored_c is None) != (new_c is None):
        report["mismatches"].append("contraction ratio presence differs")
    elif stored_c is not None:
        if regime == RATIONAL:
            if scalar_from_json(stored_c) != new_c:
                report["mismatches"].append("contraction ratio differs")
        else:
            if abs(to_float(scalar_from_json(stored_c)) - to_float(new_c)) > 1e-12:
                report["mismatches"].append("contraction ratio differs")
    report["ok"] = not report["mismatches"]
    return report

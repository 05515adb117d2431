"""Scalar regimes and the small linear algebra kernel.

Three regimes run through the whole package:

* ``rational``  -- exact ``fractions.Fraction`` arithmetic (bigint backed).
  The only regime allowed to assert exact equalities.
* ``interval``  -- closed float intervals with outward rounding via
  ``math.nextafter``.  Hardware directed rounding is not reachable from pure
  Python, so every endpoint operation is widened by one step; enclosures stay
  valid at the cost of one ulp per operation.
* ``float``     -- plain doubles, for searching only.  Nothing computed here
  may back a pass verdict.

Irrational algebraic values (square roots of positive rationals) appear in
recovered coefficients; ``Radical`` keeps them exact as c * sqrt(r1*...*rn)
with rational c and rational root atoms, so that the inner products the
verifier forms collapse back to plain rationals.

Determinants of the 3x3 and 4x4 weight matrices are taken by cofactor
expansion.  Entries span ~50 orders of magnitude, which would destroy float
pivoting anyway; exact or interval entries make expansion the right tool.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import mpmath

from .errors import ModeUnsupportedError, SingularSystemError

RATIONAL = "rational"
INTERVAL = "interval"
FLOAT = "float"
REGIMES = (RATIONAL, INTERVAL, FLOAT)

_INF = math.inf


def _down(x: float) -> float:
    return math.nextafter(x, -_INF)


def _up(x: float) -> float:
    return math.nextafter(x, _INF)


def _fraction_fits_float(q: Fraction, f: float) -> bool:
    # True when the conversion q -> f was exact.
    if math.isinf(f):
        return False
    return Fraction(f) == q


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] of doubles; all operations round outward."""

    lo: float
    hi: float

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi) or self.lo > self.hi:
            raise ValueError(f"bad interval endpoints [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, value) -> "Interval":
        """Tight enclosure of an int, Fraction or float."""
        if isinstance(value, Interval):
            return value
        if isinstance(value, float):
            return cls(value, value)
        q = Fraction(value)
        f = float(q)
        if _fraction_fits_float(q, f):
            return cls(f, f)
        return cls(_down(f), _up(f))

    # -- queries ---------------------------------------------------------

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value) -> bool:
        if isinstance(value, Fraction):
            return Fraction(self.lo) <= value <= Fraction(self.hi)
        return self.lo <= value <= self.hi

    def contains_zero(self) -> bool:
        return self.lo <= 0.0 <= self.hi

    def is_positive(self) -> bool:
        return self.lo > 0.0

    def is_negative(self) -> bool:
        return self.hi < 0.0

    def certainly_lt(self, other) -> bool:
        other = Interval.exact(other)
        return self.hi < other.lo

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(value) -> "Interval":
        if isinstance(value, Interval):
            return value
        if isinstance(value, (int, float, Fraction)):
            return Interval.exact(value)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Interval(_down(self.lo + other.lo), _up(self.hi + other.hi))

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        ps = (self.lo * other.lo, self.lo * other.hi,
              self.hi * other.lo, self.hi * other.hi)
        return Interval(_down(min(ps)), _up(max(ps)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if other.contains_zero():
            raise ZeroDivisionError("interval divisor encloses zero")
        ps = (self.lo / other.lo, self.lo / other.hi,
              self.hi / other.lo, self.hi / other.hi)
        return Interval(_down(min(ps)), _up(max(ps)))

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("interval pow only supports nonnegative ints")
        out = Interval(1.0, 1.0)
        base = self
        m = n
        while m:
            if m & 1:
                out = out * base
            base = base * base
            m >>= 1
        return out

    def __abs__(self):
        if self.lo >= 0.0:
            return self
        if self.hi <= 0.0:
            return -self
        return Interval(0.0, max(-self.lo, self.hi))

    def sqrt(self) -> "Interval":
        if self.lo < 0.0:
            raise ValueError("sqrt of an interval reaching below zero")
        # math.sqrt is correctly rounded, one outward step suffices
        return Interval(_down(math.sqrt(self.lo)), _up(math.sqrt(self.hi)))

    def __repr__(self):
        return f"[{self.lo!r}, {self.hi!r}]"


def power_interval(base, exponent) -> Interval:
    """Enclosure of base**exponent for positive rational base, real exponent.

    Computed with mpmath at 80-bit precision and widened by two float ulps on
    each side.  Correctness rests on mpmath staying within a few ulps of its
    working precision, which leaves ~2^60 of headroom over a double ulp.
    """
    b = Fraction(base)
    if b <= 0:
        raise ValueError("power_interval needs a positive base")
    with mpmath.workprec(80):
        mb = mpmath.mpf(b.numerator) / mpmath.mpf(b.denominator)
        if isinstance(exponent, (int, Fraction)):
            e = Fraction(exponent)
            me = mpmath.mpf(e.numerator) / mpmath.mpf(e.denominator)
        else:
            me = mpmath.mpf(exponent)
        r = float(mpmath.power(mb, me))
    lo, hi = _down(_down(r)), _up(_up(r))
    return Interval(lo, hi)


def _is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


@dataclass(frozen=True)
class Radical:
    """Exact real c * sqrt(r_1) * ... * sqrt(r_n), c and r_i rational, r_i > 0.

    Root atoms are kept as the original rationals (not multiplied out), so a
    product of two values sharing an atom cancels that atom exactly without
    any integer factoring.  Normal form: atoms sorted, no repeated atom, no
    atom equal to 1 or to a perfect square of a rational.
    """

    coeff: Fraction
    roots: tuple = ()

    def __post_init__(self):
        coeff = Fraction(self.coeff)
        kept = []
        counted: dict[Fraction, int] = {}
        for r in self.roots:
            r = Fraction(r)
            if r <= 0:
                raise ValueError("radical atoms must be positive")
            counted[r] = counted.get(r, 0) + 1
        for r, n in counted.items():
            coeff *= r ** (n // 2)
            if n % 2 == 0:
                continue
            if _is_square(r.numerator) and _is_square(r.denominator):
                coeff *= Fraction(math.isqrt(r.numerator), math.isqrt(r.denominator))
            elif r != 1:
                kept.append(r)
        if coeff == 0:
            kept = []
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "roots", tuple(sorted(kept)))

    @classmethod
    def of(cls, value) -> "Radical":
        if isinstance(value, Radical):
            return value
        return cls(Fraction(value))

    @classmethod
    def sqrt(cls, value) -> "Radical":
        """Exact positive square root of a positive rational."""
        q = Fraction(value)
        if q < 0:
            raise ValueError("sqrt of a negative rational")
        if q == 0:
            return cls(Fraction(0))
        return cls(Fraction(1), (q,))

    # -- queries ---------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return not self.roots

    def as_fraction(self) -> Fraction:
        if self.roots:
            raise ModeUnsupportedError(f"{self!r} is irrational")
        return self.coeff

    def is_zero(self) -> bool:
        return self.coeff == 0

    def __float__(self) -> float:
        out = float(self.coeff)
        for r in self.roots:
            out *= math.sqrt(float(r))
        return out

    def conjugate(self) -> "Radical":
        return self

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(value):
        if isinstance(value, Radical):
            return value
        if isinstance(value, (int, Fraction)):
            return Radical(Fraction(value))
        return None

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Radical(self.coeff * o.coeff, self.roots + o.roots)

    __rmul__ = __mul__

    def __neg__(self):
        return Radical(-self.coeff, self.roots)

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.is_zero():
            return o
        if o.is_zero():
            return self
        if self.roots != o.roots:
            raise ModeUnsupportedError(
                f"cannot add radicals with different root atoms: {self!r} + {o!r}")
        return Radical(self.coeff + o.coeff, self.roots)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero radical")
        # 1 / (c sqrt(r1..rn)) = (1 / (c r1..rn)) sqrt(r1..rn)
        prod = Fraction(1)
        for r in o.roots:
            prod *= r
        inv = Radical(1 / (o.coeff * prod), o.roots)
        return self * inv

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("radical pow only supports nonnegative ints")
        out = Radical(Fraction(1))
        for _ in range(n):
            out = out * self
        return out

    def __abs__(self):
        return Radical(abs(self.coeff), self.roots)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeff == o.coeff and self.roots == o.roots

    def __hash__(self):
        return hash((self.coeff, self.roots))

    def __repr__(self):
        if not self.roots:
            return f"Radical({self.coeff})"
        tail = "*".join(f"sqrt({r})" for r in self.roots)
        return f"Radical({self.coeff}*{tail})"


Scalar = Union[Fraction, float, complex, Interval, Radical]


# ---------------------------------------------------------------------------
# generic scalar helpers

def conj(x):
    if isinstance(x, complex):
        return x.conjugate()
    return x


def abs_sq(x):
    """x * conj(x) as a real scalar of the same regime."""
    if isinstance(x, complex):
        return (x * x.conjugate()).real
    if isinstance(x, Radical):
        return x * x
    return x * x


def is_exact_zero(x) -> bool:
    if isinstance(x, Radical):
        return x.is_zero()
    if isinstance(x, Interval):
        return x.lo == 0.0 and x.hi == 0.0
    return x == 0


def strictly_less(a, b) -> bool:
    """Certified a < b; for intervals compares outer endpoints."""
    if isinstance(a, Interval) or isinstance(b, Interval):
        return Interval.exact(a).certainly_lt(Interval.exact(b))
    if isinstance(a, Radical) or isinstance(b, Radical):
        a = a.as_fraction() if isinstance(a, Radical) else a
        b = b.as_fraction() if isinstance(b, Radical) else b
    return a < b


def to_regime(q, regime: str):
    """Convert an exact rational into the given regime."""
    if regime == RATIONAL:
        return Fraction(q)
    if regime == FLOAT:
        return float(q)
    if regime == INTERVAL:
        return Interval.exact(q)
    raise ValueError(f"unknown regime {regime!r}")


def to_float(x) -> float:
    if isinstance(x, Interval):
        return x.mid
    if isinstance(x, complex):
        raise TypeError("complex scalar has no canonical float")
    return float(x)


def scalar_to_json(x):
    """JSON-encodable form; exact types stay exact (strings), floats numeric."""
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, Radical):
        if x.is_rational:
            return str(x.coeff)
        return {"rational": str(x.coeff), "roots": [str(r) for r in x.roots]}
    if isinstance(x, Interval):
        return {"lo": x.lo, "hi": x.hi}
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    return x


def scalar_from_json(obj):
    if isinstance(obj, str):
        return Fraction(obj)
    if isinstance(obj, dict):
        if "roots" in obj:
            return Radical(Fraction(obj["rational"]),
                           tuple(Fraction(r) for r in obj["roots"]))
        if "lo" in obj:
            return Interval(obj["lo"], obj["hi"])
        if "re" in obj:
            return complex(obj["re"], obj["im"])
        raise ValueError(f"unrecognized scalar object {obj!r}")
    if isinstance(obj, (int, float)):
        return float(obj)
    raise ValueError(f"unrecognized scalar {obj!r}")


# ---------------------------------------------------------------------------
# small matrices

@dataclass(frozen=True)
class SmallMatrix:
    """Dense row-major matrix, 3 or 4 rows/cols, entries in one regime."""

    rows: int
    cols: int
    entries: tuple

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "SmallMatrix":
        r = len(rows)
        c = len(rows[0])
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        if r not in (3, 4) or c not in (3, 4):
            raise ValueError("only 3x3, 3x4, 4x3, 4x4 supported")
        return cls(r, c, tuple(tuple(row) for row in rows))

    def entry(self, i: int, j: int):
        return self.entries[i][j]

    def replace_col(self, j: int, col: Sequence) -> "SmallMatrix":
        if len(col) != self.rows:
            raise ValueError("column length mismatch")
        rows = [list(row) for row in self.entries]
        for i in range(self.rows):
            rows[i][j] = col[i]
        return SmallMatrix.from_rows(rows)


def _det2(a, b, c, d):
    return a * d - b * c


def det3(m: SmallMatrix):
    if (m.rows, m.cols) != (3, 3):
        raise ValueError("det3 needs a 3x3 matrix")
    e = m.entries
    return (e[0][0] * _det2(e[1][1], e[1][2], e[2][1], e[2][2])
            - e[0][1] * _det2(e[1][0], e[1][2], e[2][0], e[2][2])
            + e[0][2] * _det2(e[1][0], e[1][1], e[2][0], e[2][1]))


def det4(m: SmallMatrix):
    if (m.rows, m.cols) != (4, 4):
        raise ValueError("det4 needs a 4x4 matrix")
    e = m.entries
    total = None
    sign = 1
    for j in range(4):
        sub = SmallMatrix.from_rows(
            [[e[i][c] for c in range(4) if c != j] for i in (1, 2, 3)])
        term = sign * e[0][j] * det3(sub)
        total = term if total is None else total + term
        sign = -sign
    return total


def _det_is_zero(d) -> bool:
    if isinstance(d, Interval):
        # cannot certify invertibility once the enclosure straddles zero
        return d.contains_zero()
    return d == 0


def cramer_solve3(m: SmallMatrix, rhs: Sequence):
    """Solve m x = rhs by Cramer's rule; raises on (possibly) singular m."""
    if (m.rows, m.cols) != (3, 3):
        raise ValueError("cramer_solve3 needs a 3x3 matrix")
    if len(rhs) != 3:
        raise ValueError("rhs must have 3 entries")
    d = det3(m)
    if _det_is_zero(d):
        raise SingularSystemError(
            "3x3 weight system is singular (or not certifiably nonsingular)")
    return tuple(det3(m.replace_col(j, rhs)) / d for j in range(3))

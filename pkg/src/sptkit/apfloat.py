"""Arbitrary-precision reals with an explicit rigorous error budget.

An ``Apfloat`` pairs an mpmath floating-point value, computed at a stated
working precision, with an upper bound ``rigorous_error`` on the distance
between the stored value and the real number it stands for.  Operations
propagate the bound by first-order interval rules:

    add/sub:   e = e_a + e_b
    mul:       e = |a|*e_b + |b|*e_a + e_a*e_b
    div a/b:   e = (|b|*e_a + |a|*e_b) / (|b| * (|b| - e_b)),  |b| > e_b
    exp:       e = exp(a) * (exp(e_a) - 1)        (monotone bound)
    log:       e = e_a / (a - e_a),               a - e_a > 0
    sqrt:      e = e_a / (2*sqrt(a - e_a)),  or sqrt(e_a) when a - e_a <= 0

plus a per-operation rounding allowance (2 ulp for field operations, a
padded 8 ulp for transcendental functions, covering mpmath's worst-case
slack).  Error bookkeeping itself runs in IEEE doubles rounded outward
with ``math.nextafter``, so the budget is a true upper bound.

Comparisons are three-valued: an inequality is asserted only when the two
enclosures are disjoint.  ``resolve`` re-evaluates a comparison at doubled
precision until it is decided, so no verdict is ever issued inside an
error bar.
"""

from __future__ import annotations

import math
from fractions import Fraction

from mpmath import mp
from mpmath.libmp import (
    from_float,
    from_int,
    from_rational,
    mpf_abs,
    mpf_add,
    mpf_cmp,
    mpf_cos_pi,
    mpf_div,
    mpf_exp,
    mpf_log,
    mpf_mul,
    mpf_neg,
    mpf_pi,
    mpf_sin_pi,
    mpf_sqrt,
    mpf_sub,
    to_float,
    fzero,
)

__all__ = [
    "Apfloat",
    "PrecisionError",
    "exact",
    "pi",
    "sqrt_int",
    "unit_phase",
    "resolve",
]

MIN_PRECISION = 64


class PrecisionError(ArithmeticError):
    """A comparison stayed undecided after exhausting the precision ladder."""


# ---------------------------------------------------------------------------
# outward-rounded float helpers for the error budget
# ---------------------------------------------------------------------------

_INF = math.inf


def _up(x: float) -> float:
    """Smallest representable float strictly above the true result of x."""
    if x != x:  # NaN: poison the budget
        return _INF
    return math.nextafter(x, _INF)


def _dn(x: float) -> float:
    return math.nextafter(x, -_INF)


def _uadd(a: float, b: float) -> float:
    return _up(a + b)


def _umul(a: float, b: float) -> float:
    if a == 0.0 or b == 0.0:
        return 0.0
    return _up(a * b)


def _udiv(a: float, b: float) -> float:
    if b <= 0.0:
        return _INF
    if a == 0.0:
        return 0.0
    return _up(a / b)


def _uexpm1(x: float) -> float:
    try:
        return _up(math.expm1(x))
    except OverflowError:
        return _INF


def _float_hi(raw) -> float:
    """Upper bound on |raw| as a double."""
    try:
        f = to_float(mpf_abs(raw), strict=False)
    except OverflowError:
        return _INF
    if math.isinf(f):
        return _INF
    return _up(_up(f))


def _float_lo(raw) -> float:
    """Lower bound on |raw| as a double (nonnegative)."""
    try:
        f = to_float(mpf_abs(raw), strict=False)
    except OverflowError:
        return 1.7e308
    if math.isinf(f):
        return 1.7e308
    return max(0.0, _dn(_dn(f)))


def _rnd_arith(prec: int) -> float:
    return 2.0 ** (1 - prec)


def _rnd_trans(prec: int) -> float:
    return 2.0 ** (3 - prec)


# ---------------------------------------------------------------------------
# the Apfloat proper
# ---------------------------------------------------------------------------


class Apfloat:
    __slots__ = ("value", "precision_bits", "rigorous_error")

    def __init__(self, value, precision_bits: int, rigorous_error: float = 0.0):
        if precision_bits < MIN_PRECISION:
            raise ValueError(f"precision_bits must be >= {MIN_PRECISION}")
        if not rigorous_error >= 0.0:
            raise ValueError("rigorous_error must be nonnegative")
        if isinstance(value, (int, Fraction)):
            inexact = not (isinstance(value, int) and value.bit_length() <= precision_bits)
            value = _convert_exact(value, precision_bits)
            if inexact:
                rigorous_error = _uadd(
                    rigorous_error, _umul(_rnd_arith(precision_bits), _float_hi(value))
                )
            value = mp.make_mpf(value)
        object.__setattr__(self, "value", value)
        object.__setattr__(self, "precision_bits", precision_bits)
        object.__setattr__(self, "rigorous_error", rigorous_error)

    # -- construction -------------------------------------------------------

    @classmethod
    def _make(cls, raw, prec: int, err: float) -> "Apfloat":
        self = object.__new__(cls)
        object.__setattr__(self, "value", mp.make_mpf(raw))
        object.__setattr__(self, "precision_bits", prec)
        object.__setattr__(self, "rigorous_error", err)
        return self

    @property
    def _raw(self):
        return self.value._mpf_

    # -- enclosure ----------------------------------------------------------

    def upper(self):
        """Rigorous upper endpoint, rounded toward +inf."""
        return mp.make_mpf(
            mpf_add(self._raw, from_float(self.rigorous_error), self.precision_bits, "c")
        )

    def lower(self):
        return mp.make_mpf(
            mpf_sub(self._raw, from_float(self.rigorous_error), self.precision_bits, "f")
        )

    def contains(self, x) -> bool:
        """Whether the exact number x (int or Fraction) lies in the enclosure."""
        if isinstance(x, Fraction):
            lo = _raw_to_fraction(self.lower()._mpf_)
            hi = _raw_to_fraction(self.upper()._mpf_)
            return lo <= x <= hi
        return self.lower() <= x <= self.upper()

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Apfloat):
            return other
        if isinstance(other, (int, Fraction)):
            return Apfloat(other, self.precision_bits)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = min(self.precision_bits, other.precision_bits)
        raw = mpf_add(self._raw, other._raw, p, "n")
        err = _uadd(
            _uadd(self.rigorous_error, other.rigorous_error),
            _umul(_rnd_arith(p), _float_hi(raw)),
        )
        return Apfloat._make(raw, p, err)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = min(self.precision_bits, other.precision_bits)
        raw = mpf_sub(self._raw, other._raw, p, "n")
        err = _uadd(
            _uadd(self.rigorous_error, other.rigorous_error),
            _umul(_rnd_arith(p), _float_hi(raw)),
        )
        return Apfloat._make(raw, p, err)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__sub__(self)

    def __neg__(self):
        return Apfloat._make(mpf_neg(self._raw), self.precision_bits, self.rigorous_error)

    def __abs__(self):
        return Apfloat._make(mpf_abs(self._raw), self.precision_bits, self.rigorous_error)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = min(self.precision_bits, other.precision_bits)
        raw = mpf_mul(self._raw, other._raw, p, "n")
        ea, eb = self.rigorous_error, other.rigorous_error
        err = _uadd(_umul(_float_hi(self._raw), eb), _umul(_float_hi(other._raw), ea))
        err = _uadd(err, _umul(ea, eb))
        err = _uadd(err, _umul(_rnd_arith(p), _float_hi(raw)))
        return Apfloat._make(raw, p, err)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        p = min(self.precision_bits, other.precision_bits)
        b_lo = _dn(_float_lo(other._raw) - other.rigorous_error)
        if not b_lo > 0.0:
            raise ZeroDivisionError("divisor enclosure touches zero")
        raw = mpf_div(self._raw, other._raw, p, "n")
        num = _uadd(
            _umul(_float_hi(other._raw), self.rigorous_error),
            _umul(_float_hi(self._raw), other.rigorous_error),
        )
        err = _udiv(num, _dn(_float_lo(other._raw) * b_lo))
        err = _uadd(err, _umul(_rnd_arith(p), _float_hi(raw)))
        return Apfloat._make(raw, p, err)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other.__truediv__(self)

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Apfloat(1, self.precision_bits)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    # -- transcendental -----------------------------------------------------

    def exp(self) -> "Apfloat":
        p = self.precision_bits
        raw = mpf_exp(self._raw, p, "n")
        mag = _float_hi(raw)
        err = _umul(_umul(mag, 1.0 + 2.0 ** (4 - p)), _uexpm1(self.rigorous_error))
        err = _uadd(err, _umul(_rnd_trans(p), mag))
        return Apfloat._make(raw, p, err)

    def log(self) -> "Apfloat":
        p = self.precision_bits
        if mpf_cmp(self._raw, fzero) <= 0:
            raise ValueError("log of a nonpositive enclosure")
        x_lo = _dn(_float_lo(self._raw) - self.rigorous_error)
        if not x_lo > 0.0:
            raise ValueError("log argument enclosure touches zero")
        raw = mpf_log(self._raw, p, "n")
        err = _udiv(self.rigorous_error, x_lo)
        err = _uadd(err, _umul(_rnd_trans(p), _float_hi(raw)))
        return Apfloat._make(raw, p, err)

    def sqrt(self) -> "Apfloat":
        p = self.precision_bits
        if mpf_cmp(self._raw, fzero) < 0:
            raise ValueError("sqrt of a negative enclosure")
        raw = mpf_sqrt(self._raw, p, "n")
        x_lo = _dn(_float_lo(self._raw) - self.rigorous_error)
        if x_lo > 0.0:
            err = _udiv(self.rigorous_error, _dn(2.0 * math.sqrt(x_lo)))
        elif self.rigorous_error == 0.0:
            err = 0.0
        else:
            # |sqrt(a) - sqrt(b)| <= sqrt(|a - b|)
            err = _up(math.sqrt(self.rigorous_error))
        err = _uadd(err, _umul(_rnd_trans(p), _float_hi(raw)))
        return Apfloat._make(raw, p, err)

    # -- comparisons (three-valued) ------------------------------------------

    def lt(self, other) -> bool | None:
        """True/False when rigorously decided, else None."""
        other = self._coerce(other)
        if self.upper() < other.lower():
            return True
        if self.lower() >= other.upper():
            return False
        return None

    def gt(self, other) -> bool | None:
        other = self._coerce(other)
        return other.lt(self)

    def is_positive(self) -> bool | None:
        if self.lower() > 0:
            return True
        if self.upper() <= 0:
            return False
        return None

    def is_negative(self) -> bool | None:
        if self.upper() < 0:
            return True
        if self.lower() >= 0:
            return False
        return None

    # -- misc ---------------------------------------------------------------

    def __float__(self):
        return float(self.value)

    def __repr__(self):
        return (
            f"Apfloat({mp.nstr(self.value, 12)}, prec={self.precision_bits}, "
            f"err<={self.rigorous_error:.3g})"
        )


def _raw_to_fraction(raw) -> Fraction:
    sign, man, exp, _ = raw
    if man == 0 and exp != 0:
        raise OverflowError("non-finite endpoint")
    v = Fraction(int(man), 1) * Fraction(2) ** exp
    return -v if sign else v


def _convert_exact(x, prec: int):
    if isinstance(x, int):
        if x.bit_length() <= prec:
            return from_int(x)  # exact
        return from_int(x, prec, "n")
    if isinstance(x, Fraction):
        return from_rational(x.numerator, x.denominator, prec, "n")
    raise TypeError(f"cannot convert {type(x)!r} exactly")


def exact(x, prec: int) -> Apfloat:
    """Enclosure of an int or Fraction.

    Exact when the value is representable at ``prec`` bits; otherwise the
    single rounding is charged to the budget.
    """
    if isinstance(x, int) and x.bit_length() <= prec:
        return Apfloat._make(from_int(x), prec, 0.0)
    return Apfloat(x, prec)


def pi(prec: int) -> Apfloat:
    raw = mpf_pi(prec, "n")
    return Apfloat._make(raw, prec, _umul(_rnd_trans(prec), _float_hi(raw)))


def sqrt_int(k: int, prec: int) -> Apfloat:
    return exact(k, prec).sqrt()


def unit_phase(t: Fraction, prec: int) -> tuple[Apfloat, Apfloat]:
    """(cos, sin) of 2*pi*t for exact rational t, as a pair of enclosures.

    The argument is reduced mod 1 exactly, so only the final trigonometric
    rounding enters the budget (bounded by 2^(4-prec) in absolute terms).
    """
    t = t % 1
    arg = from_rational(2 * t.numerator, t.denominator, prec + 16, "n")
    err = 2.0 ** (4 - prec)
    c = mpf_cos_pi(arg, prec, "n")
    s = mpf_sin_pi(arg, prec, "n")
    return Apfloat._make(c, prec, err), Apfloat._make(s, prec, err)


def resolve(builder, start_prec: int = 192, max_prec: int = 8192) -> bool:
    """Decide a three-valued comparison, doubling precision until it resolves.

    ``builder(prec)`` must return True, False, or None (undecided).
    """
    p = start_prec
    while p <= max_prec:
        verdict = builder(p)
        if verdict is not None:
            return verdict
        p *= 2
    raise PrecisionError(f"comparison undecided at {max_prec} bits")

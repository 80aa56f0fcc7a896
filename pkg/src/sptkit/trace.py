"""Numerical traces of the weight-zero form f over Heegner points.

The trace

    S(n) = sum over representatives Q of the classes of discriminant
           1 - 24n forms (level-6 family, all square divisors u with
           sign eps(u)) of f(tau_Q)

is an integer: S(n) = 12 spt(n) + (24n-1) p(n).  This module evaluates it
numerically from the cusp expansions

    f|gamma_Q(z) = zeta_Q e(-z/h_Q) + 12 mu(h_Q)
                   + sum_{m>=1} phi_{m,Q} b(m) e(m z / h_Q)

at z = tau_Q, with exact root-of-unity phase bookkeeping (all phases are
rational fractions of a turn), real Apfloat magnitudes, and a rigorous
closed-form bound for the discarded tail m > M:

    |tail| <= C * sum_{m>M} exp(4 pi sqrt(m) - m * rate),
    rate = pi sqrt(|D|) / (a_Q h_Q) >= pi/(2 sqrt(3)),

majorized geometrically once m > max(M, 192).  The coefficient bound
|b(m)| <= C exp(4 pi sqrt(m)) uses C = 8 sqrt(6) pi^(3/2) + 16 pi^2 zeta(3/2)^2.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .apfloat import Apfloat, exact, pi, sqrt_int, unit_phase
from .exactform import default_precision
from .quadforms import (
    CosetRep,
    QuadraticForm,
    anchor_forms,
    discriminant_data,
    reduced_forms,
    select_gamma,
)
from . import qseries

MIN_TRUNCATION = 193  # the tail exponent 4 pi sqrt(m) - pi m/(2 sqrt 3) decays beyond here


class ToleranceError(ArithmeticError):
    """The rigorous budget cannot meet the requested tolerance."""


class RealnessError(ArithmeticError):
    """An assembled trace kept an imaginary part above its own budget."""


@dataclass(frozen=True)
class ApComplex:
    re: Apfloat
    im: Apfloat

    def __add__(self, other: "ApComplex") -> "ApComplex":
        return ApComplex(self.re + other.re, self.im + other.im)


@dataclass(frozen=True)
class TraceResult:
    n: int
    value: Apfloat  # numeric S(n), real part of the assembled sum
    tail_bound: float  # total rigorous budget: truncation + rounding
    exact: int  # 12 spt(n) + (24n-1) p(n)
    residual: float  # |value - exact|

    @property
    def consistent(self) -> bool:
        return self.residual <= self.tail_bound


# ---------------------------------------------------------------------------
# Fourier coefficients of f, shared read-only after one build
# ---------------------------------------------------------------------------

_B_LOCK = threading.Lock()
_B_TABLE: list[int] = []


def _b_coefficients(max_m: int) -> list[int]:
    global _B_TABLE
    if max_m >= len(_B_TABLE):
        with _B_LOCK:
            if max_m >= len(_B_TABLE):
                series = qseries.f_coefficients(max_m + 2)
                _B_TABLE = [series[m] for m in range(0, max_m + 1)]
    return _B_TABLE


@mpmath.workdps(30)
def _coefficient_constant() -> float:
    """Upper bound for C = 8 sqrt(6) pi^(3/2) + 16 pi^2 zeta(3/2)^2 as a double."""
    c = 8 * mpmath.sqrt(6) * mpmath.pi ** mpmath.mpf("1.5") + 16 * mpmath.pi**2 * mpmath.zeta(
        mpmath.mpf("1.5")
    ) ** 2
    return math.nextafter(float(c), math.inf) * (1 + 2e-9)


_C_UPPER = _coefficient_constant()
_FOUR_PI_UPPER = math.nextafter(4 * math.pi, math.inf)


def _rate_lower(q_form: QuadraticForm, width: int) -> float:
    """Downward-rounded pi sqrt(|D|)/(a h), the per-index decay rate."""
    abs_d = -q_form.discriminant
    root = math.nextafter(math.sqrt(abs_d), -math.inf)
    return math.nextafter(math.nextafter(math.pi, -math.inf) * root, -math.inf) / (
        q_form.a * width
    )


def tail_bound(q_form: QuadraticForm, gamma: CosetRep, M: int) -> float:
    """Rigorous bound for the discarded cusp-expansion tail past q^M.

    Every tail term is bounded by C exp(4 pi sqrt(m) - m*rate); for
    m >= M+1 > 192 the exponent is <= -m*delta with
    delta = rate - 4 pi / sqrt(M+1) > 0, so the tail is at most
    C e^(-(M+1) delta) / (1 - e^(-delta)).  All float steps round upward.
    """
    if M < MIN_TRUNCATION:
        raise ValueError(f"truncation must be >= {MIN_TRUNCATION}")
    rate = _rate_lower(q_form, gamma.width)
    delta = math.nextafter(rate - _FOUR_PI_UPPER / math.nextafter(math.sqrt(M + 1), -math.inf), -math.inf)
    if delta <= 0:
        return math.inf
    num = math.nextafter(math.exp(math.nextafter(-(M + 1) * delta, math.inf)), math.inf)
    den = math.nextafter(1.0 - math.nextafter(math.exp(math.nextafter(-delta, math.inf)), math.inf), -math.inf)
    if den <= 0:
        return math.inf
    return math.nextafter(_C_UPPER * num / den, math.inf)


def cusp_leading_term(q_form: QuadraticForm, gamma: CosetRep, prec: int) -> ApComplex:
    """zeta_Q e(-tau_Q / h_Q): the growing exponential of one form's expansion.

    Equals zeta_Q * zeta_{2ah}^{b} * exp(pi sqrt(|D|)/(a h)); the phase is
    an exact rational turn, the magnitude a real enclosure.
    """
    a, b = q_form.a, q_form.b
    h = gamma.width
    magnitude = (pi(prec) * sqrt_int(-q_form.discriminant, prec) / (a * h)).exp()
    turns = gamma.zeta_turns + Fraction(b, 2 * a * h)
    cos_t, sin_t = unit_phase(turns, prec)
    return ApComplex(cos_t * magnitude, sin_t * magnitude)


def evaluate_f_at(q_form: QuadraticForm, gamma: CosetRep, M: int, prec: int) -> ApComplex:
    """Partial cusp expansion of f at tau_Q through q^M, tail charged to the budget.

    The form must be reduced (so Im tau_Q >= sqrt(3)/2 keeps the tail
    geometric); M must be at least 193, past the turnover of the tail
    exponent.  The returned enclosure's error budget covers both rounding
    and the discarded tail, on the real and imaginary components alike.
    """
    if M < MIN_TRUNCATION:
        raise ValueError(f"truncation must be >= {MIN_TRUNCATION}")
    if not q_form.is_reduced():
        raise ValueError("evaluate_f_at expects a reduced form")
    lead = cusp_leading_term(q_form, gamma, prec)
    a, b = q_form.a, q_form.b
    h = gamma.width
    two_ah = 2 * a * h
    rate = pi(prec) * sqrt_int(-q_form.discriminant, prec) / (a * h)
    decay = (-rate).exp()  # e(m tau/h) magnitude step per index
    btab = _b_coefficients(M)

    re = lead.re + 12 * gamma.mu
    im = lead.im
    power = exact(1, prec)
    for m in range(1, M + 1):
        power = power * decay
        coeff = btab[m]
        if coeff == 0:
            continue
        turns = gamma.phi_turns(m) - Fraction(m * b, two_ah)
        cos_t, sin_t = unit_phase(turns, prec)
        scaled = coeff * power
        re = re + cos_t * scaled
        im = im + sin_t * scaled

    tail = tail_bound(q_form, gamma, M)
    return ApComplex(
        Apfloat(re.value, re.precision_bits, re.rigorous_error + tail),
        Apfloat(im.value, im.precision_bits, im.rigorous_error + tail),
    )


def trace_S_exact(n: int) -> int:
    """The trace as an exact integer: 12 spt(n) + (24n-1) p(n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return 12 * qseries.spt(n) + (24 * n - 1) * qseries.partition_p(n)


def _class_data(n: int):
    """(eps, Q, gamma) for every class entering S(n), over all square divisors."""
    dd = discriminant_data(n)
    out = []
    for u in dd.square_divisors:
        sub_disc = dd.D // (u * u)
        for q_form in reduced_forms(sub_disc):
            out.append((dd.epsilon[u], q_form, select_gamma(q_form)))
    return dd, out


def trace_S(n: int, tolerance: float = 1e-6, prec: int | None = None) -> TraceResult:
    """Numeric S(n) with total rigorous budget at most ``tolerance``.

    Sums the cusp expansions over every class (both signs eps(u) across
    square divisors of 1-24n), doubling the truncation from 250 until the
    closed-form tail majorant fits inside tolerance/2, leaving the other
    half for rounding.  Raises ToleranceError when the budget cannot be
    met; the caller should raise prec or tolerance.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if not tolerance > 0:
        raise ValueError("tolerance must be positive")
    if prec is None:
        prec = max(192, default_precision(n) + 64)
    dd, classes = _class_data(n)

    M = 250
    while True:
        total_tail = math.fsum(tail_bound(q, g, M) for _, q, g in classes)
        if total_tail <= tolerance / 2:
            break
        M *= 2
        if M > 64000:
            raise ToleranceError(f"tail cannot meet tolerance {tolerance} at any truncation")

    total = ApComplex(exact(0, prec), exact(0, prec))
    for eps, q_form, gamma in classes:
        term = evaluate_f_at(q_form, gamma, M, prec)
        if eps == -1:
            term = ApComplex(-term.re, -term.im)
        total = total + term

    if not abs(total.im.value) <= total.im.rigorous_error:
        raise RealnessError(f"S({n}) kept an imaginary part beyond its budget")
    budget = total.re.rigorous_error
    if not budget <= tolerance:
        raise ToleranceError(
            f"S({n}) budget {budget:.3e} exceeds tolerance {tolerance:.3e}; raise prec"
        )
    exact_value = trace_S_exact(n)
    residual = abs(float(total.re.value - exact_value))
    return TraceResult(
        n=n, value=total.re, tail_bound=budget, exact=exact_value, residual=residual
    )


def main_term_anchor(n: int, prec: int | None = None) -> Apfloat:
    """Summed leading terms of the four forms with a*h = 6.

    Their phases collapse: e(1/12) * (zeta6^-1 + zeta6^-1 + 1 + 1) = 2 sqrt(3),
    so the result is a real enclosure of 2 sqrt(3) e^(lambda(n)); useful as
    a diagnostic decomposition of trace_S.
    """
    if prec is None:
        prec = max(192, default_precision(n) + 64)
    total = ApComplex(exact(0, prec), exact(0, prec))
    for q_form, gamma in anchor_forms(n):
        total = total + cusp_leading_term(q_form, gamma, prec)
    if not abs(total.im.value) <= total.im.rigorous_error:
        raise RealnessError(f"anchor terms for n={n} did not collapse to a real value")
    return total.re

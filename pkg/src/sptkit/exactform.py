"""Closed-form special functions and the truncated Rademacher machinery.

Exact Dedekind sums, the Kloosterman-type sums A_c(n) entering
Rademacher's p(n) series, the elementary closed form of the half-integral
Bessel function I_{3/2}, Lehmer's truncated expansion of p(n) with its
explicit remainder bound, and the single-term main formulas

    p(n)   = 2*sqrt(3)/(24n-1) * (1 - 1/lambda(n)) * e^lambda(n) + E_p(n),
             |E_p(n)| <= 1313 * e^(lambda(n)/2)
    spt(n) = sqrt(3)/(pi*sqrt(24n-1)) * e^lambda(n) + E_s(n),
             |E_s(n)| < 3.59e22 * 2^q(n) * (24n-1)^2 * e^(lambda(n)/2)

with lambda(n) = pi*sqrt(24n-1)/6.  All real evaluation is done through
Apfloat enclosures, so every bound can be checked rigorously.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .apfloat import Apfloat, exact, pi, unit_phase

# |E_s(n)| constant of the spt main-term bound
SPT_ERROR_CONSTANT = 359 * 10**20  # 3.59e22, exact
# |E_p(n)| constant of the p(n) main-term bound
P_ERROR_CONSTANT = 1313


class RealnessError(ArithmeticError):
    """An exponential sum that must be real came out with imaginary excess."""


def default_precision(n: int) -> int:
    """Working precision wherever e^lambda(n) appears.

    The main term carries about lambda(n)/log(2) bits before the binary
    point; 64 guard bits absorb propagation.
    """
    lam = math.pi * math.sqrt(24 * n - 1) / 6
    return max(64, int(lam / math.log(2)) + 64)


def lambda_growth(n: int, prec: int) -> Apfloat:
    """lambda(n) = pi * sqrt(24n - 1) / 6."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return pi(prec) * exact(24 * n - 1, prec).sqrt() / 6


# ---------------------------------------------------------------------------
# Dedekind and Kloosterman-type sums
# ---------------------------------------------------------------------------


def dedekind_sum(d: int, c: int) -> Fraction:
    """s(d, c) = sum_{r=1}^{c-1} r/c * (dr/c - floor(dr/c) - 1/2), exactly."""
    if c < 1:
        raise ValueError("c must be >= 1")
    if gcd(d, c) != 1:
        raise ValueError("d and c must be coprime")
    # r/c * ((dr mod c)/c - 1/2) summed: collect over 2c^2
    num = 0
    for r in range(1, c):
        num += r * (2 * (d * r % c) - c)
    return Fraction(num, 2 * c * c)


def kloosterman_A(c: int, n: int, prec: int) -> Apfloat:
    """A_c(n) = sum over d mod c, gcd(d,c)=1, of e^(pi i s(d,c)) e^(-2 pi i d n / c).

    The sum is real; its imaginary part is asserted to vanish within the
    accumulated error budget, and the trivial bound |A_c(n)| < c is
    asserted as well.  Each phase is an exact rational multiple of pi, so
    only trigonometric rounding enters the budget.
    """
    if c < 1:
        raise ValueError("c must be >= 1")
    if n < 1:
        raise ValueError("n must be >= 1")
    re = exact(0, prec)
    im = exact(0, prec)
    for d in range(c):
        if gcd(d, c) != 1:
            continue
        # full turns: s(d,c)/2 - d*n/c
        turns = dedekind_sum(d, c) / 2 - Fraction(d * n, c)
        cos_t, sin_t = unit_phase(turns, prec)
        re = re + cos_t
        im = im + sin_t
    if not abs(im.value) <= im.rigorous_error:
        raise RealnessError(f"A_{c}({n}) has non-vanishing imaginary part {im!r}")
    # trivial bound: |A_c(n)| <= c, with equality only in the single-term c=1 sum
    if (abs(re) - c).is_positive() is True:
        raise RealnessError(f"A_{c}({n}) violates the trivial bound |A_c(n)| <= c")
    return re


# ---------------------------------------------------------------------------
# half-integral Bessel function
# ---------------------------------------------------------------------------


def bessel_I_threehalf(x: Apfloat) -> Apfloat:
    """I_{3/2}(x) = sqrt(2/(pi x))/2 * ((1 - 1/x) e^x + (1 + 1/x) e^-x) for x > 0."""
    if x.is_positive() is not True:
        raise ValueError("argument must be rigorously positive")
    prec = x.precision_bits
    inv = 1 / x
    ex = x.exp()
    emx = (-x).exp()
    bracket = (1 - inv) * ex + (1 + inv) * emx
    return (2 / (pi(prec) * x)).sqrt() * bracket * Fraction(1, 2)


# ---------------------------------------------------------------------------
# Lehmer's truncated Rademacher formula for p(n)
# ---------------------------------------------------------------------------


def lehmer_remainder_bound(n: int, N: int, prec: int) -> Apfloat:
    """Bound for the tail R_2(n, N) after N terms of Rademacher's series:

    N^(-2/3) pi^2/sqrt(3) * ( N^3/(2 lambda^3) (e^(lambda/N) - e^(-lambda/N))
                              + 1/6 - N^2/lambda^2 ).
    """
    lam = lambda_growth(n, prec)
    ratio = lam / N
    bracket = (
        (ratio.exp() - (-ratio).exp()) / (ratio**3) * Fraction(1, 2)
        + Fraction(1, 6)
        - 1 / ratio**2
    )
    return pi(prec) ** 2 / (exact(3, prec).sqrt() * _cbrt_int(N * N, prec)) * bracket


def _cbrt_int(k: int, prec: int) -> Apfloat:
    """k^(1/3) for a positive integer k."""
    x = exact(k, prec)
    # cube root via exp(log/3)
    return (x.log() / 3).exp()


def rademacher_p(n: int, N: int, prec: int) -> tuple[Apfloat, Apfloat]:
    """Lehmer's N-term estimate of p(n) with its rigorous remainder bound.

    Returns (estimate, remainder_bound) where

        estimate = sqrt(12)/(24n-1) * sum_{c=1}^N A_c(n)/sqrt(c)
                   * ((1 - c/lambda) e^(lambda/c) + (1 + c/lambda) e^(-lambda/c))

    and |p(n) - estimate| <= remainder_bound + estimate.rigorous_error.
    """
    if n < 1 or N < 1:
        raise ValueError("n and N must be >= 1")
    lam = lambda_growth(n, prec)
    total = exact(0, prec)
    for c in range(1, N + 1):
        ac = kloosterman_A(c, n, prec)
        ratio = lam / c
        term = (1 - c / lam) * ratio.exp() + (1 + c / lam) * (-ratio).exp()
        total = total + ac / exact(c, prec).sqrt() * term
    estimate = exact(12, prec).sqrt() / (24 * n - 1) * total
    return estimate, lehmer_remainder_bound(n, N, prec)


# ---------------------------------------------------------------------------
# main terms with explicit error constants
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MainTermProfile:
    """Main-term data for one index n; p-part or spt-part may be absent."""

    n: int
    lambda_n: Apfloat
    p_main: Apfloat | None = None
    p_err_bound: Apfloat | None = None
    spt_main: Apfloat | None = None
    spt_err_bound: Apfloat | None = None


def p_main_term(n: int, prec: int) -> MainTermProfile:
    """p(n) = 2 sqrt(3)/(24n-1) (1 - 1/lambda) e^lambda within 1313 e^(lambda/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    lam = lambda_growth(n, prec)
    main = 2 * exact(3, prec).sqrt() / (24 * n - 1) * (1 - 1 / lam) * lam.exp()
    bound = P_ERROR_CONSTANT * (lam / 2).exp()
    return MainTermProfile(n=n, lambda_n=lam, p_main=main, p_err_bound=bound)


def spt_main_term(n: int, prec: int) -> MainTermProfile:
    """spt(n) = sqrt(3)/(pi sqrt(24n-1)) e^lambda within 3.59e22 2^q (24n-1)^2 e^(lambda/2)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    from .bounds import q_of_n  # deferred: bounds also builds on this module

    lam = lambda_growth(n, prec)
    main = exact(3, prec).sqrt() / (pi(prec) * exact(24 * n - 1, prec).sqrt()) * lam.exp()
    two_pow_q = (q_of_n(n, prec) * exact(2, prec).log()).exp()
    bound = SPT_ERROR_CONSTANT * two_pow_q * exact(24 * n - 1, prec) ** 2 * (lam / 2).exp()
    return MainTermProfile(n=n, lambda_n=lam, spt_main=main, spt_err_bound=bound)

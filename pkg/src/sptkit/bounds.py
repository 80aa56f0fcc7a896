"""Effective bounds, envelopes, and threshold solvers.

Everything here evaluates explicit formulas with rigorous enclosures and
reproduces the "a calculation shows" constants of the underlying
analysis:

    5310  smallest n past which sqrt(6)/pi sqrt(n) p(n) < spt(n) is forced
    4845  same for the upper bound spt(n) < sqrt(n) p(n)  (eps = 1 - sqrt6/pi)
    5729  B_1(1): the (1 -+ 1/n) squeeze on the spt main term
    4698  M_0: where the relative-error envelope M(n) drops below 1
    6553  where the log-concavity defect spt_2(n) clears 1/(24n)^(3/2)
    6445  where spt_2(n) falls under 2/n^(3/2)
    6244  where the pair-window gap function turns positive
    7211  where the correction 5/(3n^(5/2)) - 1/(2n^2) + 2M + g + g is negative

Threshold scans are exhaustive over the window (no monotonicity is
assumed), every comparison is decided by disjoint enclosures with
precision escalation, and upper/lower bounds are rounded outward.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .apfloat import Apfloat, exact, pi, resolve
from .exactform import SPT_ERROR_CONSTANT, P_ERROR_CONSTANT, lambda_growth
from . import qseries

SCAN_CEILING = 10_000

# decimal constant in the prime-divisor exponent, kept exact
_Q_SHIFT = Fraction(11714, 10000)


class EnvelopeError(ArithmeticError):
    """The error envelope M(n) is not below 1, so g(n) cannot be formed."""


@dataclass(frozen=True)
class ThresholdRecord:
    """Outcome of one exhaustive threshold scan.

    The predicate held on [verified_threshold, scan_ceiling] and failed at
    verified_threshold - 1 whenever that point was scanned.  A claimed
    threshold of 0 means no reference constant exists for this predicate.
    """

    predicate_name: str
    claimed_threshold: int
    verified_threshold: int
    scan_floor: int
    scan_ceiling: int

    @property
    def matches_claim(self) -> bool:
        return self.claimed_threshold == self.verified_threshold


@dataclass(frozen=True)
class BoundsProfile:
    """All envelope quantities for one n (None where not formable)."""

    n: int
    lambda_n: Apfloat
    q: Apfloat
    M: Apfloat
    g: Apfloat | None
    F_lower: Apfloat | None
    F_upper: Apfloat | None
    spt2_lower: Apfloat | None
    spt2_upper: Apfloat | None


# ---------------------------------------------------------------------------
# scalar building blocks (cached per (n, prec): the scans hammer these)
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def q_of_n(n: int, prec: int = 192) -> Apfloat:
    """q(n) = log(24n-1) / |log(log(24n-1)) - 1.1714|.

    Dominates the number of prime divisors of 24n-1.  The denominator is
    asserted to stay away from zero (no integer n lands near the singular
    point 24n-1 = e^(e^1.1714) ~ 25.2, whose closest integer candidates
    are 24*1-1 = 23 and 24*2-1 = 47).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    big_l = exact(24 * n - 1, prec).log()
    denom = abs(big_l.log() - _Q_SHIFT)
    if denom.is_positive() is not True:
        raise ArithmeticError(f"q(n) denominator not separated from zero at n={n}")
    return big_l / denom


@functools.lru_cache(maxsize=None)
def _two_pow_q(n: int, prec: int) -> Apfloat:
    return (q_of_n(n, prec) * exact(2, prec).log()).exp()


def class_number_bound(n: int, prec: int = 192) -> Apfloat:
    """sqrt(3) * 2^q(n) * (24n-1)^2, dominating the Hurwitz class number H(1-24n)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return exact(3, prec).sqrt() * _two_pow_q(n, prec) * exact(24 * n - 1, prec) ** 2


@functools.lru_cache(maxsize=None)
def M_envelope(n: int, prec: int = 192) -> Apfloat:
    """M(n) = 2 sqrt(3) * 3.59e22 * lambda(n) * 2^q(n) * (24n-1)^2 * e^(-lambda(n)/2).

    Dominates the relative error |spt(n) - f(n)| / f(n) of the spt main
    term f(n); below 1 only for n >= 4698.
    """
    lam = lambda_growth(n, prec)
    return (
        2
        * exact(3, prec).sqrt()
        * SPT_ERROR_CONSTANT
        * lam
        * _two_pow_q(n, prec)
        * exact(24 * n - 1, prec) ** 2
        * (-(lam / 2)).exp()
    )


@functools.lru_cache(maxsize=None)
def g_correction(n: int, prec: int = 192) -> Apfloat:
    """g(n) = M(n)/(1 - M(n)); requires a rigorous M(n) < 1."""
    m = M_envelope(n, prec)
    if m.lt(1) is not True:
        raise EnvelopeError(f"M({n}) is not rigorously below 1")
    return m / (1 - m)


def _m_formable(n: int, prec: int) -> bool:
    return M_envelope(n, prec).lt(1) is True


def spt2(n: int, prec: int | None = None) -> Apfloat:
    """spt_2(n) = 2 log spt(n) - log spt(n+1) - log spt(n-1), from exact values."""
    if n < 2:
        raise ValueError("n must be >= 2")
    if prec is None:
        prec = 192
    vals = qseries.spt_values(n + 1)
    a = exact(vals[n], prec).log()
    b = exact(vals[n + 1], prec).log()
    c = exact(vals[n - 1], prec).log()
    return 2 * a - b - c


def F_envelope(n: int, prec: int = 192) -> tuple[Apfloat, Apfloat]:
    """Second-difference envelope of log f(n) for the spt main term f:

        24 pi/(24(n+1)-1)^(3/2) - 1/n^2  <  F(n)  <
        24 pi/(24(n-1)-1)^(3/2) - 288/(24(n+1)-1)^2      (n >= 4).
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    p = pi(prec)
    lower = 24 * p / _pow32(24 * (n + 1) - 1, prec) - Fraction(1, n * n)
    upper = 24 * p / _pow32(24 * (n - 1) - 1, prec) - Fraction(288, (24 * (n + 1) - 1) ** 2)
    return lower, upper


def _pow32(k: int, prec: int) -> Apfloat:
    """k^(3/2) for a positive integer."""
    return exact(k * k * k, prec).sqrt()


def _pow52(k: int, prec: int) -> Apfloat:
    return exact(k**5, prec).sqrt()


def pds_envelope(n: int, prec: int = 192) -> tuple[Apfloat, Apfloat, Apfloat, Apfloat]:
    """(F_lower, F_upper, spt2_lower, spt2_upper) for n >= 4.

    The spt_2 envelopes combine the F envelopes with the log-ratio
    corrections -2g(n) - M(n+1) - M(n-1) and +2M(n) + g(n+1) + g(n-1);
    they require M < 1 at n-1, n, n+1 and raise EnvelopeError otherwise.
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    f_lo, f_hi = F_envelope(n, prec)
    for k in (n - 1, n, n + 1):
        if not _m_formable(k, prec):
            raise EnvelopeError(f"M({k}) is not rigorously below 1")
    spt2_lo = f_lo - 2 * g_correction(n, prec) - M_envelope(n + 1, prec) - M_envelope(n - 1, prec)
    spt2_hi = f_hi + 2 * M_envelope(n, prec) + g_correction(n + 1, prec) + g_correction(n - 1, prec)
    return f_lo, f_hi, spt2_lo, spt2_hi


def bounds_profile(n: int, prec: int = 192) -> BoundsProfile:
    """Assemble every formable envelope quantity for one n."""
    lam = lambda_growth(n, prec)
    q = q_of_n(n, prec)
    m = M_envelope(n, prec)
    g = f_lo = f_hi = s_lo = s_hi = None
    if _m_formable(n, prec):
        g = g_correction(n, prec)
    if n >= 2:
        f_lo, f_hi = F_envelope(n, prec)
    if n >= 4:
        try:
            _, _, s_lo, s_hi = pds_envelope(n, prec)
        except EnvelopeError:
            pass
    return BoundsProfile(
        n=n, lambda_n=lam, q=q, M=m, g=g,
        F_lower=f_lo, F_upper=f_hi, spt2_lower=s_lo, spt2_upper=s_hi,
    )


# ---------------------------------------------------------------------------
# the c1..c6 machinery
# ---------------------------------------------------------------------------


def chen1_epsilon(prec: int) -> Apfloat:
    """eps = 1 - sqrt(6)/pi, the choice that turns the refined upper bound
    (sqrt(6)/pi + eps) sqrt(n) p(n) into sqrt(n) p(n)."""
    return 1 - exact(6, prec).sqrt() / pi(prec)


def c_functions(n: int, epsilon, prec: int = 192) -> tuple[Apfloat, ...]:
    """The six comparison functions (c1, ..., c6) at index n and margin epsilon.

    With alpha(n) = sqrt(3)/(pi sqrt(24n-1)),
         beta(n)  = 2 sqrt(3)/(24n-1) * (1 - 6/(pi sqrt(24n-1))),
         gamma(n) = sqrt(6)/pi * sqrt(n),
         gamma(n, eps) = (sqrt(6)/pi + eps) sqrt(n):

        c1 = alpha - beta*gamma                  (positive for all n >= 1)
        c2 = 1313*gamma     + 3.59e22 2^q (24n-1)^2
        c3 = c2/c1
        c4 = beta*gamma_eps - alpha              (positive past N1(eps))
        c5 = 1313*gamma_eps + 3.59e22 2^q (24n-1)^2
        c6 = c5/c4

    Raises EnvelopeError when c4 is not rigorously positive.
    """
    c1, c2, c3 = _c_lower(n, prec)
    c4, c5, c6 = _c_upper(n, epsilon, prec)
    return c1, c2, c3, c4, c5, c6


def _ingredients(n: int, prec: int):
    root = exact(24 * n - 1, prec).sqrt()
    alpha = exact(3, prec).sqrt() / (pi(prec) * root)
    beta = 2 * exact(3, prec).sqrt() / (24 * n - 1) * (1 - 6 / (pi(prec) * root))
    big = SPT_ERROR_CONSTANT * _two_pow_q(n, prec) * exact(24 * n - 1, prec) ** 2
    return alpha, beta, big


def _c_lower(n: int, prec: int):
    if n < 1:
        raise ValueError("n must be >= 1")
    alpha, beta, big = _ingredients(n, prec)
    gamma = exact(6, prec).sqrt() / pi(prec) * exact(n, prec).sqrt()
    c1 = alpha - beta * gamma
    if c1.is_positive() is not True:
        raise ArithmeticError(f"c1({n}) not rigorously positive")
    c2 = P_ERROR_CONSTANT * gamma + big
    return c1, c2, c2 / c1


def _c_upper(n: int, epsilon, prec: int):
    if n < 1:
        raise ValueError("n must be >= 1")
    if not isinstance(epsilon, Apfloat):
        epsilon = exact(epsilon, prec)
    alpha, beta, big = _ingredients(n, prec)
    gamma_eps = (exact(6, prec).sqrt() / pi(prec) + epsilon) * exact(n, prec).sqrt()
    c4 = beta * gamma_eps - alpha
    if c4.is_positive() is not True:
        raise EnvelopeError(f"c4({n}, eps) not rigorously positive")
    c5 = P_ERROR_CONSTANT * gamma_eps + big
    return c4, c5, c5 / c4


# ---------------------------------------------------------------------------
# threshold solver
# ---------------------------------------------------------------------------


def find_threshold(
    predicate: Callable[[int], bool],
    lo: int,
    hi: int,
    name: str = "",
    claimed: int = 0,
) -> ThresholdRecord:
    """Smallest n* in [lo, hi] with predicate true on all of [n*, hi].

    Full scan, no bisection shortcuts: several predicates mix increasing
    and decreasing factors, so monotonicity is observed, not assumed.
    Raises if the predicate never stabilizes inside the window.
    """
    if lo > hi:
        raise ValueError("empty scan window")
    last_fail = None
    for n in range(lo, hi + 1):
        if not predicate(n):
            last_fail = n
    if last_fail == hi:
        raise ArithmeticError(f"predicate {name!r} never stabilizes in [{lo}, {hi}]")
    verified = lo if last_fail is None else last_fail + 1
    return ThresholdRecord(
        predicate_name=name,
        claimed_threshold=claimed,
        verified_threshold=verified,
        scan_floor=lo,
        scan_ceiling=hi,
    )


def _decided(builder) -> bool:
    """Evaluate a three-valued comparison with precision escalation."""
    return resolve(builder, start_prec=192)


# -- the named predicates ----------------------------------------------------


def _pred_chen1_lower(n: int) -> bool:
    """(lower route) n > [ (12/pi log c3(n))^2 + 1 ] / 24."""

    def attempt(prec: int):
        c3 = _c_lower(n, prec)[2]
        rhs = ((12 / pi(prec) * c3.log()) ** 2 + 1) / 24
        return rhs.lt(n)

    return _decided(attempt)


def _pred_chen1_upper(n: int) -> bool:
    """(upper route, eps = 1 - sqrt6/pi) n > [ (12/pi log c6)^2 + 1 ] / 24."""

    def attempt(prec: int):
        try:
            c6 = _c_upper(n, chen1_epsilon(prec), prec)[2]
        except EnvelopeError:
            return False
        rhs = ((12 / pi(prec) * c6.log()) ** 2 + 1) / 24
        return rhs.lt(n)

    return _decided(attempt)


def _pred_c4_positive(n: int) -> bool:
    def attempt(prec: int):
        try:
            _c_upper(n, chen1_epsilon(prec), prec)
        except EnvelopeError:
            return False
        return True

    return attempt(192)


def _pred_bk(n: int, alpha: int, k: int) -> bool:
    """3.59e22 2^q (24n-1)^2 e^(lambda/2) < sqrt(3)/(pi sqrt(24n-1)) e^lambda / (alpha n^k)."""

    def attempt(prec: int):
        lam = lambda_growth(n, prec)
        lhs = SPT_ERROR_CONSTANT * _two_pow_q(n, prec) * exact(24 * n - 1, prec) ** 2 * (lam / 2).exp()
        rhs = (
            exact(3, prec).sqrt()
            / (pi(prec) * exact(24 * n - 1, prec).sqrt())
            * lam.exp()
            / (alpha * n**k)
        )
        return lhs.lt(rhs)

    return _decided(attempt)


def _pred_m_below_one(n: int) -> bool:
    """2 sqrt3 * 3.59e22 * lambda * 2^q * (24n-1)^2 < e^(lambda/2), i.e. M(n) < 1."""

    def attempt(prec: int):
        return M_envelope(n, prec).lt(1)

    return _decided(attempt)


def _pred_spt2_lower_positive(n: int) -> bool:
    """spt2_lower(n) > 1/(24n)^(3/2)."""

    def attempt(prec: int):
        try:
            _, _, lo, _ = pds_envelope(n, prec)
        except (EnvelopeError, ValueError):
            return False
        return (1 / _pow32(24 * n, prec)).lt(lo)

    return _decided(attempt)


def _pred_spt2_upper_small(n: int) -> bool:
    """spt2_upper(n) < 2/n^(3/2)."""

    def attempt(prec: int):
        try:
            _, _, _, hi = pds_envelope(n, prec)
        except (EnvelopeError, ValueError):
            return False
        return hi.lt(2 / _pow32(n, prec))

    return _decided(attempt)


def pair_gap_lower(m: int, prec: int = 192) -> Apfloat:
    """Lower bound for 2 log spt(m+1) - log spt(36) - log spt(36+2m):

        2 log( sqrt(6(m+1)) / (2 pi^2 (m+1) e^(1/(6(m+1)))) ) + 4 sqrt(m+1)
        - log 90000 - log sqrt(36+2m) - pi sqrt(2(36+2m))/sqrt(3)

    built from the elementary p(n) squeeze, spt(n) > sqrt(6)/pi sqrt(n) p(n),
    spt(n) < sqrt(n) e^(pi sqrt(2n/3)), and spt(36) < 90000.
    """
    if m < 4:
        raise ValueError("m must be >= 4")
    num = exact(6 * (m + 1), prec).sqrt()
    den = 2 * pi(prec) ** 2 * (m + 1) * exact(Fraction(1, 6 * (m + 1)), prec).exp()
    return (
        2 * (num / den).log()
        + 4 * exact(m + 1, prec).sqrt()
        - exact(90000, prec).log()
        - exact(36 + 2 * m, prec).sqrt().log()
        - pi(prec) * exact(2 * (36 + 2 * m), prec).sqrt() / exact(3, prec).sqrt()
    )


def _pred_pair_gap_positive(m: int) -> bool:
    def attempt(prec: int):
        return pair_gap_lower(m, prec).is_positive()

    return _decided(attempt)


def _pred_correction_negative(n: int) -> bool:
    """5/(3 n^(5/2)) - 1/(2 n^2) + 2 M(n) + g(n+1) + g(n-1) < 0."""

    def attempt(prec: int):
        for k in (n - 1, n, n + 1):
            if not _m_formable(k, prec):
                return False
        val = (
            Fraction(5, 3) / _pow52(n, prec)
            - Fraction(1, 2 * n * n)
            + 2 * M_envelope(n, prec)
            + g_correction(n + 1, prec)
            + g_correction(n - 1, prec)
        )
        return val.is_negative()

    return _decided(attempt)


@functools.lru_cache(maxsize=None)
def theorem_bounds_Bk(alpha: int, k: int, ceiling: int = SCAN_CEILING) -> ThresholdRecord:
    """Smallest verified B_k(alpha) for the (1 -+ 1/(alpha n^k)) squeeze on spt."""
    if alpha < 1 or k < 1:
        raise ValueError("alpha and k must be >= 1")
    claimed = 5729 if (alpha, k) == (1, 1) else 0
    return find_threshold(
        lambda n: _pred_bk(n, alpha, k), 1, ceiling,
        name=f"main_term_squeeze_B{k}({alpha})", claimed=claimed,
    )


_THRESHOLD_BUILDERS: dict[str, tuple[Callable[[int], bool], int, int]] = {
    # name: (predicate, scan floor, claimed constant)
    "chen1_lower": (_pred_chen1_lower, 1, 5310),
    "chen1_upper": (_pred_chen1_upper, 1, 4845),
    "c4_positive": (_pred_c4_positive, 1, 4),
    "squeeze_B1_1": (lambda n: _pred_bk(n, 1, 1), 1, 5729),
    "M_below_one": (_pred_m_below_one, 1, 4698),
    "spt2_lower_positive": (_pred_spt2_lower_positive, 2, 6553),
    "spt2_upper_small": (_pred_spt2_upper_small, 2, 6445),
    "pair_gap_positive": (_pred_pair_gap_positive, 4, 6244),
    "correction_negative": (_pred_correction_negative, 2, 7211),
}

THRESHOLD_NAMES = tuple(_THRESHOLD_BUILDERS)


@functools.lru_cache(maxsize=None)
def threshold_record(name: str, ceiling: int = SCAN_CEILING) -> ThresholdRecord:
    """Reproduce one named analytic constant by exhaustive rigorous scan."""
    try:
        predicate, floor, claimed = _THRESHOLD_BUILDERS[name]
    except KeyError:
        raise ValueError(f"unknown threshold {name!r}; known: {THRESHOLD_NAMES}") from None
    return find_threshold(predicate, floor, ceiling, name=name, claimed=claimed)

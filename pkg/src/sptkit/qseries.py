"""Exact truncated power series over arbitrary-precision integers.

Provides the generating-function machinery behind the package: Euler's
product (q;q)_inf, the Eisenstein series E4, the partition numbers p(n),
the smallest-parts counts spt(n), and the integer Fourier coefficients
b(m) of the weight-zero form

    f(z) = (E4(z) - 4 E4(2z) - 9 E4(3z) + 36 E4(6z))
           / (24 (eta(z) eta(2z) eta(3z) eta(6z))^2)
         = q^-1 + 12 + 77 q + 376 q^2 + ...

All coefficients are exact Python integers.  spt values are computed from
the generating function

    sum_{n>=1} spt(n) q^n = sum_{n>=1} q^n / (1-q^n)^2 * prod_{k>n} 1/(1-q^k),

summand by summand, each summand truncated to the requested order.  A
module-level cache makes range scans cost a single series build.
"""

from __future__ import annotations

import threading



class IntegerSeries:
    """Truncated q-expansion with exact integer coefficients.

    ``coeffs[i]`` is the coefficient of ``q**(leading_exponent + i)``;
    everything below the leading exponent is an exact zero, everything at
    or above ``truncation_exponent`` is unknown.  Arithmetic never extends
    a result past what the inputs determine.
    """

    __slots__ = ("coeffs", "leading_exponent")

    def __init__(self, coeffs, leading_exponent: int = 0):
        self.coeffs = list(coeffs)
        self.leading_exponent = leading_exponent
        if not self.coeffs:
            raise ValueError("series needs at least one stored coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @property
    def truncation_exponent(self) -> int:
        """First q-power whose coefficient is not determined."""
        return self.leading_exponent + len(self.coeffs)

    def __getitem__(self, m: int) -> int:
        """Coefficient of q^m (absolute exponent)."""
        if m >= self.truncation_exponent:
            raise IndexError(f"coefficient of q^{m} lies beyond the truncation order")
        if m < self.leading_exponent:
            return 0
        return self.coeffs[m - self.leading_exponent]

    def __eq__(self, other):
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        return (
            self.leading_exponent == other.leading_exponent and self.coeffs == other.coeffs
        )

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:8])
        tail = ", ..." if len(self.coeffs) > 8 else ""
        return f"IntegerSeries(q^{self.leading_exponent} * [{head}{tail}], order={self.order})"

    # -- ring operations ----------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        lead = min(self.leading_exponent, other.leading_exponent)
        trunc = min(self.truncation_exponent, other.truncation_exponent)
        if trunc <= lead:
            raise ValueError("truncation windows do not overlap")
        out = [0] * (trunc - lead)
        for src in (self, other):
            off = src.leading_exponent - lead
            for i, c in enumerate(src.coeffs):
                j = off + i
                if j >= len(out):
                    break
                out[j] += c
        return IntegerSeries(out, lead)

    def __neg__(self):
        return IntegerSeries([-c for c in self.coeffs], self.leading_exponent)

    def __sub__(self, other):
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, IntegerSeries):
            return NotImplemented
        n = min(self.order, other.order)
        out = [0] * n
        b = other.coeffs
        for i, c in enumerate(self.coeffs):
            if i >= n:
                break
            if not c:
                continue
            for j in range(min(len(b), n - i)):
                if b[j]:
                    out[i + j] += c * b[j]
        return IntegerSeries(out, self.leading_exponent + other.leading_exponent)

    __rmul__ = __mul__

    def scale(self, c: int):
        return IntegerSeries([c * x for x in self.coeffs], self.leading_exponent)

    def divexact(self, d: int):
        """Divide every coefficient by d, failing loudly on any remainder."""
        out = []
        for i, c in enumerate(self.coeffs):
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError(
                    f"coefficient {c} of q^{self.leading_exponent + i} not divisible by {d}"
                )
            out.append(q)
        return IntegerSeries(out, self.leading_exponent)

    def shift(self, k: int):
        """Exact multiplication by q^k."""
        return IntegerSeries(self.coeffs, self.leading_exponent + k)

    def dilate(self, k: int):
        """Substitute q -> q^k (k >= 1)."""
        if k < 1:
            raise ValueError("dilation factor must be >= 1")
        if k == 1:
            return IntegerSeries(self.coeffs, self.leading_exponent)
        out = [0] * (k * (self.order - 1) + 1)
        for i, c in enumerate(self.coeffs):
            out[k * i] = c
        return IntegerSeries(out, k * self.leading_exponent)

    def invert(self):
        """Multiplicative inverse; the leading stored coefficient must be +-1."""
        a = self.coeffs
        a0 = a[0]
        if a0 not in (1, -1):
            raise ValueError("inversion requires leading coefficient +-1")
        n = len(a)
        support = [j for j in range(1, n) if a[j]]
        out = [0] * n
        out[0] = a0
        for m in range(1, n):
            acc = 0
            for j in support:
                if j > m:
                    break
                acc += a[j] * out[m - j]
            out[m] = -a0 * acc
        return IntegerSeries(out, -self.leading_exponent)


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------


def eta_series(order: int) -> IntegerSeries:
    """prod_{n>=1} (1 - q^n) truncated to ``order`` coefficients.

    Expanded through Euler's pentagonal number theorem: the coefficient of
    q^g is (-1)^k when g = k(3k -+ 1)/2 and zero otherwise.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    c = [0] * order
    c[0] = 1
    k = 1
    while k * (3 * k - 1) // 2 < order:
        s = -1 if k % 2 else 1
        g = k * (3 * k - 1) // 2
        c[g] = s
        g = k * (3 * k + 1) // 2
        if g < order:
            c[g] = s
        k += 1
    return IntegerSeries(c)


def eisenstein_E4(order: int) -> IntegerSeries:
    """E4 = 1 + 240 sum_{n>=1} sigma_3(n) q^n, truncated."""
    if order < 1:
        raise ValueError("order must be >= 1")
    sigma3 = [0] * order
    for d in range(1, order):
        cube = d * d * d
        for m in range(d, order, d):
            sigma3[m] += cube
    return IntegerSeries([1] + [240 * s for s in sigma3[1:]])


def _extend_partitions(values: list[int], limit: int) -> None:
    """Grow the p(n) table through Euler's pentagonal recurrence."""
    for m in range(len(values), limit + 1):
        acc = 0
        k = 1
        while True:
            g = k * (3 * k - 1) // 2
            if g > m:
                break
            s = -1 if k % 2 == 0 else 1
            acc += s * values[m - g]
            g = k * (3 * k + 1) // 2
            if g <= m:
                acc += s * values[m - g]
            k += 1
        values.append(acc)


class PartitionCache:
    """Monotonically growing p(n) table; one writer, any number of readers.

    A process-wide instance backs :func:`partition_p`; callers wanting
    isolation can instantiate their own.
    """

    def __init__(self):
        self._values = [1]
        self._lock = threading.Lock()

    def ensure(self, limit: int) -> list[int]:
        if limit >= len(self._values):
            with self._lock:
                if limit >= len(self._values):
                    _extend_partitions(self._values, limit)
        return self._values


_P_CACHE = PartitionCache()


def partition_p(n: int) -> int:
    """Exact partition number p(n); p(0) = 1."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _P_CACHE.ensure(n)[n]


def partition_values(limit: int) -> list[int]:
    """p(0..limit) as a fresh list (one recurrence pass, then cached)."""
    return list(_P_CACHE.ensure(limit)[: limit + 1])


def _inverse_eta_coeffs(order: int) -> list[int]:
    """Coefficients of 1/prod(1-q^k): the partition numbers."""
    return list(_P_CACHE.ensure(order - 1)[:order])


def spt_series(order: int) -> IntegerSeries:
    """Smallest-parts generating function, truncated to ``order``.

    Sums q^n/(1-q^n)^2 * prod_{k>n} 1/(1-q^k) over n = 1, 2, ... with every
    summand truncated to ``order``; the suffix product is maintained
    incrementally by one binomial multiplication per step.  The loop stops
    once q^n clears the truncation order.  Coefficient of q^0 is 0.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    n_terms = order
    acc = [0] * n_terms
    suffix = _inverse_eta_coeffs(n_terms)  # prod_{k>n} 1/(1-q^k), currently n=0
    for n in range(1, n_terms):
        # advance the suffix product: multiply by (1 - q^n)
        for i in range(n_terms - 1, n - 1, -1):
            suffix[i] -= suffix[i - n]
        # summand: q^n * suffix / (1-q^n)^2, truncated
        t = [0] * n + suffix[: n_terms - n]
        for i in range(2 * n, n_terms):
            t[i] += t[i - n]
        for i in range(2 * n, n_terms):
            t[i] += t[i - n]
        for i in range(n, n_terms):
            acc[i] += t[i]
    return IntegerSeries(acc)


class SptCache:
    """spt(n) table backed by one series build, monotonically extendable.

    Extension rebuilds at a doubled order so repeated small extensions
    stay amortized; a process-wide instance backs :func:`spt`.
    """

    def __init__(self):
        self._values: list[int] = [0]
        self._lock = threading.Lock()

    def ensure(self, limit: int) -> list[int]:
        if limit >= len(self._values):
            with self._lock:
                if limit >= len(self._values):
                    target = max(limit + 1, 2 * len(self._values))
                    self._values = spt_series(target).coeffs
        return self._values


_SPT_CACHE = SptCache()


def spt(n: int) -> int:
    """Exact smallest-parts count spt(n) for n >= 1."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _SPT_CACHE.ensure(n)[n]


def spt_values(limit: int) -> list[int]:
    """[0, spt(1), ..., spt(limit)] as a fresh list."""
    return list(_SPT_CACHE.ensure(limit)[: limit + 1])


def f_coefficients(order: int) -> IntegerSeries:
    """Integer Fourier coefficients of the weight-zero form f.

    Returns a series with leading exponent -1 holding b(-1) = 1, b(0) = 12,
    b(1) = 77, ...  The eta-quotient denominator contributes exactly q^1
    (the four eta prefactors q^(1/24), q^(2/24), q^(3/24), q^(6/24) square
    to q), which is folded into the leading exponent; the division by 24
    must leave no remainder at any retained index and fails loudly if it
    does.
    """
    if order < 2:
        raise ValueError("order must be >= 2")
    base = order  # coefficients of q^0 .. q^(order-1) of the unit-series quotient
    e4 = eisenstein_E4(base)
    numerator = (
        e4
        + e4.dilate(2).scale(-4)
        + e4.dilate(3).scale(-9)
        + e4.dilate(6).scale(36)
    )
    eta = eta_series(base)
    eta_product = eta * eta.dilate(2) * eta.dilate(3) * eta.dilate(6)
    denominator_unit = eta_product * eta_product
    quotient = numerator * denominator_unit.invert()
    return quotient.divexact(24).shift(-1)

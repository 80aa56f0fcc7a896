"""Independent brute-force oracles used to pin expected values.

Everything here recomputes quantities from first principles (partition
enumeration, naive polynomial products, ascending series), deliberately
avoiding the package's own algorithms.
"""

from fractions import Fraction

import mpmath


def partitions(n, max_part=None):
    """Yield the partitions of n as non-increasing tuples."""
    if max_part is None:
        max_part = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def brute_p(n):
    return sum(1 for _ in partitions(n))


def brute_spt(n):
    """Total multiplicity of the smallest part across all partitions of n."""
    total = 0
    for part in partitions(n):
        smallest = part[-1]
        total += sum(1 for x in part if x == smallest)
    return total


def poly_mul_trunc(a, b, order):
    out = [0] * order
    for i, x in enumerate(a[:order]):
        if x:
            for j, y in enumerate(b[: order - i]):
                if y:
                    out[i + j] += x * y
    return out


def brute_euler_product(order):
    """prod_{k=1}^{order-1} (1 - q^k) truncated, by naive polynomial products."""
    out = [0] * order
    out[0] = 1
    for k in range(1, order):
        factor = [0] * order
        factor[0] = 1
        if k < order:
            factor[k] = -1
        out = poly_mul_trunc(out, factor, order)
    return out


def brute_sigma3(n):
    return sum(d**3 for d in range(1, n + 1) if n % d == 0)


def bessel_I32_series(x, dps=60, terms=200):
    """Ascending series I_{3/2}(x) = sum (x/2)^(2k+3/2) / (k! Gamma(k+5/2))."""
    with mpmath.workdps(dps):
        x = mpmath.mpf(x)
        acc = mpmath.mpf(0)
        for k in range(terms):
            acc += (x / 2) ** (2 * k + mpmath.mpf(3) / 2) / (
                mpmath.factorial(k) * mpmath.gamma(k + mpmath.mpf(5) / 2)
            )
        return acc


def dedekind_reciprocity_rhs(d, c):
    """-1/4 + (d/c + c/d + 1/(d c)) / 12."""
    return Fraction(-1, 4) + (Fraction(d, c) + Fraction(c, d) + Fraction(1, d * c)) / 12


S_GEN = ((0, -1), (1, 0))
T_GEN = ((1, 1), (0, 1))
T_INV = ((1, -1), (0, 1))


def sl2_orbit(act, form, depth):
    """Forms reachable from ``form`` by generator words of length <= depth."""
    seen = {(form.a, form.b, form.c)}
    frontier = [form]
    for _ in range(depth):
        nxt = []
        for f in frontier:
            for g in (S_GEN, T_GEN, T_INV):
                image = act(f, g)
                key = (image.a, image.b, image.c)
                if key not in seen:
                    seen.add(key)
                    nxt.append(image)
        frontier = nxt
    return seen

"""Integral binary quadratic forms, class numbers, and Heegner data.

Covers reduction of positive definite forms, exact class-number counts by
box enumeration, the discriminant decomposition D = d*f^2 with the
Hurwitz-Kronecker class number H(D) = sum_{u^2|D} h(D/u^2), the twelve
right-coset representatives of the index-12 subgroup Gamma_0(6) inside
SL2(Z), and the selection of the coset representative that carries a
reduced form into the level-6 family {6 | a, b = 1 mod 12}.

All arithmetic in this module is exact integer/rational work; the only
real numbers appear in Heegner points, whose imaginary part sqrt(|D|)/2a
is kept symbolic until a caller evaluates it at a chosen precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .apfloat import Apfloat, exact

Matrix = tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class QuadraticForm:
    """Positive definite form a*X^2 + b*X*Y + c*Y^2."""

    a: int
    b: int
    c: int

    def __post_init__(self):
        if self.a <= 0 or self.discriminant >= 0:
            raise ValueError(f"form [{self.a},{self.b},{self.c}] is not positive definite")

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def content(self) -> int:
        return gcd(gcd(self.a, self.b), self.c)

    def is_primitive(self) -> bool:
        return self.content == 1

    def is_reduced(self) -> bool:
        """|b| <= a <= c, with b >= 0 on either boundary."""
        a, b, c = self.a, self.b, self.c
        if not (abs(b) <= a <= c):
            return False
        if (abs(b) == a or a == c) and b < 0:
            return False
        return True


def det(sigma: Matrix) -> int:
    (p, q), (r, s) = sigma
    return p * s - q * r


def matrix_inverse(sigma: Matrix) -> Matrix:
    """Exact inverse of a determinant-1 integer matrix (adjugate)."""
    if det(sigma) != 1:
        raise ValueError("matrix must have determinant 1")
    (p, q), (r, s) = sigma
    return ((s, -q), (-r, p))


def act(q_form: QuadraticForm, sigma: Matrix) -> QuadraticForm:
    """Right action Q -> Q o sigma of a determinant-1 matrix.

    With sigma = [[alpha, beta], [gamma, delta]]:

        a' = a alpha^2 + b alpha gamma + c gamma^2
        b' = 2 a alpha beta + b (alpha delta + beta gamma) + 2 c gamma delta
        c' = a beta^2 + b beta delta + c delta^2
    """
    if det(sigma) != 1:
        raise ValueError("matrix must have determinant 1")
    (alpha, beta), (gamma, delta) = sigma
    a, b, c = q_form.a, q_form.b, q_form.c
    a2 = a * alpha * alpha + b * alpha * gamma + c * gamma * gamma
    b2 = 2 * a * alpha * beta + b * (alpha * delta + beta * gamma) + 2 * c * gamma * delta
    c2 = a * beta * beta + b * beta * delta + c * delta * delta
    return QuadraticForm(a2, b2, c2)


def reduced_forms(disc: int) -> list[QuadraticForm]:
    """All primitive reduced forms of the given negative discriminant.

    Enumerates the reduction box |b| <= a <= sqrt(|disc|/3), so the result
    is the complete duplicate-free list of SL2(Z) class representatives;
    its length is the class number h(disc).
    """
    if disc >= 0 or disc % 4 not in (0, 1):
        raise ValueError(f"{disc} is not a negative discriminant")
    forms = []
    a_max = isqrt(-disc // 3)
    for a in range(1, a_max + 1):
        for b in range(-a, a + 1):
            num = b * b - disc
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a:
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if gcd(gcd(a, b), c) != 1:
                continue
            forms.append(QuadraticForm(a, b, c))
    forms.sort(key=lambda f: (f.a, f.b, f.c))
    return forms


def class_number(disc: int) -> int:
    return len(reduced_forms(disc))


# ---------------------------------------------------------------------------
# discriminants D_n = 1 - 24n
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DiscriminantData:
    """Square decomposition and class numbers for D = 1 - 24n."""

    n: int
    D: int
    fundamental_d: int
    conductor_f: int
    square_divisors: tuple[int, ...]
    epsilon: dict[int, int]
    h_per_u: dict[int, int]
    H: int


def _factorize(m: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= m:
        while m % d == 0:
            out[d] = out.get(d, 0) + 1
            m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        out[m] = out.get(m, 0) + 1
    return out


def _divisors(m: int) -> list[int]:
    divs = [1]
    for p, e in _factorize(m).items():
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def epsilon_sign(u: int) -> int:
    """+1 when u = +-1 mod 12, else -1."""
    return 1 if u % 12 in (1, 11) else -1


def discriminant_data(n: int) -> DiscriminantData:
    """Full decomposition of D = 1 - 24n.

    The conductor is the largest f with f^2 | D and D/f^2 squarefree; as
    D = 1 mod 24 is odd and coprime to 3, every divisor u of f is coprime
    to 6 and every quotient D/u^2 is again = 1 mod 24.  H is assembled as
    the sum of the primitive class numbers h(D/u^2).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    D = 1 - 24 * n
    factors = _factorize(-D)
    conductor = 1
    for p, e in factors.items():
        conductor *= p ** (e // 2)
    fundamental = D // (conductor * conductor)
    divisors = tuple(_divisors(conductor))
    h_per_u = {}
    eps = {}
    for u in divisors:
        sub = D // (u * u)
        assert sub % 24 == 1  # every quotient discriminant is again = 1 mod 24
        h_per_u[u] = class_number(sub)
        eps[u] = epsilon_sign(u)
    return DiscriminantData(
        n=n,
        D=D,
        fundamental_d=fundamental,
        conductor_f=conductor,
        square_divisors=divisors,
        epsilon=eps,
        h_per_u=h_per_u,
        H=sum(h_per_u.values()),
    )


# ---------------------------------------------------------------------------
# coset representatives of Gamma_0(6) in SL2(Z)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CosetRep:
    """One of the 12 right-coset representatives, with its cusp data.

    ``zeta12_exponent`` e gives the constant root of unity zeta_Q = e(e/12)
    attached to the cusp expansion of f along this representative, and
    ``phi_rule`` = (mult, add) gives the m-th tail twist
    phi_m = zeta_6^(mult*m + add).
    """

    label: str  # infinity | one_third | one_half | zero
    parameter: int  # r, s, or t (0 at infinity)
    matrix: Matrix
    width: int
    mu: int  # Moebius mu(width): sign of the constant term 12*mu
    zeta12_exponent: int
    phi_rule: tuple[int, int]

    @property
    def zeta_turns(self) -> Fraction:
        """zeta_Q as a fraction of a full turn."""
        return Fraction(self.zeta12_exponent, 12)

    def phi_turns(self, m: int) -> Fraction:
        """phi_{m,Q} as a fraction of a full turn."""
        mult, add = self.phi_rule
        return Fraction((mult * m + add) % 6, 6)


def _mat_mul(x: Matrix, y: Matrix) -> Matrix:
    (a, b), (c, d) = x
    (e, f), (g, h) = y
    return ((a * e + b * g, a * f + b * h), (c * e + d * g, c * f + d * h))


def _translation(k: int) -> Matrix:
    return ((1, k), (0, 1))


def coset_reps() -> tuple[CosetRep, ...]:
    """The twelve representatives, one per cusp parameter.

    Cusps infinity, 1/3, 1/2, 0 have widths 1, 2, 3, 6.  The root-of-unity
    data follows the cusp expansions of f:

        gamma_inf:      e(-z)   + 12 + sum b(m) e(mz)
        gamma_{1/3,r}:  zeta6^(3r)    e(-z/2) - 12 + sum zeta6^(3+3m(r+1)) b(m) e(mz/2)
        gamma_{1/2,s}:  zeta6^(3-2s)  e(-z/3) - 12 + sum zeta6^(3+2ms)    b(m) e(mz/3)
        gamma_{0,t}:    zeta6^(-t)    e(-z/6) + 12 + sum zeta6^(mt)       b(m) e(mz/6)
    """
    reps = [
        CosetRep("infinity", 0, ((1, 0), (0, 1)), 1, 1, 0, (0, 0)),
    ]
    for r in (0, 1):
        reps.append(
            CosetRep(
                "one_third",
                r,
                _mat_mul(((1, 0), (3, 1)), _translation(r)),
                2,
                -1,
                (6 * r) % 12,
                ((3 * (r + 1)) % 6, 3),
            )
        )
    for s in (0, 1, 2):
        reps.append(
            CosetRep(
                "one_half",
                s,
                _mat_mul(((1, 1), (2, 3)), _translation(s)),
                3,
                -1,
                (6 - 4 * s) % 12,
                ((2 * s) % 6, 3),
            )
        )
    for t in range(6):
        reps.append(
            CosetRep(
                "zero",
                t,
                _mat_mul(((0, -1), (1, 0)), _translation(t)),
                6,
                1,
                (-2 * t) % 12,
                (t % 6, 0),
            )
        )
    return tuple(reps)


_COSET_REPS = None


def _reps() -> tuple[CosetRep, ...]:
    global _COSET_REPS
    if _COSET_REPS is None:
        _COSET_REPS = coset_reps()
    return _COSET_REPS


class BijectionError(ArithmeticError):
    """The coset-representative selection was not unique."""


def select_gamma(q_form: QuadraticForm) -> CosetRep:
    """The unique representative gamma with Q o gamma^-1 in the level-6 family.

    Tries all twelve candidates and demands exactly one hit with
    6 | a and b = 1 mod 12; zero or multiple hits mean the input violates
    the reduced/primitive/discriminant preconditions (or a bug).
    """
    if not q_form.is_primitive() or not q_form.is_reduced():
        raise ValueError("select_gamma expects a primitive reduced form")
    if q_form.discriminant % 24 != 1:
        raise ValueError("discriminant must be = 1 mod 24")
    hits = []
    for rep in _reps():
        image = act(q_form, matrix_inverse(rep.matrix))
        if image.a % 6 == 0 and image.b % 12 == 1:
            hits.append(rep)
    if len(hits) != 1:
        raise BijectionError(
            f"{len(hits)} coset representatives map {q_form} into the level-6 family"
        )
    return hits[0]


def anchor_forms(n: int) -> tuple[tuple[QuadraticForm, CosetRep], ...]:
    """The four forms with a*width = 6 and their coset representatives.

    These are [1,1,6n], [2,1,3n], [3,1,2n], [6,1,n]; their leading cusp
    terms collapse to the real main term 2*sqrt(3)*exp(lambda(n)).  For
    n >= 6 all four are reduced and represent distinct classes; below
    that they may coincide as classes, but the representative selection
    (by membership of Q o gamma^-1 in the level-6 family) is still unique
    and is asserted here.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for q_form in (
        QuadraticForm(1, 1, 6 * n),
        QuadraticForm(2, 1, 3 * n),
        QuadraticForm(3, 1, 2 * n),
        QuadraticForm(6, 1, n),
    ):
        hits = []
        for rep in _reps():
            image = act(q_form, matrix_inverse(rep.matrix))
            if image.a % 6 == 0 and image.b % 12 == 1:
                hits.append(rep)
        if len(hits) != 1:
            raise BijectionError(f"non-unique representative for anchor form {q_form}")
        out.append((q_form, hits[0]))
    return tuple(out)


@dataclass(frozen=True)
class HeegnerPoint:
    """Upper half-plane root of Q(X, 1): x + iy with x = -b/2a, y = sqrt(|D|)/2a.

    The imaginary part is stored as the exact pair (|D|, 2a); the square
    root is taken only when a caller evaluates at some precision.
    """

    real: Fraction
    abs_disc: int
    two_a: int

    def imag(self, prec: int) -> Apfloat:
        return exact(self.abs_disc, prec).sqrt() / self.two_a


def heegner_point(q_form: QuadraticForm) -> HeegnerPoint:
    return HeegnerPoint(
        real=Fraction(-q_form.b, 2 * q_form.a),
        abs_disc=-q_form.discriminant,
        two_a=2 * q_form.a,
    )

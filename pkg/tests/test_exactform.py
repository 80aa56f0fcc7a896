from fractions import Fraction
from math import gcd

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sptkit.apfloat import exact
from sptkit.exactform import (
    RealnessError,
    bessel_I_threehalf,
    dedekind_sum,
    default_precision,
    kloosterman_A,
    lambda_growth,
    p_main_term,
    rademacher_p,
    spt_main_term,
)
from sptkit.qseries import partition_p, partition_values, spt

from oracles import bessel_I32_series, dedekind_reciprocity_rhs


class TestDedekindSum:
    def test_trivial_modulus(self):
        assert dedekind_sum(1, 1) == 0

    def test_modulus_two(self):
        assert dedekind_sum(1, 2) == 0

    def test_modulus_three(self):
        assert dedekind_sum(1, 3) == Fraction(1, 18)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            dedekind_sum(2, 4)
        with pytest.raises(ValueError):
            dedekind_sum(1, 0)

    @given(st.integers(min_value=1, max_value=50), st.integers(min_value=1, max_value=50))
    @settings(max_examples=120, deadline=None)
    def test_reciprocity(self, d, c):
        # s(d,c) + s(c,d) = -1/4 + (d/c + c/d + 1/(dc))/12 for coprime d, c
        if gcd(d, c) != 1:
            return
        assert dedekind_sum(d, c) + dedekind_sum(c, d) == dedekind_reciprocity_rhs(d, c)


class TestKloosterman:
    def test_c_one_is_one(self):
        for n in (1, 5, 77):
            a = kloosterman_A(1, n, 128)
            assert float(a) == 1.0 and a.rigorous_error < 1e-30

    def test_trivial_bound_c_two(self):
        a = kloosterman_A(2, 1, 128)
        assert abs(float(a)) < 2

    def test_cyclotomic_oracle_c_six(self):
        # d in {1, 5}: s(1,6) = 5/18, s(5,6) = -5/18, phases e^(-+ pi i/18),
        # so A_6(1) = 2 cos(pi/18)
        a = kloosterman_A(6, 1, 192)
        with mpmath.workdps(50):
            ref = 2 * mpmath.cos(mpmath.pi / 18)
            assert abs(a.value - ref) <= a.rigorous_error + mpmath.mpf(10) ** -45

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            kloosterman_A(0, 1, 128)
        with pytest.raises(ValueError):
            kloosterman_A(2, 0, 128)


class TestBessel:
    def test_value_at_one(self):
        # the (1 - 1/x) factor vanishes at x = 1: I_3/2(1) = sqrt(2/pi)/e
        b = bessel_I_threehalf(exact(1, 192))
        with mpmath.workdps(50):
            ref = mpmath.sqrt(2 / mpmath.pi) * mpmath.exp(-1)
            assert abs(b.value - ref) <= b.rigorous_error + mpmath.mpf(10) ** -45

    def test_upper_bound_at_ten(self):
        b = bessel_I_threehalf(exact(10, 192))
        with mpmath.workdps(50):
            assert b.upper() < 10 ** mpmath.mpf("-0.5") * mpmath.exp(10)

    def test_against_ascending_series(self):
        b = bessel_I_threehalf(exact(5, 256))
        ref = bessel_I32_series(5, dps=60)
        assert abs(b.value - ref) < mpmath.mpf(10) ** -20

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            bessel_I_threehalf(exact(0, 128))


def _contains_p(n, N):
    prec = default_precision(n)
    estimate, remainder = rademacher_p(n, N, prec)
    slack = float(remainder.upper()) + estimate.rigorous_error
    return abs(float(estimate.value - partition_p(n))) <= slack


class TestRademacher:
    def test_smallest_case(self):
        assert _contains_p(1, 1)

    def test_n100_five_terms(self):
        assert _contains_p(100, 5)

    def test_n1000_two_terms(self):
        assert _contains_p(1000, 2)

    def test_containment_sweep(self):
        partition_values(2000)
        for n in range(1, 2001, 7):
            for N in (1, 2, 5):
                assert _contains_p(n, N), (n, N)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            rademacher_p(0, 1, 128)
        with pytest.raises(ValueError):
            rademacher_p(1, 0, 128)


class TestMainTerms:
    def test_p_containment_spots(self):
        for n in (1, 500, 5000):
            prof = p_main_term(n, default_precision(n))
            diff = abs(prof.p_main - partition_p(n))
            assert diff.lt(prof.p_err_bound) is True, n

    def test_spt_containment_spots(self):
        for n in (4, 1000):
            prof = spt_main_term(n, default_precision(n))
            diff = abs(prof.spt_main - spt(n))
            assert diff.lt(prof.spt_err_bound) is True, n

    def test_spt_bound_scale_at_one(self):
        prof = spt_main_term(1, 128)
        assert prof.spt_err_bound.gt(10**22) is True

    def test_bessenrodt_ono_squeeze(self):
        # sqrt(3)/(12n) (1 - 1/sqrt n) e^lambda < p(n) < sqrt(3)/(12n) (1 + 1/sqrt n) e^lambda
        p_vals = partition_values(5000)
        for n in range(1, 5001):
            prec = default_precision(n)
            lam = lambda_growth(n, prec)
            base = exact(3, prec).sqrt() / (12 * n) * lam.exp()
            wobble = 1 / exact(n, prec).sqrt()
            assert (base * (1 - wobble)).lt(p_vals[n]) is True, n
            assert (base * (1 + wobble)).gt(p_vals[n]) is True, n

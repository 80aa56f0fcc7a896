import math

import pytest

from sptkit.apfloat import exact
from sptkit.exactform import lambda_growth
from sptkit.qseries import partition_p, spt
from sptkit.quadforms import QuadraticForm, discriminant_data, reduced_forms, select_gamma
from sptkit.trace import (
    MIN_TRUNCATION,
    cusp_leading_term,
    evaluate_f_at,
    main_term_anchor,
    tail_bound,
    trace_S,
    trace_S_exact,
)


class TestExactTrace:
    def test_n_one(self):
        assert trace_S_exact(1) == 12 * 1 + 23 * 1 == 35

    def test_n_four(self):
        assert trace_S_exact(4) == 12 * 10 + 95 * 5 == 595

    def test_n_two(self):
        assert trace_S_exact(2) == 12 * spt(2) + 47 * partition_p(2)


class TestLeadingTerm:
    def test_modulus_at_infinity_cusp(self):
        # Q = [6,1,n] maps through the identity: |e(-tau)| = e^(pi sqrt(24n-1)/6)
        for n in (6, 20):
            q_form = QuadraticForm(6, 1, n)
            gamma = select_gamma(q_form)
            assert gamma.label == "infinity"
            lead = cusp_leading_term(q_form, gamma, 192)
            mag = (lead.re * lead.re + lead.im * lead.im).sqrt()
            ref = lambda_growth(n, 192).exp()
            assert abs(mag - ref).lt(exact(1, 192) / 10**20) is True

    def test_constant_term_signs(self):
        # widths 1 and 6 carry +12, widths 2 and 3 carry -12
        n = 8
        for form in reduced_forms(1 - 24 * n):
            gamma = select_gamma(form)
            expected = 12 if gamma.width in (1, 6) else -12
            assert 12 * gamma.mu == expected

    def test_tail_terms_under_minkowski_envelope(self):
        # every tail rate is at least pi/(2 sqrt 3), so each term is at most
        # C exp(4 pi sqrt m - pi m/(2 sqrt 3))
        n = 5
        for form in reduced_forms(1 - 24 * n):
            gamma = select_gamma(form)
            rate = math.pi * math.sqrt(24 * n - 1) / (form.a * gamma.width)
            assert rate >= math.pi / (2 * math.sqrt(3)) - 1e-12


class TestEvaluateF:
    def test_rejects_small_truncation(self):
        q_form = QuadraticForm(6, 1, 8)
        gamma = select_gamma(q_form)
        with pytest.raises(ValueError):
            evaluate_f_at(q_form, gamma, MIN_TRUNCATION - 1, 192)

    def test_rejects_non_reduced(self):
        with pytest.raises(ValueError):
            evaluate_f_at(QuadraticForm(6, 1, 2), select_gamma(QuadraticForm(6, 1, 8)), 250, 192)

    def test_tail_bound_shrinks_with_truncation(self):
        q_form = QuadraticForm(1, 1, 6 * 5)
        gamma = select_gamma(q_form)
        assert tail_bound(q_form, gamma, 500) < tail_bound(q_form, gamma, 250) < math.inf


class TestTraceNumeric:
    def test_integrality_small(self):
        for n in (1, 2, 3, 4, 7, 12):
            result = trace_S(n, tolerance=1e-6)
            assert result.exact == trace_S_exact(n)
            assert result.residual < 1e-6
            assert result.consistent

    def test_form_count_matches_class_number(self):
        from sptkit.trace import _class_data

        for n in (1, 4, 25, 49):
            dd, classes = _class_data(n)
            assert len(classes) == dd.H

    def test_imprimitive_divisor_path(self):
        # n = 24 is the first index whose discriminant 1-24n = -575 = -23*5^2
        # has a square divisor, so the signed decomposition over u in {1, 5}
        # with eps(5) = -1 genuinely enters the trace
        dd = discriminant_data(24)
        assert dd.square_divisors == (1, 5)
        assert dd.epsilon[5] == -1
        assert dd.h_per_u == {1: 18, 5: 3}
        result = trace_S(24, tolerance=1e-6)
        assert result.residual < 1e-6 and result.consistent

    def test_tolerance_validation(self):
        with pytest.raises(ValueError):
            trace_S(3, tolerance=0.0)

    def test_trace_main_term_envelope_to_50(self):
        # |S(n) - 2 sqrt3 e^lambda| < 4.30e23 * 2^q * (24n-1)^2 * e^(lambda/2)
        from sptkit.bounds import q_of_n

        prec = 256
        for n in range(1, 51):
            lam = lambda_growth(n, prec)
            main = 2 * exact(3, prec).sqrt() * lam.exp()
            gap = abs(exact(trace_S_exact(n), prec) - main)
            envelope = (
                43 * 10**22
                * (q_of_n(n, prec) * exact(2, prec).log()).exp()
                * exact(24 * n - 1, prec) ** 2
                * (lam / 2).exp()
            )
            assert gap.lt(envelope) is True, n


class TestAnchor:
    def test_matches_closed_form(self):
        for n in (1, 3, 8):
            anchor = main_term_anchor(n)
            prec = anchor.precision_bits
            ref = 2 * exact(3, prec).sqrt() * lambda_growth(n, prec).exp()
            diff = abs(anchor - ref)
            assert float(diff.value) <= diff.rigorous_error + 1e-30

    def test_trace_ratio_approaches_one(self):
        ratios = []
        for n in (5, 10, 20, 40):
            anchor = main_term_anchor(n)
            value = trace_S(n, tolerance=1e-6).value
            ratios.append(abs(float(value / anchor) - 1.0))
        assert all(r < 0.6 for r in ratios)
        assert ratios[-1] < ratios[0]
        assert ratios[-1] < 1e-3

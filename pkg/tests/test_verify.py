import math
from fractions import Fraction

import pytest

from sptkit.apfloat import exact, pi, resolve
from sptkit.qseries import spt_values
from sptkit.verify import (
    CA_TABLE,
    andrews_congruence_failures,
    chen1_holds_at,
    chen6_holds_at,
    pair_window_boundary,
    verify_conjecture,
    verify_all,
)


class TestChen1:
    def test_report_passes(self):
        report = verify_conjecture(1)
        assert report.passed
        assert report.failures == ()
        assert report.analytic_threshold.verified_threshold == 5310
        assert report.details["threshold_upper"]["verified"] == 4845
        assert report.details["combined_threshold"] == 5310

    def test_holds_at_five(self):
        assert chen1_holds_at(5)

    def test_fails_at_four(self):
        assert not chen1_holds_at(4)


class TestChen2:
    def test_report_passes(self):
        report = verify_conjecture(2)
        assert report.passed
        assert report.details["Ca"] == {"2": "27.87", "3": "3.54", "4": "1.79", "5": "1.20"}

    def test_excluded_pairs_fail(self):
        s = spt_values(10)
        assert not s[2] * s[2] > s[4]  # 9 < 10
        assert not s[3] * s[3] > s[6]  # 25 < 26

    def test_boundary_bisection_c2(self):
        lo, hi = pair_window_boundary(2)
        assert hi - lo <= Fraction(1, 10_000)
        assert abs(float((lo + hi) / 2) - 27.87) <= 0.01

    def test_boundary_bisection_c5(self):
        lo, hi = pair_window_boundary(5)
        assert abs(float((lo + hi) / 2) - 1.20) <= 0.01

    def test_pair_list_recorded(self):
        report = verify_conjecture(2)
        pairs = report.details["pairs_checked"]
        assert [2, 2] in pairs and [3, 3] in pairs and [2, 56] in pairs
        assert all(2 <= a <= 5 and b >= a for a, b in pairs)


class TestChen3:
    def test_report_passes(self):
        report = verify_conjecture(3)
        assert report.passed
        assert report.analytic_threshold.verified_threshold == 6553
        assert report.exact_scan_range == (36, 6552)

    def test_holds_at_36(self):
        s = spt_values(37)
        assert s[36] * s[36] > s[35] * s[37]

    def test_witnesses_below_36(self):
        s = spt_values(37)
        bad = [n for n in range(2, 36) if not s[n] * s[n] > s[n - 1] * s[n + 1]]
        assert bad and bad[0] == 3


class TestChen4:
    def test_report_passes(self):
        report = verify_conjecture(4)
        assert report.passed
        assert report.analytic_threshold.verified_threshold == 6244
        assert report.details["spt36_below_90000"] is True

    def test_spt36_value(self):
        assert spt_values(36)[36] == 89937 < 90000

    def test_random_wide_pairs(self):
        # n - m > 36: the strong log-concavity route, checked directly
        import random

        rng = random.Random(20260811)
        s = spt_values(7000)
        for _ in range(150):
            n = rng.randint(100, 3400)
            m = rng.randint(2, min(n - 37, 7000 - n))
            assert s[n] * s[n] > s[n - m] * s[n + m], (n, m)


class TestChen5:
    def test_report_passes(self):
        report = verify_conjecture(5)
        assert report.passed
        assert report.analytic_threshold.verified_threshold == 6445

    def test_holds_at_13(self):
        s = spt_values(14)
        assert s[12] * s[14] * 14 > s[13] * s[13] * 13

    def test_failures_below_13(self):
        s = spt_values(14)
        bad = [n for n in range(2, 13) if not s[n - 1] * s[n + 1] * (n + 1) > s[n] * s[n] * n]
        assert bad == [2, 4, 6, 8, 12]

    def test_chain_link_at_6445(self):
        n = 6445
        assert 4 * (n + 1) * (n + 1) < n**3  # 2/n^(3/2) < 1/(n+1)
        assert (
            resolve(lambda p: exact(Fraction(1, n + 1), p).lt(exact(Fraction(n + 1, n), p).log()))
            is True
        )


class TestChen6:
    def test_report_passes(self):
        report = verify_conjecture(6)
        assert report.passed
        assert report.analytic_threshold.verified_threshold == 7211

    def test_holds_at_73(self):
        s = spt_values(74)
        assert chen6_holds_at(73, s[72], s[73], s[74])

    def test_fails_at_72(self):
        s = spt_values(74)
        assert not chen6_holds_at(72, s[71], s[72], s[73])

    def test_quoted_cwx_inequalities(self):
        # 24pi/(24(n+1)-1)^(3/2) < 24pi/(24n)^(3/2) - (24pi/(24n)^(3/2))^2 + 3/(2 n^(5/2))
        # -288/(24(n+1)-1)^2 < 1/(6 n^(5/2)) - 1/(2 n^2)          both for n >= 50
        for n in list(range(50, 200, 7)) + [1000, 9973]:
            def first(p, n=n):
                x = 24 * pi(p) / exact((24 * n) ** 3, p).sqrt()
                lhs = 24 * pi(p) / exact((24 * (n + 1) - 1) ** 3, p).sqrt()
                return lhs.lt(x - x**2 + Fraction(3, 2) / exact(n**5, p).sqrt())

            def second(p, n=n):
                lhs = exact(Fraction(-288, (24 * (n + 1) - 1) ** 2), p)
                return lhs.lt(Fraction(1, 6) / exact(n**5, p).sqrt() - Fraction(1, 2 * n * n))

            assert resolve(first) is True, n
            assert resolve(second) is True, n


class TestSuite:
    def test_all_reports_pass(self):
        reports = verify_all()
        assert [r.conjecture_id for r in reports] == [1, 2, 3, 4, 5, 6]
        assert all(r.passed for r in reports)

    def test_json_shape(self):
        report = verify_conjecture(3)
        d = report.to_json_dict()
        assert d["schema"] == "sptkit/1"
        assert d["status"] == "pass"
        assert "runtime_seconds" not in d
        assert d["analytic_threshold"]["verified"] == 6553

    def test_congruences(self):
        assert andrews_congruence_failures(5000) == []

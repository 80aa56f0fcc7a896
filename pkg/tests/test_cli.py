import json

import pytest

from sptkit.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestValue:
    def test_spt(self, capsys):
        code, out, _ = run_cli(capsys, "value", "spt", "4")
        assert code == 0 and out == "10\n"

    def test_p(self, capsys):
        code, out, _ = run_cli(capsys, "value", "p", "4")
        assert code == 0 and out == "5\n"

    def test_trace_exact(self, capsys):
        code, out, _ = run_cli(capsys, "value", "traceS_exact", "4")
        assert code == 0 and out == "595\n"

    def test_domain_error_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "value", "spt", "0")
        assert code == 2 and err


class TestTrace:
    def test_rounds_to_exact(self, capsys):
        code, out, _ = run_cli(capsys, "trace", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["exact"] == "35"
        assert payload["rounds_to_exact"] is True
        assert payload["schema"] == "sptkit/1"

    def test_exact_595(self, capsys):
        code, out, _ = run_cli(capsys, "trace", "4")
        payload = json.loads(out)
        assert code == 0 and payload["exact"] == "595"

    def test_zero_tolerance_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "trace", "4", "--tolerance", "0")
        assert code == 2 and err

    def test_byte_identical_reruns(self, capsys):
        _, first, _ = run_cli(capsys, "trace", "7")
        _, second, _ = run_cli(capsys, "trace", "7")
        assert first == second


class TestTable:
    def test_bounds_rows_well_formed(self, capsys):
        code, out, _ = run_cli(capsys, "table", "bounds", "1..10")
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0].startswith("n,lambda,q,M,g")
        assert len(lines) == 11
        for line in lines[1:]:
            assert "nan" not in line.lower() and "inf" not in line.lower()

    def test_bounds_requires_range(self, capsys):
        code, _, err = run_cli(capsys, "table", "bounds")
        assert code == 2 and err

    def test_bad_range_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "table", "bounds", "9..2")
        assert code == 2 and err

    def test_ca_table(self, capsys):
        code, out, _ = run_cli(capsys, "table", "Ca")
        assert code == 0
        assert out.splitlines() == ["a,C_a", "2,27.87", "3,3.54", "4,1.79", "5,1.20"]

    def test_thresholds_table(self, capsys):
        code, out, _ = run_cli(capsys, "table", "thresholds")
        assert code == 0
        for constant in ("5310", "4845", "5729", "4698", "6553", "6445", "6244", "7211"):
            assert constant in out

    def test_byte_identical_reruns(self, capsys):
        _, first, _ = run_cli(capsys, "table", "bounds", "3..6")
        _, second, _ = run_cli(capsys, "table", "bounds", "3..6")
        assert first == second


class TestVerify:
    def test_single_conjecture_json(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["conjecture_id"] == 3
        assert payload["status"] == "pass"
        assert payload["analytic_threshold"]["verified"] == 6553

    def test_verify_one_json_deterministic(self, capsys):
        _, first, _ = run_cli(capsys, "verify", "5")
        _, second, _ = run_cli(capsys, "verify", "5")
        assert first == second

    def test_text_format(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "1", "--format", "text")
        assert code == 0
        assert "conjecture 1: pass" in out

    def test_bad_selector_exit_2(self, capsys):
        code, _, err = run_cli(capsys, "verify", "7")
        assert code == 2 and err

    def test_all_exit_zero(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "all", "--threads", "1")
        assert code == 0
        lines = out.strip().split("\n")
        assert len(lines) == 6
        assert all(json.loads(line)["status"] == "pass" for line in lines)

    def test_failure_witness_exit_1(self, capsys, monkeypatch):
        import sptkit.cli as cli_module
        from sptkit.verify import ConjectureReport

        fake = ConjectureReport(
            conjecture_id=3,
            analytic_threshold=None,
            exact_scan_range=(36, 6552),
            failures=((41,),),
            status="fail",
            runtime_seconds=0.0,
        )
        monkeypatch.setattr(cli_module.verify, "verify_conjecture", lambda k: fake)
        code, out, _ = run_cli(capsys, "verify", "3")
        assert code == 1
        assert json.loads(out)["status"] == "fail"  # report still emitted


class TestPrecisionFailure:
    def test_unreachable_tolerance_exit_3(self, capsys):
        # 64-bit rounding cannot reach a 1e-40 budget
        code, _, err = run_cli(capsys, "trace", "30", "--tolerance", "1e-40", "--prec", "64")
        assert code == 3 and err

import json

import pytest

from eiscong.cache import (
    format_cache_line,
    load_bernoulli_cache,
    parse_cache_line,
    save_bernoulli_cache,
)
from eiscong.cli import main, parse_range, smallest_kstar, smallest_kstar_multiple


def run_cli(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


class TestHelpers:
    def test_parse_range(self):
        assert parse_range("5") == [5]
        assert parse_range("0..3") == [0, 1, 2, 3]
        assert parse_range("1,4,9") == [1, 4, 9]

    def test_smallest_kstar(self):
        assert smallest_kstar(5, 1) == 2
        assert smallest_kstar(5, 2) == 6
        assert smallest_kstar(7, 4) == 8
        assert smallest_kstar(13, 4) == 6

    def test_smallest_kstar_multiple(self):
        assert smallest_kstar_multiple(5, 6) == 8
        assert smallest_kstar_multiple(7, 7) == 12
        assert smallest_kstar_multiple(13, 15) == 24


class TestBernoulliCommand:
    def test_single_value(self, capsys):
        status, out, _ = run_cli(capsys, "bernoulli", "12")
        assert status == 0
        assert "-691/2730" in out

    def test_zero(self, capsys):
        status, out, _ = run_cli(capsys, "bernoulli", "0")
        assert status == 0 and out.startswith("0 1/1")

    def test_valuation_columns(self, capsys):
        status, out, _ = run_cli(capsys, "bernoulli", "12", "--p", "5,7")
        assert status == 0
        assert "nu_5=-1" in out and "nu_7=-1" in out

    def test_negative_index_is_usage_error(self, capsys):
        status, _, err = run_cli(capsys, "bernoulli", "-2")
        assert status == 2
        assert "non-negative" in err

    def test_range_json(self, capsys):
        status, out, _ = run_cli(capsys, "bernoulli", "0..4", "--format", "jsonl")
        assert status == 0
        lines = [json.loads(line) for line in out.splitlines()]
        assert [rec["k"] for rec in lines] == [0, 1, 2, 3, 4]
        assert lines[2]["value"] == "1/6"


class TestSeriesCommand:
    def test_g_series_json_schema(self, capsys):
        status, out, _ = run_cli(
            capsys, "series", "g", "--k", "4", "--p", "7", "--m", "1", "--prec", "2"
        )
        assert status == 0
        data = json.loads(out)
        assert set(data) == {"p", "m", "precision", "coefficients"}
        assert data["coefficients"] == ["4", "1", "2"]

    def test_delta(self, capsys):
        status, out, _ = run_cli(
            capsys, "series", "delta", "--p", "5", "--m", "2", "--prec", "2"
        )
        data = json.loads(out)
        assert data["coefficients"] == ["0", "1", "1"]


class TestVerifyCommand:
    def test_thm1_grid_passes(self, capsys):
        status, out, _ = run_cli(
            capsys, "verify", "thm1", "--p", "5", "--m", "2", "--kstar", "6",
            "--alpha", "0..10", "--prec", "30", "--jobs", "1",
        )
        assert status == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert len(records) == 11
        assert all(r["verdict"] == "Pass" for r in records)
        assert all(r["statement-id"] == "Thm1.1" for r in records)

    def test_identity_grid(self, capsys):
        status, out, _ = run_cli(
            capsys, "verify", "identity", "--m", "2..5", "--alpha", "0..6", "--jobs", "1",
        )
        assert status == 0
        assert all(json.loads(line)["verdict"] == "Pass" for line in out.splitlines())

    def test_thm2_m_out_of_range_is_usage_error(self, capsys):
        status, _, err = run_cli(
            capsys, "verify", "thm2", "--p", "5", "--m", "5", "--alpha", "1", "--jobs", "1",
        )
        assert status == 2
        assert "m must satisfy" in err

    def test_parallel_matches_serial(self, capsys):
        argv = ["verify", "sun97", "--p", "5", "--n-max", "6"]
        status1, out1, _ = run_cli(capsys, *argv, "--jobs", "1")
        status2, out2, _ = run_cli(capsys, *argv, "--jobs", "2")
        assert (status1, out1) == (status2, out2)

    def test_human_and_csv_formats(self, capsys):
        for fmt in ("human", "csv", "json"):
            status, out, _ = run_cli(
                capsys, "verify", "eq3.1", "--p", "5", "--m", "2", "--alpha", "0..2",
                "--d", "2", "--jobs", "1", "--format", fmt,
            )
            assert status == 0 and out

    def test_eq14_and_eq16_and_kummer(self, capsys):
        status, out, _ = run_cli(
            capsys, "verify", "eq1.4", "--p", "7", "--k", "4,8", "--alpha", "1..3",
            "--prec", "20", "--jobs", "1",
        )
        assert status == 0 and len(out.splitlines()) == 6
        status, out, _ = run_cli(
            capsys, "verify", "eq1.6", "--p", "5", "--m", "2", "--k0", "6",
            "--prec", "20", "--jobs", "1",
        )
        assert status == 0
        status, out, _ = run_cli(
            capsys, "verify", "kummer", "--p", "5", "--m", "2", "--k", "6",
            "--alpha", "1..2", "--jobs", "1",
        )
        assert status == 0

    def test_missing_required_flag_is_usage_error(self, capsys):
        status, _, err = run_cli(capsys, "verify", "eq1.4", "--p", "7", "--jobs", "1")
        assert status == 2 and "--k" in err

    def test_budget_exceeded_record(self, capsys):
        status, out, _ = run_cli(
            capsys, "verify", "thm1", "--p", "5", "--m", "2", "--kstar", "6",
            "--alpha", "2000", "--jobs", "1", "--budget-bernoulli", "100",
        )
        assert status == 1
        record = json.loads(out.splitlines()[0])
        assert record["verdict"] == "BudgetExceeded"


class TestScanCommand:
    def test_eq64_summary(self, capsys):
        status, out, _ = run_cli(
            capsys, "scan", "eq6.4", "--p", "5", "--m", "6", "--alpha", "6..16", "--jobs", "1",
        )
        assert status == 0
        lines = [json.loads(line) for line in out.splitlines()]
        assert lines[-1] == {"summary": {"pass": 11, "total": 11}}

    def test_eq61(self, capsys):
        status, out, _ = run_cli(
            capsys, "scan", "eq6.1", "--p", "5", "--m", "5", "--kstar", "8",
            "--alpha", "5..7", "--prec", "30", "--jobs", "1",
        )
        assert status == 0

    def test_budget_guard(self, capsys):
        status, out, _ = run_cli(
            capsys, "scan", "eq6.4", "--p", "97", "--m", "97", "--alpha", "97..99",
            "--jobs", "1",
        )
        assert status == 1
        first = json.loads(out.splitlines()[0])
        assert first["verdict"] == "BudgetExceeded"


class TestFiltrationCommand:
    def test_small_bound_with_probe(self, capsys):
        status, out, _ = run_cli(
            capsys, "filtration", "--form", "G", "--k", "14", "--p", "5", "--m", "3",
            "--probe", "10",
        )
        assert status == 0
        data = json.loads(out)
        assert data["bound-found"] <= 14
        assert data["probe"]["weight"] == 10


class TestReproduceCommand:
    def test_unknown_example_rejected(self, capsys):
        with pytest.raises(SystemExit):
            main(["reproduce", "paper-3-1"])
        capsys.readouterr()

    def test_paper_17_6(self, capsys):
        status, out, _ = run_cli(capsys, "reproduce", "paper-17-6")
        assert status == 0
        data = json.loads(out)
        assert data["match"] is True
        assert data["bound-found"] == 80
        assert data["sharpness-probe"]["result"] == "NoSolution"


class TestConsoleScript:
    def test_installed_entry_point(self):
        import shutil
        import subprocess

        exe = shutil.which("eiscong")
        if exe is None:
            pytest.skip("console script not installed")
        proc = subprocess.run(
            [exe, "reproduce", "paper-17-6"], capture_output=True, text=True
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["match"] is True


class TestOutAndCache:
    def test_out_file(self, tmp_path, capsys):
        target = tmp_path / "report.jsonl"
        status = main(["verify", "sun97", "--p", "5", "--n-max", "3",
                       "--jobs", "1", "--out", str(target)])
        capsys.readouterr()
        assert status == 0
        assert len(target.read_text().splitlines()) == 3

    def test_cache_round_trip(self, tmp_path):
        path = tmp_path / "bern.cache"
        line = format_cache_line(12, parse_cache_line("12 -691/2730")[1])
        assert line == "12 -691/2730\n"
        path.write_text(line)
        assert load_bernoulli_cache(path) == 1
        appended = save_bernoulli_cache(path)
        text = path.read_text()
        # parse -> serialize identity on the original record
        assert text.startswith("12 -691/2730\n")
        indices = [parse_cache_line(l)[0] for l in text.splitlines()]
        assert len(indices) == len(set(indices))
        assert appended == len(indices) - 1

    def test_warm_cache_is_byte_identical(self, tmp_path, capsys):
        path = tmp_path / "bern.cache"
        argv = ["verify", "sun97", "--p", "5", "--n-max", "5", "--jobs", "1",
                "--cache", str(path)]
        status1, out1, _ = (main(argv), *capsys.readouterr())
        status2, out2, _ = (main(argv), *capsys.readouterr())
        assert status1 == status2 == 0
        assert out1 == out2
        assert path.exists()

    def test_cache_path_from_environment(self, tmp_path, capsys, monkeypatch):
        path = tmp_path / "env.cache"
        monkeypatch.setenv("EISCONG_BERNOULLI_CACHE", str(path))
        status = main(["bernoulli", "40..44"])
        capsys.readouterr()
        assert status == 0
        assert path.exists()
        indices = [int(line.split()[0]) for line in path.read_text().splitlines()]
        assert 44 in indices

    def test_soft_time_budget_annotates(self, capsys):
        status, out, _ = run_cli(
            capsys, "verify", "sun97", "--p", "5", "--n-max", "2", "--jobs", "1",
            "--budget-seconds", "0.0",
        )
        assert status == 0
        records = [json.loads(line) for line in out.splitlines()]
        assert all("budget-warning" in r for r in records)

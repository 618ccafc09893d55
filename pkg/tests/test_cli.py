"""Command-line surface: flags, exit codes, determinism, atomicity."""

import json
import subprocess
import sys

import numpy as np
import pytest

from sdcmask import load_csv
from sdcmask.cli import main


@pytest.fixture()
def income_csv(tmp_path):
    path = tmp_path / "in.csv"
    rng = np.random.default_rng(1)
    rows = ["id,income,region"]
    for i, v in enumerate(rng.lognormal(mean=4.0, sigma=1.2, size=40), start=1):
        rows.append(f"{i},{v:.6f},r{i % 3}")
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")
    return path


def run_cli(*argv):
    return main(list(argv))


class TestMaskCommand:
    def test_multiplicative_alpha_one_identity(self, income_csv, tmp_path):
        out = tmp_path / "masked.csv"
        code = run_cli(
            "mask", "--method", "multiplicative", "--alpha", "1", "--column",
            "income", "--in", str(income_csv), "--out", str(out), "--seed", "5",
        )
        assert code == 0
        x = load_csv(income_csv).numeric_column("income")
        y = load_csv(out).numeric_column("income")
        assert np.array_equal(x, y)
        report = json.loads((tmp_path / "masked.report.json").read_text())
        assert report["rank_swaps"] == 0
        assert report["alpha"] == 1.0

    def test_pass_through_columns_untouched(self, income_csv, tmp_path):
        out = tmp_path / "masked.csv"
        run_cli(
            "mask", "--method", "multiplicative", "--alpha", "0.9", "--column",
            "income", "--in", str(income_csv), "--out", str(out),
        )
        src = load_csv(income_csv)
        dst = load_csv(out)
        assert dst.columns["id"] == src.columns["id"]
        assert dst.columns["region"] == src.columns["region"]

    def test_same_seed_byte_identical(self, income_csv, tmp_path):
        outs = []
        for name in ("a", "b"):
            out = tmp_path / f"{name}.csv"
            code = run_cli(
                "mask", "--method", "multiplicative", "--alpha", "0.8", "--column",
                "income", "--in", str(income_csv), "--out", str(out),
                "--seed", "42", "--figures",
            )
            assert code == 0
            outs.append(out)
        assert outs[0].read_bytes() == outs[1].read_bytes()
        assert (tmp_path / "a.report.json").read_bytes() == (
            tmp_path / "b.report.json"
        ).read_bytes()
        assert (tmp_path / "a.density.png").read_bytes() == (
            tmp_path / "b.density.png"
        ).read_bytes()

    def test_different_seed_differs(self, income_csv, tmp_path):
        digests = []
        for seed in ("1", "2"):
            out = tmp_path / f"s{seed}.csv"
            run_cli(
                "mask", "--method", "multiplicative", "--alpha", "0.8", "--column",
                "income", "--in", str(income_csv), "--out", str(out), "--seed", seed,
            )
            digests.append(out.read_bytes())
        assert digests[0] != digests[1]

    def test_additive_requires_key_column(self, income_csv, tmp_path):
        code = run_cli(
            "mask", "--method", "additive", "--alpha", "0.5", "--column", "income",
            "--in", str(income_csv), "--out", str(tmp_path / "o.csv"),
        )
        assert code == 2

    def test_multiplicative_forbids_key_column(self, income_csv, tmp_path):
        code = run_cli(
            "mask", "--method", "multiplicative", "--alpha", "0.5", "--column",
            "income", "--key-column", "id", "--in", str(income_csv),
            "--out", str(tmp_path / "o.csv"),
        )
        assert code == 2

    def test_additive_end_to_end(self, tmp_path):
        rng = np.random.default_rng(3)
        x = 100.0 + 10.0 * rng.normal(size=30)
        s = x + 5.0 * rng.normal(size=30)
        lines = ["x,s"] + [f"{a:.8f},{b:.8f}" for a, b in zip(x, s)]
        src = tmp_path / "pair.csv"
        src.write_text("\n".join(lines) + "\n", encoding="utf-8")
        out = tmp_path / "masked.csv"
        code = run_cli(
            "mask", "--method", "additive", "--alpha", "0.7", "--column", "x",
            "--key-column", "s", "--in", str(src), "--out", str(out),
        )
        assert code == 0
        report = json.loads((tmp_path / "masked.report.json").read_text())
        orig = report["raw_moments_original"]
        masked = report["raw_moments_masked"]
        assert masked["mean"] == pytest.approx(orig["mean"], rel=1e-10)
        assert masked["variance"] == pytest.approx(orig["variance"], rel=1e-10)
        assert report["pearson_log_xy"] is None

    def test_alpha_rejected_before_reading_input(self, tmp_path):
        # invalid alpha + nonexistent file: config wins, so exit code 2 not 3
        code = run_cli(
            "mask", "--method", "multiplicative", "--alpha", "1.5", "--column",
            "income", "--in", str(tmp_path / "missing.csv"),
            "--out", str(tmp_path / "o.csv"),
        )
        assert code == 2

    def test_missing_input_exit_code(self, tmp_path):
        code = run_cli(
            "mask", "--method", "multiplicative", "--alpha", "0.9", "--column",
            "income", "--in", str(tmp_path / "missing.csv"),
            "--out", str(tmp_path / "o.csv"),
        )
        assert code == 3

    def test_non_positive_column_no_partial_output(self, tmp_path):
        src = tmp_path / "zeros.csv"
        src.write_text("v\n1.0\n0.0\n2.0\n", encoding="utf-8")
        outdir = tmp_path / "out"
        outdir.mkdir()
        code = run_cli(
            "mask", "--method", "multiplicative", "--alpha", "0.9", "--column",
            "v", "--in", str(src), "--out", str(outdir / "masked.csv"), "--figures",
        )
        assert code == 5
        assert list(outdir.iterdir()) == []

    def test_unparsable_cell_exit_code(self, tmp_path):
        src = tmp_path / "bad.csv"
        src.write_text("v\n1.0\nabc\n", encoding="utf-8")
        code = run_cli(
            "mask", "--method", "multiplicative", "--alpha", "0.9", "--column",
            "v", "--in", str(src), "--out", str(tmp_path / "o.csv"),
        )
        assert code == 4


class TestEnvOverrides:
    def test_env_seed_applies_and_flag_wins(self, income_csv, tmp_path, monkeypatch):
        def mask_to(out, *extra):
            argv = [
                "mask", "--method", "multiplicative", "--alpha", "0.8", "--column",
                "income", "--in", str(income_csv), "--out", str(out), *extra,
            ]
            assert run_cli(*argv) == 0
            return out.read_bytes()

        baseline_seed9 = mask_to(tmp_path / "flag9.csv", "--seed", "9")
        monkeypatch.setenv("SDCMASK_SEED", "9")
        from_env = mask_to(tmp_path / "env9.csv")
        assert from_env == baseline_seed9
        flag_beats_env = mask_to(tmp_path / "flag7.csv", "--seed", "7")
        assert flag_beats_env != baseline_seed9

    def test_env_outdir_for_simulate(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SDCMASK_OUTDIR", str(tmp_path / "envout"))
        code = run_cli("simulate", "--n", "50", "--alpha-grid", "0.9", "--seed", "1")
        assert code == 0
        assert (tmp_path / "envout" / "summary.csv").exists()


class TestReportCommand:
    def test_report_bundle(self, income_csv, tmp_path):
        masked = tmp_path / "masked.csv"
        run_cli(
            "mask", "--method", "multiplicative", "--alpha", "0.9", "--column",
            "income", "--in", str(income_csv), "--out", str(masked), "--seed", "4",
        )
        outdir = tmp_path / "rep"
        code = run_cli(
            "report", "--in", str(income_csv), "--masked", str(masked),
            "--column", "income", "--alpha", "0.9", "--outdir", str(outdir),
        )
        assert code == 0
        produced = {p.name for p in outdir.iterdir()}
        assert produced == {
            "report.json", "absdiff.csv", "rank_pairs.csv", "density.csv",
            "report.density.png", "report.absdiff.png", "report.rank_pairs.png",
        }
        report = json.loads((outdir / "report.json").read_text())
        direct = json.loads((tmp_path / "masked.report.json").read_text())
        assert report["pearson_xy"] == direct["pearson_xy"]
        assert report["rank_swaps"] == direct["rank_swaps"]


class TestSimulateCommand:
    def test_default_grid_outputs(self, tmp_path, capsys):
        outdir = tmp_path / "study"
        code = run_cli(
            "simulate", "--n", "200", "--outdir", str(outdir), "--seed", "3"
        )
        assert code == 0
        for tag in ("0.999", "0.95", "0.9", "0.8", "0.7"):
            for stem in ("masked_alpha", "report_alpha", "absdiff_alpha",
                         "rank_pairs_alpha", "density_alpha"):
                assert (outdir / f"{stem}_{tag}.csv").exists() or (
                    outdir / f"{stem}_{tag}.json"
                ).exists()
            assert (outdir / f"density_alpha_{tag}.png").exists()
        assert (outdir / "simulated.csv").exists()
        assert (outdir / "density_original.csv").exists()
        assert (outdir / "correlation_summary.png").exists()
        lines = (outdir / "summary.csv").read_text().splitlines()
        assert lines[0].startswith("alpha,pearson_xy,spearman_xy")
        assert len(lines) == 6
        stdout = capsys.readouterr().out
        assert stdout.count("alpha=") == 5

    def test_simulate_deterministic(self, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        for outdir in (a, b):
            assert run_cli(
                "simulate", "--n", "120", "--alpha-grid", "0.9,0.7",
                "--outdir", str(outdir), "--seed", "11",
            ) == 0
        for name in ("summary.csv", "masked_alpha_0.9.csv", "report_alpha_0.7.json",
                     "density_alpha_0.9.png"):
            assert (a / name).read_bytes() == (b / name).read_bytes()

    def test_bad_grid_rejected(self, tmp_path):
        code = run_cli(
            "simulate", "--alpha-grid", "0.9,nope", "--outdir", str(tmp_path / "x")
        )
        assert code == 2
        assert not (tmp_path / "x" / "summary.csv").exists()


class TestHelpAndEntryPoint:
    def test_help_documents_exit_codes(self):
        proc = subprocess.run(
            [sys.executable, "-m", "sdcmask.cli", "--help"],
            capture_output=True, text=True,
        )
        assert proc.returncode == 0
        assert "exit codes:" in proc.stdout
        for code in range(10):
            assert f"\n  {code} " in proc.stdout or f" {code}  " in proc.stdout

    def test_error_line_is_machine_parsable(self, tmp_path):
        src = tmp_path / "zeros.csv"
        src.write_text("v\n0.0\n1.0\n", encoding="utf-8")
        proc = subprocess.run(
            [
                sys.executable, "-m", "sdcmask.cli", "mask", "--method",
                "multiplicative", "--alpha", "0.9", "--column", "v",
                "--in", str(src), "--out", str(tmp_path / "o.csv"),
            ],
            capture_output=True, text=True,
        )
        assert proc.returncode == 5
        err_lines = [l for l in proc.stderr.splitlines() if l]
        assert len(err_lines) == 1
        assert err_lines[0].startswith("sdcmask: error: NonPositiveValue:")

import json
from pathlib import Path

import numpy as np
import pytest
from click.testing import CliRunner

from fracrank.cli import main
from fracrank.synth import read_series_csv

from conftest import MICRO_CORPUS, MICRO_F, MICRO_MUTUAL_F_OF_Q, MICRO_Q


@pytest.fixture
def runner():
    return CliRunner()


def run_ok(runner, args):
    result = runner.invoke(main, args, catch_exceptions=False)
    assert result.exit_code == 0, result.output
    return result


def read_dir(path: Path) -> dict:
    return {p.name: p.read_bytes() for p in sorted(path.iterdir())}


class TestScore:
    def test_micro_corpus(self, runner, tmp_path):
        run_ok(runner, ["score", "--corpus", str(MICRO_CORPUS),
                        "--query", "alpha beta", "--out", str(tmp_path)])
        rows = (tmp_path / "scores.csv").read_text().splitlines()
        assert rows[0] == "id,raw_f,raw_q,f,q"
        f = [float(r.split(",")[3]) for r in rows[1:]]
        q = [float(r.split(",")[4]) for r in rows[1:]]
        np.testing.assert_allclose(f, MICRO_F, atol=1e-11)
        np.testing.assert_allclose(q, MICRO_Q, atol=1e-11)
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary == {"n_documents": 3, "n_terms": 2, "n_zero_score": 0}

    def test_no_match_exits_nonzero(self, runner, tmp_path):
        result = runner.invoke(main, ["score", "--corpus", str(MICRO_CORPUS),
                                      "--query", "zzz", "--out", str(tmp_path)])
        assert result.exit_code != 0
        assert "query matches nothing" in result.output

    def test_single_document(self, runner, tmp_path):
        corpus = tmp_path / "one.jsonl"
        corpus.write_text('{"id": "d", "text": "alpha twice alpha"}\n')
        out = tmp_path / "out"
        run_ok(runner, ["score", "--corpus", str(corpus),
                        "--query", "alpha", "--out", str(out)])
        row = (out / "scores.csv").read_text().splitlines()[1]
        assert row.split(",")[3] == "1" and row.split(",")[4] == "1"


class TestAnalyze:
    def test_scores_input_builds_mutual_sequence(self, runner, tmp_path):
        score_dir = tmp_path / "s"
        run_ok(runner, ["score", "--corpus", str(MICRO_CORPUS),
                        "--query", "alpha beta", "--out", str(score_dir)])
        # Too short for the estimators, but the sequence itself must be written
        # before the DFA length check fails.
        result = runner.invoke(main, ["analyze", "--scores", str(score_dir / "scores.csv"),
                                      "--ranked-by", "q", "--read-off", "f",
                                      "--out", str(tmp_path / "a")])
        assert result.exit_code != 0
        seq = read_series_csv((tmp_path / "a" / "sequence.csv").read_text())
        np.testing.assert_allclose(seq, MICRO_MUTUAL_F_OF_Q, atol=1e-11)

    def test_fgn_series_full_bundle(self, runner, tmp_path):
        sdir = tmp_path / "synth"
        run_ok(runner, ["synth", "--kind", "fgn", "--h", "0.8", "--len", "8192",
                        "--seed", "7", "--out", str(sdir)])
        adir = tmp_path / "analysis"
        run_ok(runner, ["analyze", "--series", str(sdir / "series.csv"),
                        "--out", str(adir)])
        for name in ("sequence.csv", "dfa.csv", "hurst_pointwise.csv",
                     "poincare.csv", "summary.json", "manifest.json"):
            assert (adir / name).exists(), name
        summary = json.loads((adir / "summary.json").read_text())
        assert abs(summary["h_regression"] - 0.8) < 0.15  # single seed, loose
        assert summary["fractal_dim"] == pytest.approx(2 - summary["h_regression"])
        assert summary["poincare_cdf_mapped"] is True
        assert "zipf_error" in summary  # fGn has negative values

    def test_self_ranked_sequence_non_increasing(self, runner, tmp_path):
        corpus = tmp_path / "c.jsonl"
        lines = [json.dumps({"id": f"d{i}", "text": "alpha " * (i + 1) + "pad " * (20 - i)})
                 for i in range(20)]
        corpus.write_text("\n".join(lines) + "\n")
        sdir = tmp_path / "s"
        run_ok(runner, ["score", "--corpus", str(corpus),
                        "--query", "alpha", "--out", str(sdir)])
        result = runner.invoke(main, ["analyze", "--scores", str(sdir / "scores.csv"),
                                      "--ranked-by", "q", "--read-off", "q",
                                      "--out", str(tmp_path / "a")])
        seq = read_series_csv((tmp_path / "a" / "sequence.csv").read_text())
        assert np.all(np.diff(seq) <= 0)

    def test_constant_series_diagnostic(self, runner, tmp_path):
        series = tmp_path / "flat.csv"
        series.write_text("value\n" + "1.0\n" * 64)
        result = runner.invoke(main, ["analyze", "--series", str(series),
                                      "--out", str(tmp_path / "a")])
        assert result.exit_code != 0
        assert "dfa" in result.output

    def test_requires_exactly_one_input(self, runner, tmp_path):
        result = runner.invoke(main, ["analyze", "--out", str(tmp_path)])
        assert result.exit_code != 0


class TestSynth:
    def test_deterministic_files(self, runner, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        args = ["synth", "--kind", "fgn", "--h", "0.8", "--len", "8192", "--seed", "7"]
        run_ok(runner, args + ["--out", str(a)])
        run_ok(runner, args + ["--out", str(b)])
        assert read_dir(a) == read_dir(b)

    def test_linear(self, runner, tmp_path):
        run_ok(runner, ["synth", "--kind", "linear", "--slope", "2",
                        "--intercept", "1", "--len", "3", "--out", str(tmp_path)])
        np.testing.assert_array_equal(
            read_series_csv((tmp_path / "series.csv").read_text()), [3, 5, 7]
        )

    def test_invalid_h_usage_error(self, runner, tmp_path):
        result = runner.invoke(main, ["synth", "--kind", "fgn", "--h", "1.2",
                                      "--len", "128", "--out", str(tmp_path)])
        assert result.exit_code != 0

    def test_env_var_out_dir(self, runner, tmp_path, monkeypatch):
        monkeypatch.setenv("FRACRANK_OUT", str(tmp_path / "envout"))
        run_ok(runner, ["synth", "--kind", "white", "--len", "16", "--seed", "1"])
        assert (tmp_path / "envout" / "series.csv").exists()


class TestRerun:
    def test_synth_rerun_byte_identical(self, runner, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_ok(runner, ["synth", "--kind", "power", "--beta", "1.0", "--noise", "0.02",
                        "--len", "512", "--seed", "3", "--out", str(a)])
        run_ok(runner, ["rerun", str(a / "manifest.json"), "--out", str(b)])
        assert read_dir(a) == read_dir(b)

    def test_analyze_rerun_byte_identical(self, runner, tmp_path):
        sdir = tmp_path / "s"
        run_ok(runner, ["synth", "--kind", "white", "--len", "1024",
                        "--seed", "5", "--out", str(sdir)])
        a, b = tmp_path / "a", tmp_path / "b"
        run_ok(runner, ["analyze", "--series", str(sdir / "series.csv"), "--out", str(a)])
        run_ok(runner, ["rerun", str(a / "manifest.json"), "--out", str(b)])
        assert read_dir(a) == read_dir(b)

    def test_score_rerun_byte_identical(self, runner, tmp_path):
        a, b = tmp_path / "a", tmp_path / "b"
        run_ok(runner, ["score", "--corpus", str(MICRO_CORPUS),
                        "--query", "alpha beta", "--out", str(a)])
        run_ok(runner, ["rerun", str(a / "manifest.json"), "--out", str(b)])
        assert read_dir(a) == read_dir(b)

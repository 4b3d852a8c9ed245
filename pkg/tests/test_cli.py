import json
import subprocess
import sys

import numpy as np
import pytest

from actdct.cli import main
from actdct.dct import dct_forward, dct_inverse, dct_matrix
from actdct.matrices import mobius_matrix


@pytest.fixture
def signal_csv(tmp_path):
    v = np.random.default_rng(0).uniform(-1, 1, 8)
    path = tmp_path / "signal.csv"
    path.write_text("# eight samples\n" + "\n".join(repr(float(x)) for x in v) + "\n")
    return path, v


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestForward:
    def test_exact_matches_naive(self, capsys, signal_csv):
        path, v = signal_csv
        code, out, _ = run(capsys, "forward", "--input", str(path), "--method", "act-exact")
        assert code == 0
        report = json.loads(out)
        assert list(report) == ["n", "method", "beta", "spectrum", "op_counts"]
        assert report["n"] == 8 and report["method"] == "act-exact"
        assert np.max(np.abs(np.array(report["spectrum"]) - dct_forward(v))) < 1e-9
        assert set(report["op_counts"]) == {"additions", "multiplications"}

    def test_constant_dc_only(self, capsys, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("2\n" * 8)
        code, out, _ = run(capsys, "forward", "--input", str(path))
        spectrum = np.array(json.loads(out)["spectrum"])
        assert code == 0
        assert spectrum[0] == pytest.approx(2 * np.sqrt(8))
        assert np.max(np.abs(spectrum[1:])) < 1e-10

    def test_quarter_beta(self, capsys, signal_csv):
        code, _, err = run(capsys, "forward", "--input", str(signal_csv[0]), "--beta", "0.25")
        assert code == 3
        assert "non-invertible coefficient sequence" in err

    def test_parse_error_names_line(self, capsys, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1.0\n# comment\nabc\n")
        code, _, err = run(capsys, "forward", "--input", str(path))
        assert code == 2
        assert ":3:" in err and "abc" in err

    def test_bad_json_value(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('[1, 2, "x"]')
        code, _, err = run(capsys, "forward", "--input", str(path))
        assert code == 2 and "'x'" in err

    def test_missing_file(self, capsys, tmp_path):
        code, _, _ = run(capsys, "forward", "--input", str(tmp_path / "nope.csv"))
        assert code == 2

    def test_json_batch(self, capsys, tmp_path):
        rng = np.random.default_rng(1)
        batch = rng.normal(size=(3, 6)).tolist()
        path = tmp_path / "batch.json"
        path.write_text(json.dumps(batch))
        code, out, _ = run(capsys, "forward", "--input", str(path), "--beta", "1/2")
        reports = json.loads(out)
        assert code == 0 and len(reports) == 3
        for rep, v in zip(reports, batch):
            assert rep["beta"] == 0.5
            assert np.allclose(rep["spectrum"], dct_forward(v), atol=1e-9)

    def test_naive_and_heuristic(self, capsys, signal_csv):
        path, v = signal_csv
        _, out, _ = run(capsys, "forward", "--input", str(path), "--method", "naive")
        naive = json.loads(out)
        assert naive["beta"] is None and naive["op_counts"]["multiplications"] == 64
        _, out, _ = run(capsys, "forward", "--input", str(path), "--method", "act-heuristic", "--eps", "0.1")
        heur = json.loads(out)
        assert heur["method"] == "act-heuristic" and "mse_vs_reference" in heur

    @pytest.mark.parametrize("fmt", ["json", "csv"])
    def test_verify_round_trip(self, capsys, signal_csv, fmt):
        code, out, err = run(capsys, "forward", "--input", str(signal_csv[0]), "--verify", "--format", fmt)
        assert code == 0 and "verify: ok" in err

    def test_verify_fails_for_heuristic(self, capsys, signal_csv):
        code, _, err = run(capsys, "forward", "--input", str(signal_csv[0]), "--method", "act-heuristic", "--verify")
        assert code == 1 and "verify: FAILED" in err

    def test_csv_output(self, capsys, signal_csv, tmp_path):
        path, v = signal_csv
        target = tmp_path / "out.csv"
        code, out, _ = run(capsys, "forward", "--input", str(path), "--format", "csv", "--output", str(target))
        assert code == 0 and out == ""
        rows = [line.split(",") for line in target.read_text().splitlines() if line and not line.startswith("#")]
        assert rows[0] == ["vector", "k", "coefficient"]
        spectrum = np.array([float(r[2]) for r in rows[1:]])
        assert np.allclose(dct_inverse(spectrum), v, atol=1e-9)

    def test_deterministic(self, capsys, signal_csv):
        outs = {run(capsys, "forward", "--input", str(signal_csv[0]))[1] for _ in range(3)}
        assert len(outs) == 1


class TestCompare:
    def test_mean_mse(self, capsys):
        code, out, _ = run(capsys, "compare", "-N", "8", "--count", "256", "--eps", "0.1", "--seed", "0")
        data = json.loads(out)
        assert code == 0 and len(data["mse"]) == 256
        assert data["mean_mse"] <= 1e-2

    def test_constant_input(self, capsys, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("1\n" * 8)
        code, out, _ = run(capsys, "compare", "--input", str(path))
        data = json.loads(out)
        # centered heuristic leaves a constant untouched: DC is carried exactly
        assert code == 0 and data["count"] == 1 and data["mean_mse"] < 1e-20

    def test_n1(self, capsys):
        assert run(capsys, "compare", "-N", "1")[0] == 2

    def test_deterministic(self, capsys):
        a = run(capsys, "compare", "--count", "10", "--seed", "4", "--format", "csv")[1]
        b = run(capsys, "compare", "--count", "10", "--seed", "4", "--format", "csv")[1]
        assert a == b and a.startswith("vector,mse\n")


class TestMatrices:
    def test_mobius(self, capsys):
        code, out, _ = run(capsys, "matrices", "-N", "4", "--which", "mobius")
        rows = [[int(x) for x in line.split(",")] for line in out.splitlines()]
        assert code == 0 and rows == mobius_matrix(4).tolist()

    def test_c1_plus_c2(self, capsys):
        parse = lambda text: np.array([[float(x) for x in line.split(",")] for line in text.splitlines()])
        c1 = parse(run(capsys, "matrices", "-N", "8", "--which", "c1")[1])
        c2 = parse(run(capsys, "matrices", "-N", "8", "--which", "c2")[1])
        assert np.max(np.abs(c1 + c2 - dct_matrix(8))) < 1e-10

    def test_full_precision(self, capsys):
        out = run(capsys, "matrices", "-N", "3", "--which", "dct")[1]
        parsed = np.array([[float(x) for x in line.split(",")] for line in out.splitlines()])
        assert np.array_equal(parsed, dct_matrix(3))

    @pytest.mark.parametrize("argv", [("-N", "1", "--which", "w"), ("-N", "4", "--which", "nope"), ("-N", "x", "--which", "dct")])
    def test_errors(self, capsys, argv):
        assert run(capsys, "matrices", *argv)[0] == 2


class TestPoints:
    def test_eight_point_set(self, capsys):
        code, out, _ = run(capsys, "points", "-N", "8", "--beta", "0")
        unique = out.split("# unique folded points\n")[1].split()
        assert code == 0
        assert unique == ["-1/2", "25/14", "13/6", "27/10", "7/2", "57/14", "29/6", "59/10", "89/14", "15/2"]

    def test_two_point(self, capsys):
        out = run(capsys, "points", "-N", "2", "--format", "json")[1]
        data = json.loads(out)
        assert data["points"] == [{"k": 1, "m": 0, "raw": "-1/2", "folded": "-1/2"}]

    def test_beta_half(self, capsys):
        data = json.loads(run(capsys, "points", "-N", "8", "--beta", "0.5", "--format", "json")[1])
        assert data["points"][0]["raw"] == "15/2"

    def test_quarter(self, capsys):
        assert run(capsys, "points", "-N", "8", "--beta", "0.25")[0] == 3


class TestBench:
    def test_table(self, capsys):
        code, out, _ = run(capsys, "bench", "-N", "8", "--count", "4", "--format", "json")
        rows = json.loads(out)
        assert code == 0
        assert [r["method"] for r in rows] == ["naive", "act-exact", "act-heuristic"]
        exact = rows[1]
        assert exact["multiplications"] == 2 * 7 + 1
        assert exact["interp_multiplications"] > 0

    def test_nonzero_fraction_near_density(self, capsys):
        out = run(capsys, "bench", "-N", "64,256", "--count", "1", "--format", "json")[1]
        fractions = [r["nonzero_fraction"] for r in json.loads(out) if r["method"] == "act-exact"]
        assert abs(fractions[-1] - 6 / np.pi**2) < 0.01

    @pytest.mark.parametrize("spec", ["1", "a:b", "8:2"])
    def test_bad_range(self, capsys, spec):
        assert run(capsys, "bench", "-N", spec)[0] == 2


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "actdct", "points", "-N", "2"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0 and "-1/2" in proc.stdout


def test_usage_error_exit_code(capsys):
    assert main(["forward"]) == 2
    assert main(["frobnicate"]) == 2

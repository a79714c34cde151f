import json

import numpy as np
import pytest

import surrokit as sk
from surrokit.cli import main


def run(argv):
    return main(argv)


class TestGen:
    def test_writes_series_and_metadata(self, tmp_path):
        out = tmp_path / "ls.txt"
        assert run(["gen", "--preset", "LS", "--n", "512",
                    "-o", str(out), "--seed", "1"]) == 0
        x = sk.read_series(out)
        np.testing.assert_array_equal(x, sk.preset("LS", 512, 1))
        meta = json.loads((tmp_path / "ls.txt.meta.json").read_text())
        assert meta["command"] == "gen"
        assert meta["parameters"]["preset"] == "LS"
        assert meta["parameters"]["seed"] == 1

    def test_seed_defaults_with_notice(self, tmp_path, capsys):
        out = tmp_path / "x.txt"
        assert run(["gen", "--preset", "LS", "--n", "512",
                    "-o", str(out)]) == 0
        assert "defaulting to 0" in capsys.readouterr().err

    def test_snr_option(self, tmp_path):
        clean = tmp_path / "clean.txt"
        noisy = tmp_path / "noisy.txt"
        run(["gen", "--preset", "LS", "--n", "512", "-o", str(clean),
             "--seed", "1"])
        run(["gen", "--preset", "LS", "--n", "512", "-o", str(noisy),
             "--seed", "1", "--snr-db", "5"])
        x = sk.read_series(clean)
        y = sk.read_series(noisy)
        assert not np.array_equal(x, y)
        ratio = 10 * np.log10(x.var(ddof=1) / (y - x).var(ddof=1))
        assert abs(ratio - 5) < 2

    def test_bad_preset_is_exit_1(self, tmp_path, capsys):
        assert run(["gen", "--preset", "QQ", "-o",
                    str(tmp_path / "x.txt")]) == 1

    def test_outdir_env(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SURROKIT_OUTDIR", str(tmp_path))
        assert run(["gen", "--preset", "LS", "--n", "512",
                    "-o", "rel.txt", "--seed", "0"]) == 0
        assert (tmp_path / "rel.txt").exists()


@pytest.fixture
def series_file(tmp_path):
    p = tmp_path / "in.txt"
    sk.write_series(sk.preset("LS", 512, seed=2), p)
    return p


class TestSurrogate:
    def test_iaaft_surrogate_matches_library(self, tmp_path, series_file):
        out = tmp_path / "s.txt"
        assert run(["surrogate", "--method", "iaaft", "-i", str(series_file),
                    "-o", str(out), "--seed", "3"]) == 0
        got = sk.read_series(out)
        want = sk.iaaft(sk.read_series(series_file), seed=3)
        np.testing.assert_array_equal(got, want)

    def test_missing_input_is_exit_1(self, tmp_path):
        assert run(["surrogate", "--method", "rs", "-i",
                    str(tmp_path / "nope.txt"),
                    "-o", str(tmp_path / "s.txt"), "--seed", "0"]) == 1


class TestStats:
    def test_document_fields(self, tmp_path, series_file):
        out = tmp_path / "stats.json"
        assert run(["stats", "-i", str(series_file), "-o", str(out)]) == 0
        doc = json.loads(out.read_text())
        x = sk.read_series(series_file)
        assert doc["n"] == 512
        assert doc["ac"] == pytest.approx(sk.autocorrelation(x, 1))
        assert doc["ami"] == pytest.approx(sk.ami(x, 1))
        assert doc["local_moments"]["n_windows"] >= 1


class TestTest:
    def test_shuffle_rank_test(self, tmp_path, series_file):
        out = tmp_path / "verdict.json"
        assert run(["test", "--method", "rs", "--m", "19",
                    "--statistic", "ac", "-i", str(series_file),
                    "-o", str(out), "--seed", "0"]) == 0
        doc = json.loads(out.read_text())
        assert doc["reject"] is True
        assert doc["alpha"] == pytest.approx(0.05)
        assert len(doc["surrogate_values"]) == 19


class TestSweep:
    def test_csv_json_and_plot(self, tmp_path, series_file):
        out = tmp_path / "sweep.csv"
        js = tmp_path / "sweep.json"
        fig = tmp_path / "sweep.png"
        assert run([
            "sweep", "-i", str(series_file), "-o", str(out),
            "--fc-min", "60", "--fc-max", "200", "--grid", "2",
            "--m", "19", "--seed", "0",
            "--json", str(js), "--plot", str(fig),
        ]) == 0
        lines = out.read_text().strip().splitlines()
        assert lines[0].startswith("fc,stat,")
        assert len(lines) == 1 + 3 * 2  # two grid points, three statistics
        doc = json.loads(js.read_text())
        assert doc["classification"] in sk.CLASSIFICATIONS
        assert fig.stat().st_size > 1000  # a rendered PNG, not a stub

    def test_bad_bounds_exit_1(self, tmp_path, series_file):
        assert run(["sweep", "-i", str(series_file),
                    "-o", str(tmp_path / "s.csv"),
                    "--fc-min", "300", "--fc-max", "100",
                    "--seed", "0"]) == 1


class TestParsing:
    def test_no_command_is_exit_1(self):
        assert run([]) == 1

    def test_unknown_option_is_exit_1(self):
        assert run(["gen", "--nope"]) == 1

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(["--version"])
        assert exc.value.code == 0
        assert capsys.readouterr().out.strip() == sk.__version__

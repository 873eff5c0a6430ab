import numpy as np
import pytest

from ridgelab import cli
from ridgelab.cli import ConfigError, ExperimentConfig, parse_config, run


@pytest.fixture(autouse=True)
def _quiet_support_warning():
    import warnings
    with warnings.catch_warnings():
        warnings.filterwarnings("ignore", message="profile support")
        yield


MINIMAL = """
# smallest useful slice check
kind = radon-check
d = 2
trials = 3
"""


class TestParseConfig:
    def test_minimal_radon_check(self):
        config = parse_config(MINIMAL)
        assert config.kind == "radon-check"
        assert config.d == 2
        assert config.trials == 3

    def test_comments_and_blank_lines_ignored(self):
        config = parse_config("kind = inversion-check  # trailing\n\nd = 2\n")
        assert config.kind == "inversion-check"

    def test_duplicate_key_names_key_and_line(self):
        with pytest.raises(ConfigError, match="line 3.*'d'"):
            parse_config("kind = radon-check\nd = 2\nd = 3\n")

    def test_unknown_key(self):
        with pytest.raises(ConfigError, match="unknown key"):
            parse_config("kind = radon-check\nd = 2\nfrobnicate = 1\n")

    def test_d_zero_rejected(self):
        with pytest.raises(ConfigError, match="positive"):
            parse_config("kind = radon-check\nd = 0\n")

    def test_missing_equals_sign(self):
        with pytest.raises(ConfigError, match="line 1"):
            parse_config("kind radon-check\n")

    def test_empty_widths_rejected(self):
        with pytest.raises(ConfigError, match="widths"):
            parse_config("kind = rate-sweep\nd = 2\nwidths =\n")

    def test_non_increasing_widths_rejected(self):
        with pytest.raises(ConfigError, match="increasing"):
            parse_config("kind = rate-sweep\nd = 2\nwidths = 16, 16, 32\n")

    def test_widths_parse(self):
        config = parse_config("kind = rate-sweep\nd = 2\nwidths = 4, 8, 16\n")
        assert config.widths == (4, 8, 16)


class TestRun:
    def test_radon_check_report(self, tmp_path):
        config = parse_config(MINIMAL)
        report = run(config, out_dir=str(tmp_path))
        assert report.slopes["max_rel_err"] <= 1e-6
        text = (tmp_path / "radon-check.csv").read_text()
        assert text.splitlines()[3] == "trial,b,rel_err"
        assert text.splitlines()[-1].startswith("# wallclock")

    def test_variation_bound_report(self, tmp_path):
        config = ExperimentConfig(kind="variation-bound", d=1, k=0,
                                  sphere_level=4, line_n=1024)
        report = run(config, out_dir=str(tmp_path))
        assert np.isfinite(report.slopes["ratio"])
        assert report.slopes["ratio_drift"] < 0.05

    def test_tolerance_failure_still_writes_report(self, tmp_path):
        config = ExperimentConfig(kind="radon-check", d=2, trials=2,
                                  tolerance=1e-18)
        with pytest.raises(cli.NumericalCheckError):
            run(config, out_dir=str(tmp_path))
        assert (tmp_path / "radon-check.csv").exists()

    def test_rate_sweep_deterministic_body(self, tmp_path):
        text = ("kind = rate-sweep\nd = 2\nk = 1\nwidths = 8, 16, 32\n"
                "eval_count = 1024\nsphere_level = 6\nline_n = 512\n")
        bodies = []
        for sub in ("a", "b"):
            out = tmp_path / sub
            run(parse_config(text), out_dir=str(out))
            lines = (out / "rate-sweep.csv").read_text().splitlines()
            bodies.append("\n".join(l for l in lines
                                    if not l.startswith("# wallclock")))
        assert bodies[0] == bodies[1]

    def test_mollify_sweep_slope(self, tmp_path):
        config = ExperimentConfig(kind="mollify-sweep", d=1, s=1,
                                  epsilons=(0.25, 0.125, 0.0625),
                                  eval_count=128)
        report = run(config, out_dir=str(tmp_path))
        assert report.slopes["slope"] >= 0.8


class TestMain:
    def test_version_command(self, capsys):
        assert cli.main(["version"]) == 0
        assert "ridgelab" in capsys.readouterr().out

    def test_config_error_exit_code(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("kind = radon-check\nd = 0\n")
        assert cli.main(["run", str(path)]) == 2

    def test_missing_file_exit_code(self, tmp_path, capsys):
        assert cli.main(["run", str(tmp_path / "nope.cfg")]) == 4

    def test_run_and_eval_round_trip(self, tmp_path, capsys):
        from ridgelab import (GaussianSpec, LineGrid, from_quadrature,
                              make_gaussian, save, sphere_grid)
        f = make_gaussian(GaussianSpec(d=2))
        net = from_quadrature(f, 1, sphere_grid(2, 3), LineGrid(4.0, 64))
        netfile = tmp_path / "net.rn"
        save(net, netfile)
        pts = np.array([[0.0, 0.0], [0.3, -0.2]])
        ptsfile = tmp_path / "pts.csv"
        np.savetxt(ptsfile, pts, delimiter=",")
        assert cli.main(["eval", str(netfile), "--points",
                         str(ptsfile)]) == 0
        out = capsys.readouterr().out.strip().splitlines()
        np.testing.assert_allclose([float(v) for v in out], net(pts),
                                   rtol=1e-12)

"""Scenario parsing and the run/bounds CSV harness."""

import math

import pytest

from risgroups.cli import ScenarioError, load_scenario, main

SCENARIO = """
# comment line
mode = ps
rho = 0.4
scheme = sbgs
k = 2
metric = data
gamma_th_db = 3
sweep_variable = snr
sweep_grid = -56,-52,-48
n_trials = 4096
seed = 77
"""


@pytest.fixture
def scenario_file(tmp_path):
    path = tmp_path / "demo.cfg"
    path.write_text(SCENARIO, encoding="utf-8")
    return str(path)


class TestLoadScenario:
    def test_values_and_defaults(self, scenario_file):
        sc = load_scenario(scenario_file)
        assert sc.trial.mode.kind == "PS"
        assert sc.trial.mode.rho == pytest.approx(0.4)
        assert sc.trial.strategy.scheme == "SBGS"
        assert sc.trial.strategy.k == 2
        assert sc.trial.n_trials == 4096
        assert sc.trial.seed == 77
        assert sc.sweep_grid == [-56.0, -52.0, -48.0]
        # gamma_th in dB converted to a rate requirement
        assert sc.trial.r_req == pytest.approx(math.log2(1.0 + 10.0 ** 0.3))
        # untouched keys fall back to defaults
        assert sc.params.m_per_group == 20
        assert sc.params.p_tx == pytest.approx(1.0)

    def test_dbm_conversion(self, tmp_path):
        path = tmp_path / "p.cfg"
        path.write_text("p_tx_dbm = 0\n", encoding="utf-8")
        sc = load_scenario(str(path))
        assert sc.params.p_tx == pytest.approx(1e-3)

    def test_auto_energy_requirement(self, tmp_path):
        path = tmp_path / "e.cfg"
        path.write_text("e_req = auto\nmetric = energy\nscheme = ebgs\n")
        sc = load_scenario(str(path))
        m, b = sc.params.m_per_group, sc.budget
        assert sc.trial.e_req == pytest.approx(
            sc.params.t_s * (m * b.p_t + b.p_ph)
        )

    def test_unknown_key_reports_line(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("mode = ps\nspeed = 3\n", encoding="utf-8")
        with pytest.raises(ScenarioError, match=r"bad\.cfg:2.*'speed'"):
            load_scenario(str(path))

    def test_duplicate_key_rejected(self, tmp_path):
        path = tmp_path / "dup.cfg"
        path.write_text("seed = 1\nseed = 2\n", encoding="utf-8")
        with pytest.raises(ScenarioError, match="duplicate"):
            load_scenario(str(path))

    def test_missing_equals_rejected(self, tmp_path):
        path = tmp_path / "noeq.cfg"
        path.write_text("just a line\n", encoding="utf-8")
        with pytest.raises(ScenarioError, match=r"noeq\.cfg:1"):
            load_scenario(str(path))

    def test_invalid_physical_value_rejected(self, tmp_path):
        path = tmp_path / "neg.cfg"
        path.write_text("alpha = 1.0\n", encoding="utf-8")
        with pytest.raises(ScenarioError):
            load_scenario(str(path))


class TestRunCommand:
    def test_csv_layout(self, scenario_file, tmp_path):
        out = tmp_path / "out.csv"
        assert main(["run", scenario_file, "-o", str(out)]) == 0
        lines = out.read_text(encoding="utf-8").splitlines()
        meta = [l for l in lines if l.startswith("#")]
        data = [l for l in lines if not l.startswith("#")]
        assert any(l.startswith("# seed = 77") for l in meta)
        assert data[0] == (
            "sweep_value,analytic_outage,empirical_outage,"
            "ci_halfwidth,n_trials,scheme,k,mode"
        )
        assert len(data) == 1 + 3
        first = data[1].split(",")
        assert float(first[0]) == -56.0
        assert 0.0 <= float(first[1]) <= 1.0
        assert first[5:] == ["SBGS", "2", "PS"]

    def test_reruns_are_byte_identical(self, scenario_file, tmp_path):
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        main(["run", scenario_file, "-o", str(a)])
        main(["run", scenario_file, "-o", str(b), "--workers", "2"])
        assert a.read_bytes() == b.read_bytes()

    def test_overrides(self, scenario_file, tmp_path):
        out = tmp_path / "o.csv"
        main(["run", scenario_file, "-o", str(out), "--trials", "2048",
              "--seed", "5", "--k", "1"])
        text = out.read_text(encoding="utf-8")
        assert "# seed = 5" in text
        assert ",2048,SBGS,1,PS" in text

    def test_parse_error_returns_nonzero(self, tmp_path, capsys):
        path = tmp_path / "bad.cfg"
        path.write_text("bogus = 1\n", encoding="utf-8")
        assert main(["run", str(path), "-o", str(tmp_path / "x.csv")]) == 2
        assert "error:" in capsys.readouterr().err


class TestBoundsCommand:
    def test_csv_layout(self, tmp_path):
        path = tmp_path / "b.cfg"
        path.write_text(
            "rho_l = 0.1\nd_sr = 2\nd_rd = 3\nnoise_dbm = 17\n"
            "mode = ps\neh = linear\nr_req = 0.5\nn_draws = 10\nseed = 3\n",
            encoding="utf-8",
        )
        out = tmp_path / "b.csv"
        assert main(["bounds", str(path), "-o", str(out)]) == 0
        lines = [
            l for l in out.read_text(encoding="utf-8").splitlines()
            if not l.startswith("#")
        ]
        assert lines[0] == "channel_draw,lower,upper,feasible"
        assert len(lines) == 1 + 10
        row = lines[1].split(",")
        assert row[0] == "0"
        assert 0.0 <= float(row[1]) <= 1.0
        assert row[3] in ("true", "false")

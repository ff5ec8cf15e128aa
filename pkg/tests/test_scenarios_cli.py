import io
import subprocess
import sys

import numpy as np
import pytest

from xychain import groundstate, scenarios
from xychain.errors import CapabilityError, ConfigError
from xychain.model import ModelParams
from xychain.scenarios import parse_config_text, run_scenario, write_csv

BASE = """
model.lambda = 1.0
model.gamma = 0.0
scenario.kind = singlet_on_vacuum
scenario.i = 0
scenario.j = 1
grid.t_start = 0.0
grid.t_stop = 1.0
grid.dt = 0.5
grid.x_start = -1
grid.x_stop = 2
measures.list = concurrence, one_tangle
"""


def run_cli(*argv):
    proc = subprocess.run([sys.executable, "-m", "xychain", *argv],
                          capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_parse_roundtrip():
    cfg = parse_config_text(BASE)
    assert cfg.lam == 1.0 and cfg.gamma == 0.0
    assert cfg.kind == "singlet_on_vacuum"
    assert cfg.measure_list == ("concurrence", "one_tangle")
    assert list(cfg.sites()) == [-1, 0, 1, 2]
    assert np.allclose(cfg.times(), [0.0, 0.5, 1.0])


def test_parse_errors_carry_location():
    with pytest.raises(ConfigError, match=":2:"):
        parse_config_text("model.lambda = 1.0\nmodel.bogus = 3\n")
    with pytest.raises(ConfigError, match="duplicate"):
        parse_config_text(BASE + "model.gamma = 0.5\n")
    with pytest.raises(ConfigError, match="="):
        parse_config_text("model.lambda 1.0\n")
    with pytest.raises(ConfigError):
        parse_config_text(BASE.replace("model.gamma = 0.0",
                                       "model.gamma = high"))


def test_parse_requires_grid_and_measures():
    with pytest.raises(ConfigError, match="grid.dt"):
        parse_config_text(BASE.replace("grid.dt = 0.5\n", ""))
    with pytest.raises(ConfigError, match="measures.list"):
        parse_config_text(BASE.replace(
            "measures.list = concurrence, one_tangle\n", ""))
    with pytest.raises(ConfigError, match="unknown measure"):
        parse_config_text(BASE.replace("one_tangle", "entanglement"))


def test_parse_rejects_lambda_alias_conflict():
    with pytest.raises(ConfigError):
        parse_config_text(BASE + "model.lam = 2.0\n")
    # but the short spelling alone is fine
    cfg = parse_config_text(BASE.replace("model.lambda", "model.lam"))
    assert cfg.lam == 1.0


def test_parse_validates_scenario_shape():
    with pytest.raises(ConfigError):
        parse_config_text(BASE.replace("scenario.j = 1", "scenario.j = 0"))
    with pytest.raises(ConfigError):
        parse_config_text(BASE.replace("grid.dt = 0.5", "grid.dt = -1"))
    with pytest.raises(ConfigError, match="kind"):
        parse_config_text(BASE.replace("singlet_on_vacuum", "quench"))


def test_time_grid_endpoint():
    cfg = parse_config_text(BASE.replace("grid.dt = 0.5", "grid.dt = 0.3"))
    assert np.allclose(cfg.times(), [0.0, 0.3, 0.6, 0.9])
    with pytest.raises(ConfigError, match="t_stop"):
        parse_config_text(BASE.replace("grid.t_stop = 1.0",
                                       "grid.t_stop = -1.0"))


def test_vacuum_scenario_is_trivial_at_zero_gamma():
    text = BASE.replace("singlet_on_vacuum", "vacuum_only")
    text = text.replace("scenario.i = 0\n", "").replace("scenario.j = 1\n", "")
    text = text.replace("measures.list = concurrence, one_tangle",
                        "measures.list = concurrence, bell_fidelities")
    rows = run_scenario(parse_config_text(text))
    by_name = {}
    for name, x, t, v in rows:
        by_name.setdefault(name, []).append(v)
    assert np.allclose(by_name["concurrence"], 0.0, atol=1e-12)
    assert np.allclose(by_name["bell_fidelity_phi_minus"], 0.5, atol=1e-12)
    assert np.allclose(by_name["bell_fidelity_psi_plus"], 0.0, atol=1e-12)


def test_rows_are_deterministic_and_thread_safe():
    cfg = parse_config_text(BASE)
    rows1 = run_scenario(cfg)
    rows2 = run_scenario(cfg)
    rows3 = run_scenario(cfg, threads=3)
    assert rows1 == rows2 == rows3


def test_csv_format():
    cfg = parse_config_text(BASE)
    buf = io.StringIO()
    write_csv(run_scenario(cfg), buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "measure,x,t,value"
    name, x, t, v = lines[1].split(",")
    float(x), float(t), float(v)
    # 12 significant digits survive a round trip
    assert float(scenarios.format_value(1.0 / 3.0)) == pytest.approx(
        1.0 / 3.0, abs=1e-12)


def test_equilibrium_scenario_matches_direct_call():
    text = """
model.lambda = 1.0
model.gamma = 0.5
scenario.kind = ground_state_equilibrium
grid.t_start = 0.0
grid.t_stop = 1.0
grid.dt = 1.0
grid.x_start = 0
grid.x_stop = 0
measures.list = concurrence, tangle_deviation
"""
    rows = run_scenario(parse_config_text(text))
    con_rows = [r for r in rows if r[0] == "concurrence"]
    ref, _ = groundstate.gs_concurrence(ModelParams(lam=1.0, gamma=0.5), 1)
    assert len(con_rows) == 2  # static state, one row per time
    for _, _, _, v in con_rows:
        assert np.isclose(v, ref, atol=1e-12)
    # the state equals its own reference, so the deviation rows vanish
    for r in rows:
        if r[0].startswith("tangle_deviation"):
            assert abs(r[3]) < 1e-12


def test_analytic_engine_rejects_what_it_cannot_do():
    text = BASE.replace("singlet_on_vacuum", "singlet_knitted_gs")
    with pytest.raises(CapabilityError, match="oracle"):
        run_scenario(parse_config_text(text))
    # generic seed phase at gamma != 0 has no free-fermion reduction here
    text = BASE.replace("model.gamma = 0.0", "model.gamma = 0.5")
    text = text.replace("scenario.kind = singlet_on_vacuum",
                        "scenario.kind = psi_bell\nscenario.phi = 0.7")
    with pytest.raises(CapabilityError):
        run_scenario(parse_config_text(text))


def test_oracle_engine_agrees_with_analytic():
    text = BASE.replace("grid.t_stop = 1.0", "grid.t_stop = 1.5")
    cfg = parse_config_text(text)
    ana = run_scenario(cfg)
    orc = run_scenario(cfg, engine_name="oracle")
    assert len(ana) == len(orc)
    for (n1, x1, t1, v1), (n2, x2, t2, v2) in zip(ana, orc):
        assert (n1, x1, t1) == (n2, x2, t2)
        assert abs(v1 - v2) < 1e-4, (n1, x1, t1)


def test_oracle_engine_wraps_sites_on_the_ring():
    # ring geometry: site labels act modulo oracle_sites
    text = BASE.replace("grid.x_start = -1", "grid.x_start = 13")
    text = text.replace("grid.x_stop = 2", "grid.x_stop = 13")
    wrapped = run_scenario(parse_config_text(text), engine_name="oracle")
    text = BASE.replace("grid.x_start = -1", "grid.x_start = 1")
    text = text.replace("grid.x_stop = 2", "grid.x_stop = 1")
    direct = run_scenario(parse_config_text(text), engine_name="oracle")
    assert [(n, t, v) for n, _, t, v in wrapped] == \
        [(n, t, v) for n, _, t, v in direct]


def test_cli_run_and_out_file(tmp_path):
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text(BASE)
    code, out, err = run_cli("run", str(cfg))
    assert code == 0, err
    assert out.startswith("measure,x,t,value")
    out_file = tmp_path / "rows.csv"
    code, out2, err = run_cli("run", str(cfg), "--out", str(out_file))
    assert code == 0, err
    assert out_file.read_text() == out


def test_cli_exit_codes(tmp_path):
    missing = tmp_path / "nope.cfg"
    code, _, err = run_cli("run", str(missing))
    assert code == 2
    assert "error:" in err
    bad = tmp_path / "bad.cfg"
    bad.write_text(BASE + "model.bogus = 1\n")
    code, _, err = run_cli("run", str(bad))
    assert code == 2
    assert "bad.cfg" in err and "unknown key" in err
    knit = tmp_path / "knit.cfg"
    knit.write_text(BASE.replace("singlet_on_vacuum", "singlet_knitted_gs"))
    code, _, err = run_cli("run", str(knit))
    assert code == 2
    assert "oracle" in err


def test_cli_threads_flag(tmp_path):
    cfg = tmp_path / "scenario.cfg"
    cfg.write_text(BASE)
    code, out, _ = run_cli("run", str(cfg), "--threads", "2")
    assert code == 0
    code_s, out_s, _ = run_cli("run", str(cfg))
    assert out == out_s
    code, _, _ = run_cli("run", str(cfg), "--threads", "0")
    assert code == 2


def test_selftest_single_case_passes():
    from xychain.selftest import run_case

    report = run_case(0.0, 1.0, "vacuum_only", fast=True)
    assert report.ok
    assert report.cells > 0

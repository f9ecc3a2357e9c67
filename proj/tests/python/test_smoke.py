import math

import numpy as np
import pytest

import wblab


def test_symbols():
    assert wblab.t_mu(0.0, 1.0) == 1.0
    assert wblab.t_mu(2.0, 0.25) == pytest.approx(math.tanh(1.0))
    assert wblab.m_symbol(-1.0, 1) == pytest.approx(-wblab.m_symbol(1.0, 1))
    assert wblab.check_admissible("8", "4", 1)
    assert not wblab.check_admissible("8", "4", 2)


def test_cosine_spectrum():
    n, L = 32, 2 * math.pi
    x = np.arange(n) * L / n
    c = wblab.forward(np.cos(3 * x), L)
    assert c[3] == pytest.approx(0.5)


def test_propagation_is_unitary():
    rng = np.random.default_rng(3)
    f = rng.standard_normal(256)
    u = wblab.propagate(f, 40.0, 0.1, 10.0)
    assert u.dtype == np.complex128
    assert np.linalg.norm(u) == pytest.approx(np.linalg.norm(f), rel=1e-12)
    g = rng.standard_normal((32, 32))
    assert wblab.propagate(g, 10.0, 1.0, 3.0).shape == (32, 32)


def test_sobolev_norm_of_cosine():
    n, L = 64, 2 * math.pi
    x = np.arange(n) * L / n
    assert wblab.sobolev_norm(np.cos(2 * x), L, 1.0) == pytest.approx(math.sqrt(5 * math.pi))


def test_simulate_and_norms():
    out = wblab.simulate("wb1d", 0.2, 1.0, 256, 32 * math.pi, "potential_gradient(3, 0, 2, 0.5)",
                         dt=0.05, t_end=1.0, stop_on_double=False)
    assert out["termination"] == "horizon"
    assert out["times"][-1] == pytest.approx(1.0)
    assert abs(out["records"][-1]["mass"] - out["records"][0]["mass"]) < 1e-10
    s = wblab.initial_state("wb1d", 256, 32 * math.pi, "potential_gradient(3, 0, 2, 0.5)", eps=0.2)
    r = wblab.norms("wb1d", s["eta"], s["v"], 32 * math.pi, eps=0.2)
    assert r["vsmu"] == pytest.approx(out["records"][0]["vsmu"])


def test_diagonalize_shapes():
    s = wblab.initial_state("wb2d", 32, 16 * math.pi, "potential_gradient(1, 0.25, 1.5, 0.5)")
    up, um = wblab.diagonalize(s["eta"], s["v"], 16 * math.pi, 1.0)
    assert up.shape == (32, 32)
    assert np.max(np.abs((up + um).imag)) < 1e-12


def test_errors_map_to_python():
    with pytest.raises(ValueError):
        wblab.simulate("kdv", 0.1, 1.0, 64, 10.0, "gaussian(1, 1)")
    with pytest.raises(ValueError):
        wblab.initial_state("whitham1d", 64, 10.0, "blob(1)")


def test_decay_and_lifespan():
    d = wblab.decay_test(1, 1.0, 8.0)
    assert -0.6 <= d["slope"] <= -0.4
    r = wblab.lifespan_sweep("whitham1d", eps=[0.4, 0.8], mus=[1.0], n=512)
    times = [p["t_double"] for p in r["points"]]
    assert times[1] < times[0]


def test_run_subcommand(tmp_path):
    cfg = tmp_path / "c.yaml"
    cfg.write_text("scaling:\n  fields: 1\n")
    code, log = wblab.run("scaling-test", str(cfg), out=str(tmp_path / "out"))
    assert code == 0, log
    assert (tmp_path / "out" / "scaling.csv").exists()
    assert "norms" in wblab.subcommands()

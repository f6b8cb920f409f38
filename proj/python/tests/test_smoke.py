import math

import numpy as np
import pytest

import hallmhd as hm


CUBIC = (1.0, 2.0 ** (1 / 3), 4.0 ** (1 / 3))


def test_lattice_layout():
    lat = hm.Lattice(16)
    assert lat.n_grid == 16
    assert lat.padded_grid == 24
    assert lat.alias_free
    assert not hm.Lattice(16, (1, 1)).alias_free
    assert lat.wavevector(15, 1, 8) == (-1, 1, 8)
    mask = lat.mask()
    assert mask.shape == (16, 16, 16)
    assert not mask[8, 0, 0]  # Nyquist plane dropped
    assert mask[1, 2, 3]


def test_diophantine():
    c, k = hm.min_product((1.0, 0.0, 0.0), 2.5, 4)
    assert c == 0.0
    dv = hm.DiophantineVector(CUBIC, 2.5, 64)
    assert dv.usable
    assert dv.c_est == pytest.approx(0.61819992374792093, rel=1e-14)
    assert dv.argmin in [(-1, 1, 0), (1, -1, 0)]
    assert hm.check_condition(dv, 0.5 * dv.c_est)["holds"]
    assert not hm.check_condition(dv, 2.0 * dv.c_est)["holds"]
    suggested, name, accepted = hm.suggest_background(2.5, 16, 1.0)
    assert accepted and suggested.c_est > 0
    assert suggested.norm() == pytest.approx(1.0)


def test_sobolev_norm_of_a_sine():
    # b2 = sin(x1) has L2 norm^2 = (2 pi)^3 / 2 and weight (1 + 1)^s.
    lat = hm.Lattice(8)
    b = np.zeros((3, 8, 8, 8), dtype=complex)
    b[1, 1, 0, 0] = -0.5j
    b[1, 7, 0, 0] = 0.5j
    l2 = math.sqrt(4 * math.pi ** 3)
    assert hm.sobolev_norm(b, lat, 0.0) == pytest.approx(l2, rel=1e-14)
    assert hm.sobolev_norm(b, lat, 2.0) == pytest.approx(2.0 * l2, rel=1e-14)
    with pytest.raises(ValueError):
        hm.sobolev_norm(b[:, :4], lat, 0.0)


def test_projection_and_identities():
    lat = hm.Lattice(16)
    u = hm.random_solenoidal(lat, 3, 8.0, 2.0)
    assert hm.max_divergence(u, lat) < 1e-12
    grad = np.zeros((3, 16, 16, 16), dtype=complex)
    grad[0, 1, 0, 0] = 1j * 0.5
    grad[0, 15, 0, 0] = -1j * 0.5
    assert np.abs(hm.leray_project(grad, lat)).max() == 0.0

    dv = hm.DiophantineVector((0.3, -0.4, 0.5), 2.5, 8)
    s = hm.State(lat, dv)
    s.u = u
    s.b = hm.random_solenoidal(lat, 4, 8.0, 2.0)
    res = hm.identity_suite(s, lat)
    assert list(res) == hm.identity_names()
    assert max(res.values()) < 1e-11


def test_step_keeps_invariants():
    lat = hm.Lattice(16)
    dv = hm.DiophantineVector(CUBIC, 2.5, lat.covering_radius)
    s = hm.State(lat, dv)
    s.u, s.b = hm.initial_data(lat, 1, 4.0, 1e-2)
    A = hm.choose_A(dv)
    e0 = hm.energy_E(s, lat, A)
    dt, limiter, clamped = hm.choose_dt(s, lat)
    assert dt > 0 and not clamped
    for _ in range(5):
        s = hm.step(s, lat, dt)
    assert s.t == pytest.approx(5 * dt)
    assert hm.max_divergence(s.u, lat) < 1e-12
    assert hm.energy_E(s, lat, A) < e0
    rep = hm.report(s, lat, A, [3.0])
    assert rep["E"] == pytest.approx(hm.energy_E(s, lat, A))
    assert 3.0 in rep["hs"]


def test_checkpoint_round_trip(tmp_path):
    lat = hm.Lattice(8)
    dv = hm.DiophantineVector(CUBIC, 2.5, 4)
    s = hm.State(lat, dv)
    s.u, s.b = hm.initial_data(lat, 9, 2.0, 1.0, 3.0)
    s.t = 0.125
    path = tmp_path / "x.hmhd"
    hm.save_checkpoint(path, s, lat)
    lat2, s2 = hm.load_checkpoint(path)
    assert lat2.n_grid == 8
    assert s2.t == 0.125
    assert hm.bit_equal(s, s2)
    with pytest.raises(hm.CheckpointError):
        hm.load_checkpoint(tmp_path / "missing.hmhd")


def test_simulate_small_run():
    cfg = {"n_grid": 8, "epsilon": 1e-3, "t_end": 0.2, "sample_every": 2, "hs": [3.0]}
    out = hm.simulate(cfg)
    assert not out["blew_up"]
    series = out["series"]
    assert series[0]["t"] == 0.0
    assert series[-1]["t"] == pytest.approx(0.2, abs=1e-15)
    energies = [r["E"] for r in series]
    assert all(b <= a for a, b in zip(energies, energies[1:]))
    assert out["dv"].c_est > 0
    assert "n_grid = 8" in hm.print_config(cfg)
    with pytest.raises(hm.ConfigError):
        hm.simulate({"n_grid": 8, "epsilon": 1e-3, "t_end": 1.0, "r": 1.5})


def test_predicted_exponent():
    assert hm.predicted_decay_exponent(6.5, 17.0, 2.5) == pytest.approx(1.5)

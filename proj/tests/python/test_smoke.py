import math

import numpy as np
import pytest

import dgbo


def test_strichartz_endpoint():
    assert dgbo.strichartz_gamma(math.inf, 2.0, 2.0) == pytest.approx(1.0)


def test_critical_index():
    assert dgbo.critical_index(2.0, 4) == pytest.approx(0.0)


def test_mass_of_sine():
    g = dgbo.Grid(64, 2 * math.pi)
    u = dgbo.Field.from_values(g, list(np.sin(np.asarray(g.xs()))))
    assert dgbo.mass(u) == pytest.approx(math.pi, rel=1e-14)


def test_phase_example():
    assert dgbo.phase(1.0, 0.5, -0.25, 0.0, 2.0) == pytest.approx(
        1.25**3 - 1.0 - 0.125 - (-0.015625)
    )


def test_zero_data_stays_zero():
    g = dgbo.Grid(64, 20.0)
    field, rows = dgbo.run(dgbo.Field.zeros(g), dgbo.EquationParams(), dgbo.SolverConfig(dt=0.01, t_end=0.1))
    assert np.all(field.values == 0.0)
    assert len(rows) == 11
    assert all(r["mass"] == 0.0 for r in rows)


def test_run_conserves_mass():
    g = dgbo.Grid(128, 50.0)
    u0 = dgbo.gaussian(g, 0.5, 2.0)
    field, _ = dgbo.run(u0, dgbo.EquationParams(alpha=2.0, k=2), dgbo.SolverConfig(dt=0.005, t_end=0.5))
    assert dgbo.mass(field) == pytest.approx(dgbo.mass(u0), rel=1e-10)


def test_bad_params_raise():
    with pytest.raises(Exception):
        dgbo.EquationParams(alpha=0.5)


def test_cheap_criterion():
    ids = dict(dgbo.acceptance_ids())
    assert len(ids) == 13
    r = dgbo.run_criterion(1)
    assert r["pass"]

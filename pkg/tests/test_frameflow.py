import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagiso.errors import InvalidParameter, NumericalBlowup, SystemMismatch
from lagiso.frameflow import (
    FrameState,
    Type1System,
    Type2CPSystem,
    Type2FlatSystem,
    closed_form,
    compare_with_closed_form,
    conserved_r,
    fit_lambda_phase,
    integrate_rk4,
    observed_order,
    pde_residual,
    system_for,
    type2_rhs,
)

TWO_PI = (0.0, 2 * math.pi)


@pytest.mark.parametrize("c, state, want", [(1, (-1, 0), (0, 0)), (0, (0, 2.5), (2.5, 0)), (1, (0, 1), (1, -1))])
def test_type2_rhs(c, state, want):
    np.testing.assert_array_equal(type2_rhs(c, state), want)


def test_rk4_returns_after_one_period():
    y0 = np.array([-1.0, 2.0])
    traj = integrate_rk4(lambda u, y: type2_rhs(1, y), y0, TWO_PI, 1e-3)
    assert traj.u[-1] == TWO_PI[1]
    assert np.abs(traj.end - y0).max() <= 1e-8


def test_rk4_sine():
    traj = integrate_rk4(lambda u, y: type2_rhs(0, y), [0.0, 1.0], TWO_PI, 1e-3)
    assert np.abs(traj.y[:, 0] - np.sin(traj.u)).max() <= 1e-8


def test_rk4_zero_rhs_constant():
    traj = integrate_rk4(lambda u, y: np.zeros_like(y), [0.3, -4.0], (0.0, 1.0), 0.1)
    assert np.all(traj.y == [0.3, -4.0])


def test_rk4_step_lands_on_endpoint():
    traj = integrate_rk4(lambda u, y: np.zeros_like(y), [0.0], (0.0, 1.0), 0.3)
    assert len(traj.u) == 5 and traj.u[-1] == 1.0


@pytest.mark.parametrize("step", [0.0, -1e-3, math.nan, math.inf])
def test_rk4_rejects_bad_step(step):
    with pytest.raises(InvalidParameter):
        integrate_rk4(lambda u, y: y, [1.0], (0.0, 1.0), step)


def test_rk4_blowup():
    with pytest.raises(NumericalBlowup):
        integrate_rk4(lambda u, y: y * y, [1.0], (0.0, 10.0), 0.01)


def test_closed_form_examples():
    s = closed_form(1, 0, np.linspace(0, 5, 4))
    np.testing.assert_array_equal(s.lam, -1)
    np.testing.assert_array_equal(s.beta, 0)
    s = closed_form(0, 1, math.pi / 2)
    assert float(s.lam) == 1 and abs(float(s.beta)) < 1e-16
    with pytest.raises(InvalidParameter):
        closed_form(0, -1, 0.0)


def test_conserved_r_examples():
    assert conserved_r(1, FrameState(-1.0, 0.0)) == 0
    u = np.linspace(0, 6, 13)
    np.testing.assert_allclose(conserved_r(0, np.stack([np.sin(u), np.cos(u)], -1)), 1, atol=1e-15)


@pytest.mark.parametrize("c", [0, 1])
@pytest.mark.parametrize("r", [0, 0.5, 1, 2])
def test_rk4_matches_closed_form(c, r):
    cmp = compare_with_closed_form(c, r, TWO_PI, 1e-3)
    assert cmp.max_dev <= 1e-8
    assert cmp.r_drift <= 1e-9


@pytest.mark.parametrize("c, r", [(0, 1), (1, 2), (1, 0.5)])
def test_fourth_order(c, r):
    exact = closed_form(c, r, TWO_PI[1]).as_array()
    err = [np.abs(compare_with_closed_form(c, r, TWO_PI, s).endpoint - exact).sum() for s in (0.2, 0.1)]
    assert 12 <= err[0] / err[1] <= 20
    assert 3.8 <= observed_order(c, r, TWO_PI, 0.1) <= 4.2


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([0.0, 1.0]), st.floats(0, 3), st.floats(-3, 3))
def test_conserved_quantity_along_flow(c, r, u0):
    cmp = compare_with_closed_form(c, r, (u0, u0 + 3.0), 1e-2)
    assert cmp.r_drift <= 1e-9


@given(st.floats(0.1, 3), st.floats(-3, 3), st.sampled_from([0.0, 1.0]))
def test_phase_fit_recovers_shift(r, u0, c):
    u = np.linspace(-3, 3, 41)
    fitted, dev = fit_lambda_phase(u, -c + r * np.sin(u + u0), c, r)
    assert dev <= 1e-10
    assert math.isclose(math.remainder(fitted - u0, 2 * math.pi), 0, abs_tol=1e-9)


@pytest.mark.parametrize("label, bound", [("flat-r0", 1e-10), ("flat-r1", 1e-9), ("cp-r0", 1e-9), ("cp-r0.5", 1e-9),
                                           ("cp-r1", 1e-9), ("cp-r2", 1e-9), ("type1", 1e-9)])
def test_pde_systems(families, label, bound):
    imm = families[label]
    U, V = imm.chart.grid(11, 11)
    res = pde_residual(imm, system_for(imm), U, V)
    assert len(res) == 3
    for name, values in res.items():
        assert values.max() <= bound, name


def test_pde_system_mismatch(families):
    with pytest.raises(SystemMismatch):
        pde_residual(families["flat-r1"], Type2CPSystem(1.0), 0.0, 0.0)
    with pytest.raises(SystemMismatch):
        pde_residual(families["flat-r1"], Type2FlatSystem(2.0), 0.0, 0.0)
    with pytest.raises(SystemMismatch):
        pde_residual(families["cp-r1"], Type1System(), 0.0, 0.0)
    with pytest.raises(SystemMismatch):
        system_for(families["plane"])

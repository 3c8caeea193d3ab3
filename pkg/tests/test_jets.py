import dataclasses

import numpy as np
import pytest

from lagiso.ambient import FLAT
from lagiso.errors import NoExactJet, OutOfChart
from lagiso.families import FLAT_R0_A1, FLAT_R0_A2_DERIVATION as A2
from lagiso.jets import EXACT, SLOTS, Chart, FiniteDifference, Immersion, Jet2, eval_jet2, fd_validate


def _circle_line():
    def evaluate(u, v):
        u, v = np.asarray(u, float), np.asarray(v, float)
        return np.stack([np.exp(1j * u), v + 0j], -1)

    def jet(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, float), np.asarray(v, float))
        e, z, o = np.exp(1j * u), np.zeros(u.shape, complex), np.ones(u.shape, complex)
        pair = lambda a, b: np.stack([a, b], -1)
        return Jet2(pair(e, v + 0j), pair(1j * e, z), pair(z, o), pair(-e, z), pair(z, z), pair(z, z))

    return Immersion("circle-line", FLAT, Chart(-1, 1, -1, 1), evaluate, jet)


def test_exact_jet_analytic():
    j = eval_jet2(_circle_line(), 0.0, 0.0)
    np.testing.assert_allclose(j.fu, [1j, 0])
    np.testing.assert_allclose(j.fuu, [-1, 0])
    np.testing.assert_allclose(j.fv, [0, 1])
    np.testing.assert_allclose(j.fuv, [0, 0])
    np.testing.assert_allclose(j.fvv, [0, 0])


def test_flat_r0_jet_at_origin(families):
    j = eval_jet2(families["flat-r0"], 0.0, 0.0)
    np.testing.assert_allclose(j.f, A2, atol=1e-15)
    np.testing.assert_allclose(j.fu, 1j * A2, atol=1e-15)
    np.testing.assert_allclose(j.fv, FLAT_R0_A1, atol=1e-15)
    np.testing.assert_allclose(j.fuv, 1j * FLAT_R0_A1, atol=1e-15)
    np.testing.assert_allclose(j.fvv, [0, 0], atol=1e-15)


@pytest.mark.parametrize("label", ["type1", "flat-r1", "cp-r1"])
def test_fd_matches_exact(families, label):
    imm = families[label]
    U, V = imm.chart.grid(5, 5, 0.01)
    check = fd_validate(imm, U, V, 1e-4, 1e-6)
    assert check.passed, check.to_dict()
    assert set(check.info["slot_max"]) == set(SLOTS)


def test_fd_validate_catches_dropped_fuv(families):
    imm = families["flat-r1"]

    def broken(u, v):
        j = imm.exact_jet(u, v)
        return dataclasses.replace(j, fuv=np.zeros_like(j.fuv))

    bad = dataclasses.replace(imm, exact_jet=broken)
    U, V = imm.chart.grid(5, 5, 0.01)
    check = fd_validate(bad, U, V)
    assert not check.passed
    assert check.info["slot_max"]["fuv"] > 1e-2


@pytest.mark.parametrize("label", ["type1", "flat-r1", "cp-r0.5", "cp-r2"])
def test_fd_second_order_convergence(families, label):
    imm = families[label]
    U, V = imm.chart.grid(7, 7, 0.1)
    exact = eval_jet2(imm, U, V)
    coarse = eval_jet2(imm, U, V, FiniteDifference(1e-2)).deviation(exact).max(axis=0)
    fine = eval_jet2(imm, U, V, FiniteDifference(5e-3)).deviation(exact).max(axis=0)
    k = int(np.argmax(coarse))
    assert 3.5 <= coarse[k] / fine[k] <= 4.5


@pytest.mark.parametrize("label", ["type1", "flat-r0", "flat-r1", "cp-r0", "cp-r0.5", "cp-r1", "cp-r2"])
def test_mixed_partials_commute(families, label):
    imm = families[label]
    h = 1e-4
    U, V = imm.chart.grid(5, 5, 0.01)
    F = imm.evaluate
    du = lambda g: lambda u, v: (g(u + h, v) - g(u - h, v)) / (2 * h)
    dv = lambda g: lambda u, v: (g(u, v + h) - g(u, v - h)) / (2 * h)
    uv = du(dv(F))(U, V)
    vu = dv(du(F))(U, V)
    assert np.max(np.abs(uv - vu)) <= 1e-6


def test_out_of_chart_and_missing_jet(families):
    imm = families["flat-r1"]
    with pytest.raises(OutOfChart):
        eval_jet2(imm, 10.0, 0.0)
    lo = imm.chart.u0
    eval_jet2(imm, lo, 0.0, EXACT)
    with pytest.raises(OutOfChart):
        eval_jet2(imm, lo, 0.0, FiniteDifference(1e-4))
    with pytest.raises(NoExactJet):
        eval_jet2(dataclasses.replace(imm, exact_jet=None), 0.0, 0.0)


def test_chart_grid_row_major():
    U, V = Chart(0, 1, 0, 2).grid(2, 3)
    np.testing.assert_array_equal(U, [0, 0, 0, 1, 1, 1])
    np.testing.assert_array_equal(V, [0, 1, 2, 0, 1, 2])

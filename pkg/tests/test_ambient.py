import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagiso.ambient import (
    FLAT,
    SPHERE,
    CausalCharacter,
    causal_character,
    cvec,
    herm,
    horizontality_defect,
    inner,
    jmul,
    sphere_defect,
)
from lagiso.errors import DimensionMismatch, WrongAmbient

S = 1 / np.sqrt(2)

finite = st.floats(-10, 10, allow_nan=False)
cpair = st.tuples(finite, finite, finite, finite).map(lambda t: cvec(t[0] + 1j * t[1], t[2] + 1j * t[3]))


def test_herm_sign_convention():
    assert herm(FLAT, cvec(1, 0), cvec(1, 0)) == -1
    assert herm(SPHERE, cvec(0, 0, 1), cvec(0, 0, 1)) == 1


def test_herm_mixed_value():
    # -z1 conj(w1) + z2 conj(w2) = i/2 + i/2
    z = cvec(S, S)
    w = cvec(1j * S, -1j * S)
    assert herm(FLAT, z, w) == pytest.approx(1j, abs=1e-15)


def test_herm_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        herm(FLAT, cvec(1, 0, 0), cvec(1, 0, 0))
    with pytest.raises(DimensionMismatch):
        inner(SPHERE, cvec(1, 0), cvec(1, 0))


@pytest.mark.parametrize(
    "z, w, expected",
    [
        ((1, 0), (1j, 0), 0.0),
        ((S, S), (1j * S, -1j * S), 0.0),
        ((0, 1), (0, 1), 1.0),
        ((1, 0), (1, 0), -1.0),
    ],
)
def test_inner_values(z, w, expected):
    assert inner(FLAT, cvec(*z), cvec(*w)) == pytest.approx(expected, abs=1e-15)


def test_jmul():
    np.testing.assert_array_equal(jmul(cvec(1, 0)), cvec(1j, 0))
    z = cvec(2 - 1j, 0.5j)
    np.testing.assert_array_equal(jmul(jmul(z)), -z)
    assert abs(inner(FLAT, jmul(cvec(S, S)), cvec(S, S))) < 1e-15


@pytest.mark.parametrize(
    "v, expected",
    [
        ((1, 0), CausalCharacter.TIMELIKE),
        ((S, S), CausalCharacter.LIGHTLIKE),
        ((0, 1), CausalCharacter.SPACELIKE),
    ],
)
def test_causal_character(v, expected):
    assert causal_character(FLAT, cvec(*v)) is expected


def test_sphere_and_horizontality_examples():
    assert sphere_defect(SPHERE, cvec(0, 0, 1)) == 0
    assert sphere_defect(SPHERE, cvec(1, 0, 0)) == 2
    f = cvec(0, 0, 1)
    assert horizontality_defect(SPHERE, f, cvec(1, 0, 0), cvec(0, 1, 0)) == 0
    assert horizontality_defect(SPHERE, f, cvec(0, 0, 1j), cvec(0, 1, 0)) == pytest.approx(1)


def test_sphere_ops_reject_flat():
    with pytest.raises(WrongAmbient):
        sphere_defect(FLAT, cvec(1, 0))
    with pytest.raises(WrongAmbient):
        horizontality_defect(FLAT, cvec(1, 0), cvec(0, 1), cvec(0, 1))


def test_batched_inner():
    z = np.array([[1, 0], [0, 1], [S, S]], dtype=complex)
    np.testing.assert_allclose(inner(FLAT, z, z), [-1, 1, 0], atol=1e-15)


@given(cpair, cpair)
def test_herm_is_hermitian(z, w):
    assert abs(herm(FLAT, z, w) - np.conj(herm(FLAT, w, z))) <= 1e-14 * max(1.0, np.abs(z).max() * np.abs(w).max())


@given(cpair, cpair)
def test_inner_j_invariant(z, w):
    assert abs(inner(FLAT, jmul(z), jmul(w)) - inner(FLAT, z, w)) <= 1e-14 * max(1.0, np.abs(z).max() * np.abs(w).max())


@settings(max_examples=200)
@given(cpair, st.floats(1e-3, 1e3).flatmap(lambda a: st.sampled_from([a, -a])))
def test_causal_character_scale_invariant(v, a):
    if np.linalg.norm(v) < 1e-6:
        return
    assert causal_character(FLAT, a * v) is causal_character(FLAT, v)

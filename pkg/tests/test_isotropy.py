import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lagiso.ambient import FLAT
from lagiso.errors import NotLightlikeIsotropic, NullVector
from lagiso.isotropy import (
    PointType,
    assess_point,
    classify_batch,
    classify_point,
    isotropy_ratio,
    lightlike_isotropy_test,
    minimal_normal_form,
    pseudo_isotropy_test,
    recover_lambda,
    type1_normal_form,
    type2_normal_form,
)
from lagiso.jets import eval_jet2
from lagiso.shape import SecondFundamental, induced_metric, minimality_defect, null_frame, second_fundamental

coef = st.floats(-3, 3, allow_nan=False)
positive = st.floats(0.2, 3)


def _h(imm, u=0.0, v=0.0, frame=None):
    jet = eval_jet2(imm, u, v)
    frame = frame or null_frame(induced_metric(imm.ambient, jet))
    return second_fundamental(imm.ambient, jet, frame)


def _rescale(h, a):
    """Coefficients after E1 -> a E1, E2 -> E2 / a."""
    e = np.array([1, -1])
    power = e[:, None, None] + e[None, :, None] - e[None, None, :]
    return SecondFundamental.from_coefficients(h.coeffs * float(a) ** power)


def test_ratio_on_plane(families):
    assert isotropy_ratio(_h(families["plane"]), [1, 1]) == 0


@given(coef, coef, st.tuples(coef, coef).filter(lambda w: abs(w[0] * w[1]) > 1e-3))
def test_minimal_ratio_is_half_product(lam, mu, w):
    assert isotropy_ratio(minimal_normal_form(lam, mu), w) == pytest.approx(lam * mu / 2, abs=1e-10)


def test_flat_r0_not_isotropic(families):
    h = _h(families["flat-r0"])
    assert abs(isotropy_ratio(h, [1, 1]) - isotropy_ratio(h, [1, 2])) > 0.1


@pytest.mark.parametrize("w", [[1, 0], [0, 2]])
def test_ratio_rejects_null(w):
    with pytest.raises(NullVector):
        isotropy_ratio(type2_normal_form(1.0), w)


def test_pseudo_isotropy_examples(families):
    assert tuple(pseudo_isotropy_test(_h(families["plane"]))) == (True, 0.0)
    passed, lam = pseudo_isotropy_test(minimal_normal_form(2, 3))
    assert passed and lam == pytest.approx(3, abs=1e-12)
    result = pseudo_isotropy_test(_h(families["type1"]))
    assert not result.passed and result.lambda_tilde is None
    assert result.witness == (1, 1, 1, 2)


def test_lightlike_examples(families):
    assert lightlike_isotropy_test(_h(families["plane"]))
    assert lightlike_isotropy_test(_h(families["flat-r0"]))
    c = np.zeros((2, 2, 2))
    c[0, 0] = [1, 1]
    assert not lightlike_isotropy_test(SecondFundamental.from_coefficients(c))


def test_classify_examples(families):
    assert classify_point(_h(families["plane"])) is PointType.MINIMAL
    for label, want in (("type1", PointType.TYPE1), ("flat-r1", PointType.TYPE2)):
        imm = families[label]
        U, V = imm.chart.grid(9, 9, 0.01)
        types = classify_batch(_h(imm, U, V))
        assert all(t is want for t in types)


def test_classify_requires_lightlike():
    c = np.zeros((2, 2, 2))
    c[0, 0] = [1, 1]
    with pytest.raises(NotLightlikeIsotropic):
        classify_point(SecondFundamental.from_coefficients(c))


@pytest.mark.parametrize("a", [0.5, 2, 10])
@pytest.mark.parametrize("label", ["plane", "type1", "flat-r0", "flat-r1", "cp-r0.5", "cp-r2"])
def test_classification_frame_scale_invariant(families, label, a):
    imm = families[label]
    jet = eval_jet2(imm, 0.2, 0.3)
    frame = null_frame(induced_metric(imm.ambient, jet))
    base = second_fundamental(imm.ambient, jet, frame)
    moved = second_fundamental(imm.ambient, jet, frame.rescaled(a))
    assert classify_point(moved) is classify_point(base)
    np.testing.assert_allclose(moved.coeffs, _rescale(base, a).coeffs, atol=1e-10 * a**3)


@pytest.mark.parametrize("a", [0.5, 2, 10])
@pytest.mark.parametrize("form, kind", [(type1_normal_form, PointType.TYPE1), (type2_normal_form, PointType.TYPE2)])
def test_recovered_lambda_frame_scale_invariant(form, kind, a):
    h = form(1.7)
    assert recover_lambda(h, kind) == pytest.approx(1.7, abs=1e-14)
    assert recover_lambda(_rescale(h, a), kind) == pytest.approx(1.7, rel=1e-12)


@settings(max_examples=150)
@given(st.one_of(
    st.tuples(st.just("minimal"), coef, coef),
    st.tuples(st.just("type1"), positive, st.just(0.0)),
    st.tuples(st.just("type2"), positive, st.just(0.0)),
))
def test_pseudo_isotropic_iff_minimal(case):
    kind, lam, mu = case
    h = {"minimal": lambda: minimal_normal_form(lam, mu),
         "type1": lambda: type1_normal_form(lam),
         "type2": lambda: type2_normal_form(lam)}[kind]()
    result = pseudo_isotropy_test(h)
    minimal = minimality_defect(h) <= 1e-9
    assert result.passed == minimal
    if minimal:
        assert result.lambda_tilde == pytest.approx(lam * mu / 2, abs=1e-10)
        assert lightlike_isotropy_test(h)
    else:
        raw = result.residual * max(1.0, h.coeff_norm_sq())
        assert raw >= 0.1 * h.coeff_norm_sq()


@settings(max_examples=100)
@given(st.lists(coef, min_size=8, max_size=8))
def test_pseudo_isotropy_implies_lightlike(values):
    c = np.array(values).reshape(2, 2, 2)
    c[1, 0] = c[0, 1]
    h = SecondFundamental.from_coefficients(c)
    verdict = assess_point(h)
    if verdict.pseudo_isotropic:
        assert verdict.lightlike_isotropic

"""Pseudo-isotropy, lightlike isotropy and the Minimal / Type1 / Type2 point classification.

Everything works on a `SecondFundamental` at a single point or a batch of
points. Residuals are divided by max(1, |h|^2) over the frame coefficients so
that tolerances do not depend on the scale of h.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import NotLightlikeIsotropic, NullVector
from .shape import SecondFundamental, minimality_defect

DEFAULT_TOL = 1e-6
FD_TOL = 1e-4


class PointType(enum.Enum):
    MINIMAL = "Minimal"
    TYPE1 = "Type1"
    TYPE2 = "Type2"


def _scale(h: SecondFundamental) -> np.ndarray:
    return np.maximum(1.0, h.coeff_norm_sq())


def _metric(h: SecondFundamental, x, y) -> np.ndarray:
    return np.einsum("...i,...ij,...j->...", x, h.gram, y)


def isotropy_ratio(h: SecondFundamental, w) -> float:
    """<h(w,w), h(w,w)> / <w,w>^2 for w = w1 E1 + w2 E2."""
    w = np.asarray(w, dtype=float)
    ww = _metric(h, w, w)
    if np.any(np.abs(ww) <= 1e-9):
        raise NullVector("isotropy ratio is undefined on null vectors")
    hw = h.at_vector(w)
    return _metric(h, hw, hw) / ww**2


@dataclass
class PseudoIsotropy:
    passed: bool
    lambda_tilde: Optional[float]
    residual: float
    witness: Optional[tuple[int, int, int, int]] = None

    def __iter__(self):
        yield self.passed
        yield self.lambda_tilde


_TUPLES = tuple(itertools.product((0, 1), repeat=4))


def polarized_residuals(h: SecondFundamental, lambda_tilde) -> np.ndarray:
    """Residuals of the polarized isotropy identity for all 16 frame tuples, normalized.

    Shape (..., 16) in lexicographic tuple order.
    """
    G = h.gram
    out = []
    for x, y, z, w in _TUPLES:
        lhs = h.pair(x, y, z, w) + h.pair(y, z, x, w) + h.pair(z, x, y, w)
        sym = (
            G[..., x, y] * G[..., z, w]
            + G[..., y, z] * G[..., x, w]
            + G[..., z, x] * G[..., y, w]
        )
        out.append(np.abs(lhs - lambda_tilde * sym))
    return np.stack(out, -1) / _scale(h)[..., None]


def pseudo_isotropy_test(h: SecondFundamental, tol: float = DEFAULT_TOL) -> PseudoIsotropy:
    """Single-point test: estimate lambda~ at E1 + E2, then check all 16 polarized tuples.

    The witness is the first tuple (lexicographic, 1-based) whose residual
    exceeds `tol`.
    """
    lam = float(isotropy_ratio(h, [1.0, 1.0]))
    res = polarized_residuals(h, lam)
    worst = float(res.max())
    if worst <= tol:
        return PseudoIsotropy(True, lam, worst)
    k = int(np.argmax(res > tol))
    witness = tuple(i + 1 for i in _TUPLES[k])
    return PseudoIsotropy(False, None, worst, witness)


def pseudo_isotropy_batch(h: SecondFundamental, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(passed, lambda_tilde, residual) arrays over a batch of points."""
    lam = isotropy_ratio(h, np.ones(h.coeffs.shape[:-3] + (2,)))
    res = polarized_residuals(h, lam).max(axis=-1)
    return res <= tol, lam, res


def lightlike_isotropy_residual(h: SecondFundamental) -> np.ndarray:
    """max(|<h11,h11>|, |<h22,h22>|), normalized.

    The null cone of a Lorentzian plane is the two lines through E1 and E2,
    and h(tv, tv) = t^2 h(v, v), so these two values decide the question.
    """
    r = np.maximum(np.abs(h.pair(0, 0, 0, 0)), np.abs(h.pair(1, 1, 1, 1)))
    return r / _scale(h)


def lightlike_isotropy_test(h: SecondFundamental, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.all(lightlike_isotropy_residual(h) <= tol))


def type1_determinants(h: SecondFundamental) -> np.ndarray:
    """|det(h(v,v), Jv)| in the (JE1, JE2) basis for v = E1 and v = E2; shape (..., 2)."""
    return np.stack([np.abs(h.coeffs[..., 0, 0, 1]), np.abs(h.coeffs[..., 1, 1, 0])], -1)


def classify_batch(h: SecondFundamental, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Point types as an object array of PointType (no lightlike precondition check)."""
    d11 = np.linalg.norm(h.coeffs[..., 0, 0, :], axis=-1)
    d22 = np.linalg.norm(h.coeffs[..., 1, 1, :], axis=-1)
    minimal = (d11 <= tol) & (d22 <= tol)
    type1 = type1_determinants(h).max(axis=-1) > tol
    out = np.where(minimal, PointType.MINIMAL, np.where(type1, PointType.TYPE1, PointType.TYPE2))
    return np.asarray(out, dtype=object)


def classify_point(h: SecondFundamental, tol: float = DEFAULT_TOL) -> PointType:
    if not lightlike_isotropy_test(h, tol):
        raise NotLightlikeIsotropic(
            f"h is not lightlike isotropic (residual {float(np.max(lightlike_isotropy_residual(h))):.3g})"
        )
    return classify_batch(h, tol).item()


def recover_lambda(h: SecondFundamental, point_type: PointType) -> np.ndarray:
    """The frame function lambda of the Type 1 / Type 2 normal forms, frame-scale free.

    A null frame is fixed only up to E1 -> aE1, E2 -> E2/a and a swap. The
    expressions used here are invariant under both. Type 2 multiplies the JE1
    part of h(E1,E1) by the JE2 part of h(E2,E2). For Type 1 with E1 special,
    the JE2 part of h(E1,E1) scales as a^3 and the JE2 part of h(E2,E2) as
    1/a, so the latter times the cube root of the former is invariant.
    """
    c = h.coeffs
    if point_type is PointType.MINIMAL:
        return np.zeros(c.shape[:-3])
    if point_type is PointType.TYPE2:
        return c[..., 0, 0, 0] * c[..., 1, 1, 1]
    e1_special = np.abs(c[..., 0, 0, 1]) >= np.abs(c[..., 1, 1, 0])
    return np.where(
        e1_special,
        np.cbrt(c[..., 0, 0, 1]) * c[..., 1, 1, 1],
        np.cbrt(c[..., 1, 1, 0]) * c[..., 0, 0, 0],
    )


@dataclass
class IsotropyVerdict:
    pseudo_isotropic: bool
    lambda_tilde: Optional[float]
    lightlike_isotropic: bool
    minimal: bool
    point_type: Optional[PointType]
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        """Minimal iff pseudo-isotropic, and pseudo-isotropic implies lightlike isotropic."""
        return (self.minimal == self.pseudo_isotropic) and (
            self.lightlike_isotropic or not self.pseudo_isotropic
        )


def assess_point(h: SecondFundamental, tol: float = DEFAULT_TOL) -> IsotropyVerdict:
    pi = pseudo_isotropy_test(h, tol)
    ll = lightlike_isotropy_test(h, tol)
    mdef = float(minimality_defect(h))
    point_type = classify_batch(h, tol).item() if ll else None
    return IsotropyVerdict(
        pseudo_isotropic=pi.passed,
        lambda_tilde=pi.lambda_tilde,
        lightlike_isotropic=ll,
        minimal=mdef <= tol * max(1.0, float(np.sqrt(h.coeff_norm_sq()))),
        point_type=point_type,
        residuals={
            "polarized": pi.residual,
            "lightlike": float(lightlike_isotropy_residual(h)),
            "minimality": mdef,
        },
    )


def minimal_normal_form(lam: float, mu: float) -> SecondFundamental:
    """h(E1,E1) = lam JE2, h(E2,E2) = mu JE1, h(E1,E2) = 0."""
    c = np.zeros((2, 2, 2))
    c[0, 0] = [0.0, lam]
    c[1, 1] = [mu, 0.0]
    return SecondFundamental.from_coefficients(c)


def type1_normal_form(lam: float) -> SecondFundamental:
    """h(E1,E1) = JE2, h(E1,E2) = lam JE1, h(E2,E2) = lam JE2."""
    c = np.zeros((2, 2, 2))
    c[0, 0] = [0.0, 1.0]
    c[0, 1] = c[1, 0] = [lam, 0.0]
    c[1, 1] = [0.0, lam]
    return SecondFundamental.from_coefficients(c)


def type2_normal_form(lam: float) -> SecondFundamental:
    """h(E1,E1) = JE1, h(E1,E2) = lam JE1 + JE2, h(E2,E2) = lam JE2."""
    c = np.zeros((2, 2, 2))
    c[0, 0] = [1.0, 0.0]
    c[0, 1] = c[1, 0] = [lam, 1.0]
    c[1, 1] = [0.0, lam]
    return SecondFundamental.from_coefficients(c)

"""Extrinsic geometry of a Lagrangian surface at chart points.

All routines broadcast over leading point axes. Tangent vectors are handled
by their chart coefficients (d_u, d_v); normal vectors of a Lagrangian
surface are written as J applied to a tangent vector, so the second
fundamental form is stored through real coefficients as well.

Index conventions for the arrays below: `H[..., i, j, k]` means
h(d_i, d_j) = sum_k H[i, j, k] J d_k, and `coeffs[..., a, b, k]` means
h(E_a, E_b) = sum_k coeffs[a, b, k] J E_k.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .ambient import AmbientKind, AmbientSpace, inner, jmul
from .errors import DegenerateTangent, NotLorentzian
from .jets import EXACT, Immersion, Jet2, eval_jet2

DEGENERATE_TANGENT_TOL = 1e-12
LORENTZ_TOL = 1e-12
DEFAULT_STEP = 1e-3
_TIE = 1e-12


@dataclass(frozen=True)
class FirstFundamental:
    guu: np.ndarray
    guv: np.ndarray
    gvv: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.stack(
            [np.stack([self.guu, self.guv], -1), np.stack([self.guv, self.gvv], -1)], -2
        )

    @property
    def det(self) -> np.ndarray:
        return self.guu * self.gvv - self.guv**2

    def scaled(self, k: float) -> "FirstFundamental":
        return FirstFundamental(k * self.guu, k * self.guv, k * self.gvv)


@dataclass(frozen=True)
class NullFrame:
    """Chart coefficients of a null frame; columns of `matrix` are E1, E2."""

    e1: np.ndarray
    e2: np.ndarray

    @property
    def matrix(self) -> np.ndarray:
        return np.stack([self.e1, self.e2], -1)

    def gram(self, g: FirstFundamental) -> np.ndarray:
        M = self.matrix
        return np.swapaxes(M, -1, -2) @ g.matrix @ M

    def vectors(self, jet: Jet2) -> np.ndarray:
        """Ambient E1, E2 stacked on axis -2."""
        tangent = np.stack([jet.fu, jet.fv], -2)
        return np.einsum("...ia,...iq->...aq", self.matrix, tangent)

    def rescaled(self, a: float) -> "NullFrame":
        """E1 -> a E1, E2 -> E2 / a; keeps the pairing <E1, E2> = 1."""
        return NullFrame(a * self.e1, self.e2 / a)


@dataclass(frozen=True)
class SecondFundamental:
    """h on a null frame: ambient vectors plus coefficients in (JE1, JE2).

    `gram` is the tangent metric in the frame basis; for a null frame it is
    [[0, 1], [1, 0]]. Keeping it here lets inner products of h-values be taken
    from coefficients alone: <J X, J Y> = <X, Y>.
    """

    vectors: np.ndarray  # (..., 2, 2, q)
    coeffs: np.ndarray  # (..., 2, 2, 2)
    gram: np.ndarray  # (..., 2, 2)
    frame_vectors: np.ndarray  # (..., 2, q) ambient E1, E2

    @property
    def h11(self) -> np.ndarray:
        return self.vectors[..., 0, 0, :]

    @property
    def h12(self) -> np.ndarray:
        return self.vectors[..., 0, 1, :]

    @property
    def h22(self) -> np.ndarray:
        return self.vectors[..., 1, 1, :]

    def pair(self, a: int, b: int, c: int, d: int) -> np.ndarray:
        """<h(E_a, E_b), h(E_c, E_d)>."""
        x = self.coeffs[..., a, b, :]
        y = self.coeffs[..., c, d, :]
        return np.einsum("...k,...kl,...l->...", x, self.gram, y)

    def at_vector(self, w) -> np.ndarray:
        """Coefficients of h(w, w) for w = w1 E1 + w2 E2."""
        w = np.asarray(w, dtype=float)
        return np.einsum("...a,...b,...abk->...k", w, w, self.coeffs)

    def coeff_norm_sq(self) -> np.ndarray:
        return np.sum(self.coeffs**2, axis=(-3, -2, -1))

    @classmethod
    def from_coefficients(cls, coeffs, frame_vectors=None, gram=None) -> "SecondFundamental":
        """Build h from frame coefficients, realized on a reference null frame of C^2_1."""
        coeffs = np.asarray(coeffs, dtype=float)
        if frame_vectors is None:
            s = 1 / np.sqrt(2)
            frame_vectors = np.array([[s, s], [-s, s]], dtype=complex)
        if gram is None:
            gram = np.array([[0.0, 1.0], [1.0, 0.0]])
        vectors = np.einsum("...abk,...kq->...abq", coeffs, jmul(frame_vectors))
        return cls(vectors, coeffs, np.asarray(gram, dtype=float), np.asarray(frame_vectors))


def induced_metric(space: AmbientSpace, jet: Jet2) -> FirstFundamental:
    return FirstFundamental(
        inner(space, jet.fu, jet.fu),
        inner(space, jet.fu, jet.fv),
        inner(space, jet.fv, jet.fv),
    )


def _canonical_direction(d: np.ndarray) -> np.ndarray:
    d = d / np.linalg.norm(d, axis=-1, keepdims=True)
    lead = np.where(np.abs(d[..., 0]) > _TIE, d[..., 0], d[..., 1])
    return d * np.where(lead < 0, -1.0, 1.0)[..., None]


def null_frame(g: FirstFundamental, tol: float = LORENTZ_TOL) -> NullFrame:
    """The two null directions of a Lorentzian metric, paired to <E1, E2> = 1.

    Each direction is first made Euclidean-unit with its first nonzero chart
    coefficient positive. E1 is the one with the larger d_u coefficient (ties
    go to the larger d_v coefficient), and E2 is then rescaled.
    """
    disc = -g.det
    if np.any(~(disc > tol)):
        raise NotLorentzian(f"induced metric is not Lorentzian (min discriminant {np.min(disc):.3g})")
    w, Q = np.linalg.eigh(g.matrix)
    p = Q[..., :, 0] / np.sqrt(-w[..., 0])[..., None]
    q = Q[..., :, 1] / np.sqrt(w[..., 1])[..., None]
    da = _canonical_direction(p + q)
    db = _canonical_direction(p - q)
    du = da[..., 0] - db[..., 0]
    dv = da[..., 1] - db[..., 1]
    a_first = (du > _TIE) | ((np.abs(du) <= _TIE) & (dv > 0))
    e1 = np.where(a_first[..., None], da, db)
    e2 = np.where(a_first[..., None], db, da)
    G = g.matrix
    pairing = np.einsum("...i,...ij,...j->...", e1, G, e2)
    return NullFrame(e1, e2 / pairing[..., None])


@dataclass(frozen=True)
class _CoordinateH:
    H: np.ndarray  # (..., 2, 2, 2) chart coefficients of h(d_i, d_j) in J d_k
    vectors: np.ndarray  # (..., 2, 2, q) ambient normal projections


def _coordinate_h(space: AmbientSpace, jet: Jet2) -> _CoordinateH:
    basis = [jet.fu, jet.fv, jmul(jet.fu), jmul(jet.fv)]
    if space.kind is AmbientKind.SPHERE_LIFT_S52:
        basis += [jet.f, jmul(jet.f)]
    B = np.stack(basis, -2)  # (..., nb, q)
    G = inner(space, B[..., :, None, :], B[..., None, :, :])
    det4 = np.linalg.det(G[..., :4, :4])
    if np.any(np.abs(det4) < DEGENERATE_TANGENT_TOL):
        raise DegenerateTangent(f"tangent plane is degenerate (|det| = {np.min(np.abs(det4)):.3g})")
    H = np.empty(jet.f.shape[:-1] + (2, 2, 2))
    vecs = np.empty(jet.f.shape[:-1] + (2, 2, space.q), dtype=complex)
    for i, j in ((0, 0), (0, 1), (1, 1)):
        fij = jet.second(i, j)
        rhs = inner(space, fij[..., None, :], B)
        c = np.linalg.solve(G, rhs[..., None])[..., 0]
        H[..., i, j, :] = H[..., j, i, :] = c[..., 2:4]
        # normal projection: drop the tangent part (and f, Jf for the lift)
        proj = fij - c[..., 0, None] * jet.fu - c[..., 1, None] * jet.fv
        if B.shape[-2] == 6:
            proj = proj - c[..., 4, None] * jet.f - c[..., 5, None] * jmul(jet.f)
        vecs[..., i, j, :] = vecs[..., j, i, :] = proj
    return _CoordinateH(H, vecs)


def second_fundamental(space: AmbientSpace, jet: Jet2, frame: NullFrame) -> SecondFundamental:
    """Second fundamental form on a null frame.

    On the lift model the components along f and Jf are discarded, giving the
    second fundamental form of the projected Lagrangian surface in CP^2_1(4).
    """
    ch = _coordinate_h(space, jet)
    M = frame.matrix
    T = np.einsum("...ia,...jb,...ijk->...abk", M, M, ch.H)
    coeffs = np.linalg.solve(M[..., None, None, :, :], T[..., None])[..., 0]
    vectors = np.einsum("...ia,...jb,...ijq->...abq", M, M, ch.vectors)
    g = induced_metric(space, jet)
    return SecondFundamental(vectors, coeffs, frame.gram(g), frame.vectors(jet))


def normal_span_defect(h: SecondFundamental) -> np.ndarray:
    """Distance between each ambient h_ab and its (JE1, JE2) reconstruction."""
    recon = np.einsum("...abk,...kq->...abq", h.coeffs, jmul(h.frame_vectors))
    return np.max(np.abs(h.vectors - recon), axis=(-3, -2, -1))


def normal_orthogonality_defect(space: AmbientSpace, h: SecondFundamental) -> np.ndarray:
    E = h.frame_vectors
    ip = inner(space, h.vectors[..., :, :, None, :], E[..., None, None, :, :])
    return np.max(np.abs(ip), axis=(-3, -2, -1))


def shape_operator(h: SecondFundamental, x: int, y: int) -> np.ndarray:
    """A_{J E_x} E_y = -J h(E_x, E_y); indices are 1-based."""
    return -jmul(h.vectors[..., x - 1, y - 1, :])


def shape_operator_tangency_defect(h: SecondFundamental, x: int, y: int) -> np.ndarray:
    A = shape_operator(h, x, y)
    tangent = np.einsum("...k,...kq->...q", h.coeffs[..., x - 1, y - 1, :], h.frame_vectors)
    return np.max(np.abs(A - tangent), axis=-1)


def shape_operator_symmetry_defect(h: SecondFundamental) -> np.ndarray:
    """max |A_{JE1} E2 - A_{JE2} E1| with each operator computed from its own slot."""
    a = shape_operator(h, 1, 2)
    b = -jmul(h.vectors[..., 1, 0, :])
    return np.max(np.abs(a - b), axis=-1)


def mean_curvature(h: SecondFundamental) -> np.ndarray:
    """h(E1, E2), the mean curvature vector up to a fixed factor in a null frame."""
    return h.h12


def minimality_defect(h: SecondFundamental) -> np.ndarray:
    """Euclidean norm of the (JE1, JE2) coefficients of h(E1, E2).

    The ambient norm is useless here: Type 2 mean curvature vectors can be null.
    """
    return np.linalg.norm(h.coeffs[..., 0, 1, :], axis=-1)


@dataclass(frozen=True)
class CubicCheck:
    cubic: np.ndarray
    omega: np.ndarray


def cubic_symmetry_defect(space: AmbientSpace, jet: Jet2, frame: NullFrame | None = None) -> CubicCheck:
    """Symmetry defect of C(X, Y, Z) = <h(X, Y), J Z>, with the Lagrangian defect omega(f_u, f_v).

    Without a frame the cubic form is taken in the coordinate basis as
    <f_ij, J f_k>, which needs no normal projection and so also works on
    surfaces whose induced metric is degenerate.
    """
    omega = np.abs(inner(space, jmul(jet.fu), jet.fv))
    if frame is not None:
        h = second_fundamental(space, jet, frame)
        vecs = h.vectors
        tangent = h.frame_vectors
    else:
        vecs = np.stack(
            [np.stack([jet.fuu, jet.fuv], -2), np.stack([jet.fuv, jet.fvv], -2)], -3
        )
        tangent = np.stack([jet.fu, jet.fv], -2)
    C = inner(space, vecs[..., :, :, None, :], jmul(tangent)[..., None, None, :, :])
    defect = np.zeros(C.shape[:-3])
    for perm in itertools.permutations(range(3)):
        if perm == (0, 1, 2):
            continue
        diff = np.abs(C - np.transpose(C, tuple(range(C.ndim - 3)) + tuple(C.ndim - 3 + p for p in perm)))
        defect = np.maximum(defect, diff.max(axis=(-3, -2, -1)))
    return CubicCheck(defect, omega)


def _around(u, v, s):
    """The point and its four axis neighbours, stacked on a new leading axis."""
    du = np.array([0.0, s, -s, 0.0, 0.0])
    dv = np.array([0.0, 0.0, 0.0, s, -s])
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    shape = (5,) + (1,) * np.broadcast(u, v).ndim
    return u + du.reshape(shape), v + dv.reshape(shape)


def _diff(x: np.ndarray, s: float) -> np.ndarray:
    """Central differences from `_around` samples; new last axis indexes (d_u, d_v)."""
    return np.stack([(x[1] - x[2]) / (2 * s), (x[3] - x[4]) / (2 * s)], axis=-1)


def christoffel(space: AmbientSpace, imm: Immersion, u, v, step: float = DEFAULT_STEP, scheme=EXACT) -> np.ndarray:
    """Gamma[..., m, i, j] = Gamma^m_{ij} from central differences of the induced metric."""
    U, V = _around(u, v, step)
    g = induced_metric(space, eval_jet2(imm, U, V, scheme)).matrix  # (5, ..., 2, 2)
    dg = _diff(g, step)  # (..., i, j, l) = d_l g_ij
    lowered = 0.5 * (
        np.einsum("...kjl->...klj", dg) + np.einsum("...kil->...kil", dg) - np.einsum("...ijk->...kij", dg)
    )
    # lowered[k, i, j] = (d_i g_kj + d_j g_ki - d_k g_ij) / 2
    return np.einsum("...mk,...kij->...mij", np.linalg.inv(g[0]), lowered)


@dataclass(frozen=True)
class CodazziResult:
    nabla_h: np.ndarray  # (..., l, i, j, m): component m of (nabla h)(d_l, d_i, d_j) in J d_m
    defect: np.ndarray


def covariant_derivative_h(
    space: AmbientSpace, imm: Immersion, u, v, step: float = DEFAULT_STEP, scheme=EXACT
) -> CodazziResult:
    """(nabla h)(X, Y, Z) = nabla^perp_X h(Y, Z) - h(nabla_X Y, Z) - h(Y, nabla_X Z) in coordinates.

    Uses nabla^perp J = J nabla, valid for Lagrangian surfaces in a Kaehler
    ambient. The Codazzi defect is the largest antisymmetric part in the
    first two slots.
    """
    U, V = _around(u, v, step)
    H = _coordinate_h(space, eval_jet2(imm, U, V, scheme)).H  # (5, ..., 2, 2, 2)
    dH = np.moveaxis(_diff(H, step), -1, -4)  # (..., l, i, j, m)
    Gam = christoffel(space, imm, u, v, step, scheme)  # (..., m, i, j)
    H0 = H[0]
    nabla = (
        dH
        + np.einsum("...mlk,...ijk->...lijm", Gam, H0)
        - np.einsum("...kli,...kjm->...lijm", Gam, H0)
        - np.einsum("...klj,...ikm->...lijm", Gam, H0)
    )
    anti = np.abs(nabla - np.swapaxes(nabla, -4, -3))
    return CodazziResult(nabla, anti.max(axis=(-4, -3, -2, -1)))


def riemann(space: AmbientSpace, imm: Immersion, u, v, step: float = DEFAULT_STEP, scheme=EXACT) -> np.ndarray:
    """R[..., i, j, k, m] with R(d_i, d_j) d_k = sum_m R[i, j, k, m] d_m.

    R(X, Y) = [nabla_X, nabla_Y] - nabla_[X, Y]; Christoffels from metric
    differences, their derivatives from a second layer of differences.
    """
    U, V = _around(u, v, step)
    Gam = christoffel(space, imm, U, V, step, scheme)  # (5, ..., m, i, j)
    dGam = _diff(Gam, step)  # (..., m, i, j, l) = d_l Gamma^m_ij
    G0 = Gam[0]
    return (
        np.einsum("...mjki->...ijkm", dGam)
        - np.einsum("...mikj->...ijkm", dGam)
        + np.einsum("...mip,...pjk->...ijkm", G0, G0)
        - np.einsum("...mjp,...pik->...ijkm", G0, G0)
    )


def gauss_residual(r1221: np.ndarray, h: SecondFundamental, c: float) -> np.ndarray:
    """|<R(E1,E2)E2,E1> - [<h22,h11> - <h12,h12> + c(<E1,E1><E2,E2> - <E1,E2>^2)]|."""
    G = h.gram
    rhs = (
        h.pair(1, 1, 0, 0)
        - h.pair(0, 1, 1, 0)
        + c * (G[..., 0, 0] * G[..., 1, 1] - G[..., 0, 1] * G[..., 1, 0])
    )
    return np.abs(r1221 - rhs)


def gauss_defect(space: AmbientSpace, imm: Immersion, u, v, step: float = DEFAULT_STEP, scheme=EXACT) -> np.ndarray:
    """Gauss equation residual on (E1, E2, E2, E1) with curvature from differenced Christoffels."""
    jet = eval_jet2(imm, u, v, scheme)
    g = induced_metric(space, jet)
    frame = null_frame(g)
    h = second_fundamental(space, jet, frame)
    R = riemann(space, imm, u, v, step, scheme)
    M = frame.matrix
    E1, E2 = M[..., :, 0], M[..., :, 1]
    lhs = np.einsum("...ijkm,...i,...j,...k,...mn,...n->...", R, E1, E2, E2, g.matrix, E1)
    return gauss_residual(lhs, h, space.c)

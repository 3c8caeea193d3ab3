"""The classified surfaces with exact jets, plus the Type 1 reparametrizer.

Every non-planar family has the form f = a1(s) e^{it} + a2(s): for Type 2
the phase t is u, for Type 1 it is v. `evaluate` transcribes the closed
forms as printed; exact jets come from the same curves rewritten as sums of
vector coefficients times elementary functions. The finite-difference check
therefore also cross-checks that rewriting.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicHermiteSpline

from .ambient import FLAT, SPHERE, AmbientSpace, horizontality_defect, inner, sphere_defect
from .errors import DegenerateCurve, InvalidParameter, NotHorizontal, NotOnSphere, SelfCheckFailed
from .jets import Chart, Immersion, Jet2
from .shape import SecondFundamental, induced_metric, null_frame, second_fundamental

SQ2 = math.sqrt(2.0)
SELF_CHECK_TOL = 1e-12
PROJECTION_TOL = 1e-8

PERIODIC = (-math.pi, math.pi)
UNIT = (-1.0, 1.0)


@dataclass(frozen=True)
class Profile:
    """A smooth real function of one variable with its first two derivatives."""

    name: str
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]
    d2f: Callable[[np.ndarray], np.ndarray]

    def derivs(self, x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        x = np.asarray(x, dtype=float)
        one = np.ones_like(x)
        return self.f(x) * one, self.df(x) * one, self.d2f(x) * one

    def scaled(self, k: float) -> "Profile":
        return Profile(
            f"{k:g}*{self.name}",
            lambda x: k * self.f(x),
            lambda x: k * self.df(x),
            lambda x: k * self.d2f(x),
        )


def constant(c: float = 1.0) -> Profile:
    return Profile(f"{c:g}", lambda x: c + 0 * x, lambda x: 0 * x, lambda x: 0 * x)


def polynomial(coeffs) -> Profile:
    """sum_k coeffs[k] x^k."""
    p = np.polynomial.Polynomial(np.asarray(coeffs, dtype=float))
    dp, d2p = p.deriv(1), p.deriv(2)
    name = "poly:" + ",".join(f"{c:g}" for c in p.coef)
    return Profile(name, p, dp, d2p)


def sin(k: float = 1.0) -> Profile:
    return Profile(
        "sin" if k == 1 else f"sin({k:g}x)",
        lambda x: np.sin(k * x),
        lambda x: k * np.cos(k * x),
        lambda x: -(k**2) * np.sin(k * x),
    )


def cos(k: float = 1.0) -> Profile:
    return Profile(
        "cos" if k == 1 else f"cos({k:g}x)",
        lambda x: np.cos(k * x),
        lambda x: -k * np.sin(k * x),
        lambda x: -(k**2) * np.cos(k * x),
    )


def exp(k: float = 1.0) -> Profile:
    return Profile(
        "exp" if k == 1 else f"exp({k:g}x)",
        lambda x: np.exp(k * x),
        lambda x: k * np.exp(k * x),
        lambda x: k**2 * np.exp(k * x),
    )


def sinh(k: float) -> Profile:
    return Profile(
        f"sinh({k:g}x)",
        lambda x: np.sinh(k * x),
        lambda x: k * np.cosh(k * x),
        lambda x: k**2 * np.sinh(k * x),
    )


def cosh(k: float) -> Profile:
    return Profile(
        f"cosh({k:g}x)",
        lambda x: np.cosh(k * x),
        lambda x: k * np.sinh(k * x),
        lambda x: k**2 * np.cosh(k * x),
    )


_EXPR = re.compile(r"^\s*(?:([-+]?[0-9.eE+-]+)\s*\*\s*)?(sin|cos|exp)\s*$")


def parse_profile(expr: str) -> Profile:
    """Parse the small profile vocabulary: `sin`, `2*cos`, `exp`, `poly:1,0,2`."""
    expr = expr.strip()
    if expr.startswith("poly:"):
        try:
            coeffs = [float(c) for c in re.split(r"[,\s]+", expr[5:].strip()) if c]
        except ValueError as exc:
            raise InvalidParameter(f"bad polynomial coefficients in {expr!r}") from exc
        if not coeffs:
            raise InvalidParameter(f"empty polynomial in {expr!r}")
        return polynomial(coeffs)
    m = _EXPR.match(expr)
    if not m:
        raise InvalidParameter(f"unknown profile {expr!r}; use sin, cos, exp, k*sin or poly:c0,c1,...")
    base = {"sin": sin, "cos": cos, "exp": exp}[m.group(2)]()
    if m.group(1) is None:
        return base
    try:
        k = float(m.group(1))
    except ValueError as exc:
        raise InvalidParameter(f"bad coefficient in {expr!r}") from exc
    return base.scaled(k)


@dataclass(frozen=True)
class VectorCurve:
    """a(s) = sum_k coef_k * phi_k(s) with constant complex vectors coef_k."""

    terms: tuple[tuple[np.ndarray, Profile], ...]
    q: int

    def derivs(self, s) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        s = np.asarray(s, dtype=float)
        out = [np.zeros(s.shape + (self.q,), dtype=complex) for _ in range(3)]
        for coef, phi in self.terms:
            for k, d in enumerate(phi.derivs(s)):
                out[k] = out[k] + d[..., None] * coef
        return out[0], out[1], out[2]


def _curve(*terms) -> VectorCurve:
    terms = tuple((np.asarray(c, dtype=complex), p) for c, p in terms)
    return VectorCurve(terms, terms[0][0].shape[-1])


def _phase_jet(a1: VectorCurve, a2: VectorCurve | None, phase: str) -> Callable[[np.ndarray, np.ndarray], Jet2]:
    """Exact jet of f = a1(s) e^{it} + a2(s), with t = u or t = v."""

    def jet(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        t, s = (u, v) if phase == "u" else (v, u)
        e = np.exp(1j * t)[..., None]
        b0, b1, b2 = a1.derivs(s)
        if a2 is None:
            c0 = c1 = c2 = 0.0
        else:
            c0, c1, c2 = a2.derivs(s)
        f = b0 * e + c0
        f_t = 1j * b0 * e
        f_tt = -b0 * e
        f_s = b1 * e + c1
        f_st = 1j * b1 * e
        f_ss = b2 * e + c2
        if phase == "u":
            return Jet2(f, f_t, f_s, f_tt, f_st, f_ss)
        return Jet2(f, f_s, f_t, f_ss, f_st, f_tt)

    return jet


def _self_check(name: str, space: AmbientSpace, jet: Jet2, lam0: float, expected: dict[str, np.ndarray]) -> None:
    """Compare f(0,0), E1(0,0) = f_u and E2(0,0) = f_v + lambda(0,0) f_u with the stated values."""
    E1 = jet.fu
    E2 = jet.fv + lam0 * jet.fu
    got = {"f": jet.f, "E1": E1, "E2": E2}
    for key, want in expected.items():
        err = float(np.max(np.abs(got[key] - want)))
        if err > SELF_CHECK_TOL:
            raise SelfCheckFailed(f"{name}: {key}(0,0) off by {err:.3g}")
    pairing = [inner(space, E1, E1), inner(space, E2, E2), inner(space, E1, E2) - 1.0]
    if max(abs(float(x)) for x in pairing) > SELF_CHECK_TOL:
        raise SelfCheckFailed(f"{name}: initial frame is not null with <E1,E2> = 1")


# --- plane -----------------------------------------------------------------


def make_plane(chart: Chart | None = None) -> Immersion:
    """Totally geodesic Lagrangian plane f(u, v) = (u, v) in C^2_1."""
    chart = chart or Chart(*UNIT, *UNIT)

    def evaluate(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        return np.stack([u, v], -1).astype(complex)

    def jet(u, v):
        f = evaluate(u, v)
        z = np.zeros_like(f)
        fu = z.copy()
        fu[..., 0] = 1.0
        fv = z.copy()
        fv[..., 1] = 1.0
        return Jet2(f, fu, fv, z, z.copy(), z.copy())

    return Immersion("plane", FLAT, chart, evaluate, jet, {}, family="plane")


# --- Type 1 ----------------------------------------------------------------

TYPE1_A = np.array([-1j, -1j]) / SQ2
TYPE1_B = np.array([1.0, -1.0], dtype=complex) / SQ2


def wronskian(alpha: Profile, beta: Profile, x) -> np.ndarray:
    a, da, _ = alpha.derivs(x)
    b, db, _ = beta.derivs(x)
    return da * b - a * db


def make_type1(alpha: Profile, beta: Profile, chart: Chart | None = None, samples: int = 21) -> Immersion:
    """(alpha(u) (-i,-i)/sqrt2 + beta(u) (1,-1)/sqrt2) e^{iv} in C^2_1; the phase coordinate is v."""
    chart = chart or Chart(*UNIT, *PERIODIC)
    xs = np.linspace(chart.u0, chart.u1, samples)
    W = wronskian(alpha, beta, xs)
    if np.any(np.abs(W) <= 1e-12) or np.any(np.sign(W) != np.sign(W[0])):
        raise DegenerateCurve(
            f"Wronskian of ({alpha.name}, {beta.name}) vanishes or changes sign on [{chart.u0:g}, {chart.u1:g}]"
        )
    a1 = _curve((TYPE1_A, alpha), (TYPE1_B, beta))

    def evaluate(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        A1 = alpha.f(u)[..., None] * TYPE1_A + beta.f(u)[..., None] * TYPE1_B
        return A1 * np.exp(1j * v)[..., None]

    jet = _phase_jet(a1, None, "v")
    imm = Immersion(
        f"type1({alpha.name},{beta.name})",
        FLAT,
        chart,
        evaluate,
        jet,
        {},
        family="type1",
        extras={"alpha": alpha, "beta": beta},
    )
    # Lorentzian null chart at the chart centre: <f_u, f_v> equals the Wronskian
    x0 = 0.5 * (chart.u0 + chart.u1)
    j0 = jet(x0, 0.0)
    w0 = float(wronskian(alpha, beta, x0))
    g = [inner(FLAT, j0.fu, j0.fu), inner(FLAT, j0.fv, j0.fv), inner(FLAT, j0.fu, j0.fv) - w0]
    if max(abs(float(x)) for x in g) > SELF_CHECK_TOL * max(1.0, abs(w0)):
        raise SelfCheckFailed(f"{imm.name}: chart is not null with <f_u, f_v> = W")
    return imm


def type1_lambda_cubed(imm: Immersion, u) -> np.ndarray:
    """lambda^3 = -k where (alpha'', beta'') = k (alpha, beta), the relation A1'' = -lambda^3 A1.

    Exact only for a constant Wronskian; reparametrize first otherwise.
    """
    alpha, beta = imm.extras["alpha"], imm.extras["beta"]
    a, _, a2 = alpha.derivs(u)
    b, _, b2 = beta.derivs(u)
    k = (a2 * a + b2 * b) / (a * a + b * b)
    return -k


@dataclass(frozen=True)
class ArclengthMap:
    """Sampled monotone map u(x) = int_{x0}^x |W| with its inverse."""

    x: np.ndarray
    u: np.ndarray
    swapped: bool
    alpha: Profile
    beta: Profile
    _fwd: CubicHermiteSpline
    _inv: CubicHermiteSpline

    def u_of_x(self, x) -> np.ndarray:
        return self._fwd(x)

    def x_of_u(self, u) -> np.ndarray:
        return self._inv(u)

    @property
    def u_range(self) -> tuple[float, float]:
        return float(self.u[0]), float(self.u[-1])

    def profiles(self) -> tuple[Profile, Profile]:
        """(alpha, beta) composed with x(u), so that their Wronskian in u is exactly 1.

        If the original Wronskian was negative the pair has already been
        swapped.
        """
        al, be = self.alpha, self.beta

        def w_and_dw(x):
            a, da, d2a = al.derivs(x)
            b, db, d2b = be.derivs(x)
            return da * b - a * db, d2a * b - a * d2b

        def compose(p: Profile) -> Profile:
            def f(u):
                return p.f(self.x_of_u(u))

            def df(u):
                x = self.x_of_u(u)
                W, _ = w_and_dw(x)
                return p.df(x) / W

            def d2f(u):
                x = self.x_of_u(u)
                W, dW = w_and_dw(x)
                return p.d2f(x) / W**2 - p.df(x) * dW / W**3

            return Profile(f"{p.name}@arclength", f, df, d2f)

        return compose(al), compose(be)


def arclength_reparam(alpha: Profile, beta: Profile, x0: float, x1: float, step: float = 1e-3) -> ArclengthMap:
    """Parameter u with unit Wronskian: u(x) = int_{x0}^x W, tabulated on a grid of `step`."""
    if not x1 > x0 or step <= 0:
        raise InvalidParameter("need x1 > x0 and step > 0")
    n = max(2, int(math.ceil((x1 - x0) / step))) + 1
    xs = np.linspace(x0, x1, n)
    W = wronskian(alpha, beta, xs)
    if np.any(W == 0) or np.any(np.sign(W) != np.sign(W[0])):
        raise DegenerateCurve(f"Wronskian of ({alpha.name}, {beta.name}) changes sign on [{x0:g}, {x1:g}]")
    swapped = bool(W[0] < 0)
    if swapped:
        alpha, beta = beta, alpha
        W = -W
    us = np.concatenate([[0.0], cumulative_simpson(W, x=xs)])
    return ArclengthMap(
        xs, us, swapped, alpha, beta, CubicHermiteSpline(xs, us, W), CubicHermiteSpline(us, xs, 1.0 / W)
    )


def make_type1_unit(alpha: Profile, beta: Profile, x0: float = -1.0, x1: float = 1.0, step: float = 1e-3) -> Immersion:
    """Type 1 surface in the unit-Wronskian parameter, where f_uu = lambda^3 i f_v holds."""
    amap = arclength_reparam(alpha, beta, x0, x1, step)
    al, be = amap.profiles()
    lo, hi = amap.u_range
    imm = make_type1(al, be, Chart(lo, hi, *PERIODIC))
    imm.extras["arclength"] = amap
    return imm


# --- Type 2 in C^2_1 -------------------------------------------------------

FLAT_R0_A1 = np.array([SQ2 / 2, SQ2 / 2], dtype=complex)
# Two opposite signs for A2 circulate; only the first pairs the frame to <E1, E2> = +1.
FLAT_R0_A2_DERIVATION = np.array([SQ2 / 2 * 1j, -SQ2 / 2 * 1j])
FLAT_R0_A2_SUMMARY = -FLAT_R0_A2_DERIVATION


def flat_r0_pairings() -> dict[str, float]:
    """<E1, E2> at the origin for f = (v A1 + A2) e^{iu}, E1 = iA2, E2 = A1, for both printed A2."""
    return {
        "derivation": float(inner(FLAT, 1j * FLAT_R0_A2_DERIVATION, FLAT_R0_A1)),
        "summary": float(inner(FLAT, 1j * FLAT_R0_A2_SUMMARY, FLAT_R0_A1)),
    }


def flat_constants(r: float) -> tuple[np.ndarray, np.ndarray]:
    if r == 0:
        return FLAT_R0_A1, FLAT_R0_A2_DERIVATION
    A1 = np.array([-SQ2 / (4 * r), SQ2 / (4 * r)], dtype=complex)
    A2 = np.array([(1 - 2j * r) / (2 * SQ2 * r), (-1 - 2j * r) / (SQ2 * 2 * r)])
    return A1, A2


def make_type2_flat(r: float, chart: Chart | None = None) -> Immersion:
    """Proper Type 2 surfaces in C^2_1 (lambda = r sin u)."""
    r = float(r)
    if not r >= 0 or not math.isfinite(r):
        raise InvalidParameter(f"r must be >= 0, got {r}")
    chart = chart or Chart(*PERIODIC, *UNIT)
    A1, A2 = flat_constants(r)

    if r == 0:

        def evaluate(u, v):
            u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
            return (v[..., None] * A1 + A2) * np.exp(1j * u)[..., None]

        a1, a2 = _curve((A2, constant()), (A1, polynomial([0, 1]))), None
        expected = {"f": A2, "E1": 1j * A2, "E2": A1}
    else:

        def evaluate(u, v):
            u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
            ep = np.exp(r * v)[..., None]
            em = np.exp(-r * v)[..., None]
            return (A1 * ep + A2 * em) * np.exp(1j * u)[..., None] + (A1 * ep - A2 * em)

        a1 = _curve((A1, exp(r)), (A2, exp(-r)))
        a2 = _curve((A1, exp(r)), (-A2, exp(-r)))
        expected = {
            "E1": np.array([1, 1], dtype=complex) / SQ2,
            "E2": np.array([-1, 1], dtype=complex) / SQ2,
        }
    jet = _phase_jet(a1, a2, "u")
    imm = Immersion(f"type2-flat(r={r:g})", FLAT, chart, evaluate, jet, {"r": r, "c": 0.0}, family="type2-flat")
    _self_check(imm.name, FLAT, jet(0.0, 0.0), 0.0, expected)
    return imm


# --- Type 2 in CP^2_1(4), horizontal lifts into S^5_2(1) -------------------

CP_C1 = np.array([-1j / SQ2, -1j / SQ2, 0])
CP_C2 = np.array([1j / SQ2, 1j / SQ2, 1])


def cp_constants(r: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(c1, c2, c3) fixed by f(0,0) = (0,0,1), E1(0,0) = (1,1,0)/sqrt2, E2(0,0) = (-1,1,0)/sqrt2."""
    if r < 1:
        ct = r  # r = cos t
        c3 = np.array([1j * (ct / SQ2 + 1j / SQ2), 1j * (ct / SQ2 - 1j / SQ2), 1j])
    elif r == 1:
        c3 = np.array([(1j - 1) / SQ2, (1 + 1j) / SQ2, 1j])
    else:
        c3 = np.array([1j * (1j + r) / SQ2, (1 + 1j * r) / SQ2, 1j])
    return CP_C1, CP_C2, c3


def _cp_printed(r: float, c1, c2, c3) -> Callable[[np.ndarray], tuple[np.ndarray, np.ndarray]]:
    """a1(v), a2(v) exactly as printed for each range of r."""
    if r < 1:
        t = math.acos(r)
        st, ct, csc2 = math.sin(t), math.cos(t), 1.0 / math.sin(t) ** 2

        def a(v):
            v = v[..., None]
            sv, cv = np.sin(v * st), np.cos(v * st)
            a1 = -csc2 * (
                -c3 * st * sv
                + (c1 * ct**2 + 1j * c3) * cv
                + 2j * c2 * ct * np.sin(0.5 * v * st) ** 2
                - c1
                - 1j * c3
            )
            a2 = -csc2 * (
                ct * (-c1 * st * sv + (c3 - 1j * c1) * (cv - 1))
                - c2 * (cv - 1j * st * sv)
                + c2 * ct**2
            )
            return a1, a2

    elif r == 1:

        def a(v):
            v = v[..., None]
            a1 = 0.5 * (c1 * (v**2 + 2) + v * (2 * c3 - 1j * (c2 - c3) * v))
            a2 = 0.5 * (2 * c2 + v * (c3 * v + (c1 - 1j * c2) * (2 - 1j * v)))
            return a1, a2

    else:
        k = math.sqrt(r * r - 1)

        def a(v):
            v = v[..., None]
            sh, ch = np.sinh(k * v), np.cosh(k * v)
            a1 = (c3 * k * sh + (c1 * r**2 - 1j * c2 * r + 1j * c3) * ch + 1j * c2 * r - c1 - 1j * c3) / (r**2 - 1)
            a2 = (k * (c1 * r - 1j * c2) * sh + (-c2 + (c3 - 1j * c1) * r) * ch + r * (c2 * r + 1j * c1 - c3)) / (
                r**2 - 1
            )
            return a1, a2

    return a


def _cp_curves(r: float, c1, c2, c3) -> tuple[VectorCurve, VectorCurve]:
    """The same a1, a2 regrouped over {1, cos, sin}, {1, v, v^2} or {1, cosh, sinh}."""
    if r < 1:
        k = math.sqrt(1 - r * r)  # sin t
        s = -1.0 / k**2
        a1 = _curve(
            (s * (1j * c2 * r - c1 - 1j * c3), constant()),
            (s * (c1 * r * r + 1j * c3 - 1j * c2 * r), cos(k)),
            (s * (-k * c3), sin(k)),
        )
        a2 = _curve(
            (s * (-r * (c3 - 1j * c1) + c2 * r * r), constant()),
            (s * (r * (c3 - 1j * c1) - c2), cos(k)),
            (s * (-r * k * c1 + 1j * k * c2), sin(k)),
        )
    elif r == 1:
        a1 = _curve(
            (c1, constant()),
            (c3, polynomial([0, 1])),
            (0.5 * (c1 - 1j * c2 + 1j * c3), polynomial([0, 0, 1])),
        )
        a2 = _curve(
            (c2, constant()),
            (c1 - 1j * c2, polynomial([0, 1])),
            (0.5 * (c3 - 1j * c1 - c2), polynomial([0, 0, 1])),
        )
    else:
        k = math.sqrt(r * r - 1)
        s = 1.0 / k**2
        a1 = _curve(
            (s * (1j * c2 * r - c1 - 1j * c3), constant()),
            (s * (c1 * r * r - 1j * c2 * r + 1j * c3), cosh(k)),
            (s * k * c3, sinh(k)),
        )
        a2 = _curve(
            (s * r * (c2 * r + 1j * c1 - c3), constant()),
            (s * (-c2 + (c3 - 1j * c1) * r), cosh(k)),
            (s * k * (c1 * r - 1j * c2), sinh(k)),
        )
    return a1, a2


def make_type2_cp(r: float, chart: Chart | None = None) -> Immersion:
    """Horizontal lift into S^5_2(1) of a proper Type 2 surface in CP^2_1(4) (lambda = -1 + r sin u)."""
    r = float(r)
    if not r >= 0 or not math.isfinite(r):
        raise InvalidParameter(f"r must be >= 0, got {r}")
    chart = chart or Chart(*PERIODIC, *UNIT)
    c1, c2, c3 = cp_constants(r)
    printed = _cp_printed(r, c1, c2, c3)

    def evaluate(u, v):
        u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
        a1, a2 = printed(v)
        return a1 * np.exp(1j * u)[..., None] + a2

    a1, a2 = _cp_curves(r, c1, c2, c3)
    jet = _phase_jet(a1, a2, "u")
    sub = "r<1" if r < 1 else ("r=1" if r == 1 else "r>1")
    params = {"r": r, "c": 1.0}
    if r < 1:
        params["t"] = math.acos(r)
    imm = Immersion(f"type2-cp(r={r:g})", SPHERE, chart, evaluate, jet, params, family="type2-cp", extras={"case": sub})
    _self_check(
        imm.name,
        SPHERE,
        jet(0.0, 0.0),
        -1.0,
        {
            "f": np.array([0, 0, 1], dtype=complex),
            "E1": np.array([1, 1, 0], dtype=complex) / SQ2,
            "E2": np.array([-1, 1, 0], dtype=complex) / SQ2,
        },
    )
    return imm


def projected_geometry(space: AmbientSpace, jet: Jet2, tol: float = PROJECTION_TOL) -> tuple[np.ndarray, SecondFundamental]:
    """Tangent basis (f_u, f_v) and the CP^2_1(4) second fundamental form of a horizontal lift."""
    sd = np.max(sphere_defect(space, jet.f))
    if sd > tol:
        raise NotOnSphere(f"lift is off S^5_2(1) by {sd:.3g}")
    hd = np.max(horizontality_defect(space, jet.f, jet.fu, jet.fv))
    if hd > tol:
        raise NotHorizontal(f"lift is not horizontal (defect {hd:.3g})")
    frame = null_frame(induced_metric(space, jet))
    return np.stack([jet.fu, jet.fv], -2), second_fundamental(space, jet, frame)


FAMILIES = ("plane", "type1", "type2-flat", "type2-cp")


def build_family(family: str, r: float = 0.0, alpha: str = "sin", beta: str = "cos") -> Immersion:
    if family == "plane":
        return make_plane()
    if family == "type1":
        return make_type1(parse_profile(alpha), parse_profile(beta))
    if family == "type2-flat":
        return make_type2_flat(r)
    if family == "type2-cp":
        return make_type2_cp(r)
    raise InvalidParameter(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")


def expected_point_type(imm: Immersion) -> str:
    return {"plane": "Minimal", "type1": "Type1", "type2-flat": "Type2", "type2-cp": "Type2"}.get(imm.family, "")


"""Frame ODEs along u, a fixed-step RK4 integrator, and the PDE systems of the families."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .errors import InvalidParameter, NumericalBlowup, SystemMismatch
from .families import type1_lambda_cubed
from .jets import EXACT, Immersion, eval_jet2


@dataclass(frozen=True)
class FrameState:
    lam: np.ndarray
    beta: np.ndarray

    def as_array(self) -> np.ndarray:
        return np.stack([np.asarray(self.lam, dtype=float), np.asarray(self.beta, dtype=float)], -1)

    @classmethod
    def from_array(cls, y) -> "FrameState":
        y = np.asarray(y, dtype=float)
        return cls(y[..., 0], y[..., 1])


def type2_rhs(c: float, state) -> np.ndarray:
    """d(lambda, beta)/du = (beta, -(c + lambda))."""
    y = np.asarray(state, dtype=float)
    return np.stack([y[..., 1], -(c + y[..., 0])], -1)


@dataclass(frozen=True)
class Trajectory:
    u: np.ndarray
    y: np.ndarray  # (n + 1, dim)

    @property
    def end(self) -> np.ndarray:
        return self.y[-1]


def integrate_rk4(rhs: Callable[[float, np.ndarray], np.ndarray], y0, u_span: tuple[float, float], step: float) -> Trajectory:
    """Classical fixed-step RK4 over `u_span`.

    The step is shortened uniformly so that an integer number of steps lands
    exactly on the end of the span.
    """
    if not (step > 0 and math.isfinite(step)):
        raise InvalidParameter(f"step must be positive and finite, got {step}")
    u0, u1 = map(float, u_span)
    if not (math.isfinite(u0) and math.isfinite(u1)):
        raise InvalidParameter("integration span must be finite")
    n = max(1, int(math.ceil(abs(u1 - u0) / step - 1e-9)))
    h = (u1 - u0) / n
    y = np.asarray(y0, dtype=float).copy()
    us = u0 + h * np.arange(n + 1)
    out = np.empty((n + 1,) + y.shape)
    out[0] = y
    # overflow is reported as NumericalBlowup below, not as a warning
    with np.errstate(over="ignore", invalid="ignore"):
        for k in range(n):
            u = us[k]
            k1 = rhs(u, y)
            k2 = rhs(u + h / 2, y + h / 2 * k1)
            k3 = rhs(u + h / 2, y + h / 2 * k2)
            k4 = rhs(u + h, y + h * k3)
            y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            if not np.all(np.isfinite(y)):
                raise NumericalBlowup(f"non-finite state at u = {us[k + 1]:.6g}")
            out[k + 1] = y
    return Trajectory(us, out)


def closed_form(c: float, r: float, u) -> FrameState:
    """lambda = -c + r sin u, beta = r cos u."""
    if r < 0:
        raise InvalidParameter("r must be >= 0")
    u = np.asarray(u, dtype=float)
    return FrameState(-c + r * np.sin(u), r * np.cos(u))


def conserved_r(c: float, state) -> np.ndarray:
    """sqrt((lambda + c)^2 + beta^2), constant along Type 2 flows."""
    if isinstance(state, FrameState):
        lam, beta = np.asarray(state.lam), np.asarray(state.beta)
    else:
        y = np.asarray(state, dtype=float)
        lam, beta = y[..., 0], y[..., 1]
    return np.hypot(lam + c, beta)


@dataclass(frozen=True)
class OdeComparison:
    c: float
    r: float
    span: tuple[float, float]
    step: float
    max_dev: float
    r_drift: float
    endpoint: np.ndarray


def compare_with_closed_form(c: float, r: float, u_span: tuple[float, float], step: float) -> OdeComparison:
    """Integrate the Type 2 frame ODE from the closed form's initial state and compare."""
    y0 = closed_form(c, r, u_span[0]).as_array()
    traj = integrate_rk4(lambda u, y: type2_rhs(c, y), y0, u_span, step)
    exact = closed_form(c, r, traj.u).as_array()
    dev = np.abs(traj.y - exact).sum(axis=-1)
    drift = np.abs(conserved_r(c, traj.y) - r)
    return OdeComparison(c, r, tuple(map(float, u_span)), step, float(dev.max()), float(drift.max()), traj.end)


def observed_order(c: float, r: float, u_span: tuple[float, float], step: float) -> float:
    """log2 of the endpoint-error ratio between steps `step` and `step / 2`."""
    e1 = np.abs(compare_with_closed_form(c, r, u_span, step).endpoint - closed_form(c, r, u_span[1]).as_array()).sum()
    e2 = np.abs(compare_with_closed_form(c, r, u_span, step / 2).endpoint - closed_form(c, r, u_span[1]).as_array()).sum()
    return float(np.log2(e1 / e2))


def fit_lambda_phase(u, lam, c: float, r: float) -> tuple[float, float]:
    """Best phase u0 for lam ~ -c + r sin(u + u0) (linear least squares), and the max deviation."""
    u = np.ravel(np.asarray(u, dtype=float))
    lam = np.ravel(np.asarray(lam, dtype=float))
    if r == 0:
        return 0.0, float(np.max(np.abs(lam + c)))
    # r sin(u + u0) = r cos(u0) sin u + r sin(u0) cos u
    A = r * np.stack([np.sin(u), np.cos(u)], -1)
    (p, q), *_ = np.linalg.lstsq(A, lam + c, rcond=None)
    u0 = math.atan2(q, p)
    return u0, float(np.max(np.abs(lam - (-c + r * np.sin(u + u0)))))


# --- PDE systems -----------------------------------------------------------


@dataclass(frozen=True)
class Type1System:
    family = "type1"


@dataclass(frozen=True)
class Type2FlatSystem:
    r: float
    family = "type2-flat"


@dataclass(frozen=True)
class Type2CPSystem:
    r: float
    family = "type2-cp"


PdeSystem = Union[Type1System, Type2FlatSystem, Type2CPSystem]


def system_for(imm: Immersion) -> PdeSystem:
    if imm.family == "type1":
        return Type1System()
    if imm.family == "type2-flat":
        return Type2FlatSystem(imm.params["r"])
    if imm.family == "type2-cp":
        return Type2CPSystem(imm.params["r"])
    raise SystemMismatch(f"no PDE system for family {imm.family!r}")


def _norm(x: np.ndarray) -> np.ndarray:
    return np.max(np.abs(x), axis=-1)


def pde_residual(imm: Immersion, system: PdeSystem, u, v) -> dict[str, np.ndarray]:
    """Residual norms of each equation of `system` on the exact jets of `imm`."""
    if imm.family != system.family or (
        not isinstance(system, Type1System) and abs(imm.params.get("r", math.nan) - system.r) > 1e-12
    ):
        raise SystemMismatch(f"{type(system).__name__} does not describe {imm.name}")
    j = eval_jet2(imm, u, v, EXACT)
    u = np.asarray(u, dtype=float)[..., None]
    if isinstance(system, Type1System):
        lam3 = type1_lambda_cubed(imm, u[..., 0])[..., None]
        return {
            "f_vv - i f_v": _norm(j.fvv - 1j * j.fv),
            "f_uv - i f_u": _norm(j.fuv - 1j * j.fu),
            "f_uu - lambda^3 i f_v": _norm(j.fuu - lam3 * 1j * j.fv),
        }
    r = system.r
    e = np.exp(-1j * u)
    if isinstance(system, Type2FlatSystem):
        return {
            "f_uu - i f_u": _norm(j.fuu - 1j * j.fu),
            "f_uv + r e^{-iu} f_u - i f_v": _norm(j.fuv - (-r * e * j.fu + 1j * j.fv)),
            "f_vv - r e^{-iu} f_v - i r^2 (e^{-2iu} - 1) f_u": _norm(
                j.fvv - (r * e * j.fv + 1j * r**2 * (e**2 - 1) * j.fu)
            ),
        }
    s = np.sin(u)
    return {
        "f_uu - i f_u": _norm(j.fuu - 1j * j.fu),
        "f_uv + (i + r e^{-iu}) f_u - i f_v + f": _norm(j.fuv - (-(1j + r * e) * j.fu + 1j * j.fv - j.f)),
        "f_vv - (i + r e^{-iu})(-2 f_u + f_v + 2 r sin(u) f_u) + 2 (1 - r sin u) f": _norm(
            j.fvv - ((1j + r * e) * (-2 * j.fu + j.fv + 2 * j.fu * r * s) - 2 * (1 - r * s) * j.f)
        ),
    }

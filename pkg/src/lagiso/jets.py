"""Second-order jets of immersions: exact, finite-difference, and their comparison."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from .ambient import AmbientSpace
from .errors import NoExactJet, OutOfChart
from .report import Check, worst

DEFAULT_FD_STEP = 1e-4
SLOTS = ("f", "fu", "fv", "fuu", "fuv", "fvv")


@dataclass(frozen=True)
class Jet2:
    """Value and first/second partials at one or more chart points.

    Each slot has shape (..., q); leading axes index points.
    """

    f: np.ndarray
    fu: np.ndarray
    fv: np.ndarray
    fuu: np.ndarray
    fuv: np.ndarray
    fvv: np.ndarray

    def slots(self) -> tuple[np.ndarray, ...]:
        return tuple(getattr(self, s) for s in SLOTS)

    def second(self, i: int, j: int) -> np.ndarray:
        """Second partial d_i d_j f with 0 -> u, 1 -> v."""
        return (self.fuu, self.fuv, self.fvv)[i + j]

    def first(self, i: int) -> np.ndarray:
        return self.fv if i else self.fu

    def at(self, k) -> "Jet2":
        return Jet2(*(s[k] for s in self.slots()))

    def deviation(self, other: "Jet2") -> np.ndarray:
        """Per-point, per-slot max abs difference; shape (..., 6)."""
        return np.stack(
            [np.max(np.abs(a - b), axis=-1) for a, b in zip(self.slots(), other.slots())],
            axis=-1,
        )


@dataclass(frozen=True)
class Chart:
    u0: float
    u1: float
    v0: float
    v1: float

    def contains(self, u, v, margin: float = 0.0) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return (
            (u >= self.u0 + margin)
            & (u <= self.u1 - margin)
            & (v >= self.v0 + margin)
            & (v <= self.v1 - margin)
        )

    def grid(self, nu: int, nv: int, inset: float = 0.0) -> tuple[np.ndarray, np.ndarray]:
        """Row-major (u outer, v inner) sample points, flattened."""
        us = np.linspace(self.u0 + inset, self.u1 - inset, nu)
        vs = np.linspace(self.v0 + inset, self.v1 - inset, nv)
        U, V = np.meshgrid(us, vs, indexing="ij")
        return U.ravel(), V.ravel()

    def to_list(self) -> list[float]:
        return [self.u0, self.u1, self.v0, self.v1]


@dataclass(frozen=True)
class Immersion:
    """A chart map into an ambient model, optionally with exact jets.

    `evaluate` and `exact_jet` must accept numpy arrays of u and v.
    """

    name: str
    ambient: AmbientSpace
    chart: Chart
    evaluate: Callable[[np.ndarray, np.ndarray], np.ndarray]
    exact_jet: Optional[Callable[[np.ndarray, np.ndarray], Jet2]] = None
    params: dict[str, Any] = field(default_factory=dict)
    family: str = "custom"
    extras: dict[str, Any] = field(default_factory=dict, compare=False, repr=False)


@dataclass(frozen=True)
class Exact:
    pass


@dataclass(frozen=True)
class FiniteDifference:
    h: float = DEFAULT_FD_STEP


EXACT = Exact()


def _fd_jet(imm: Immersion, u: np.ndarray, v: np.ndarray, h: float) -> Jet2:
    F = imm.evaluate
    f = F(u, v)
    fup, fum = F(u + h, v), F(u - h, v)
    fvp, fvm = F(u, v + h), F(u, v - h)
    fpp, fpm = F(u + h, v + h), F(u + h, v - h)
    fmp, fmm = F(u - h, v + h), F(u - h, v - h)
    return Jet2(
        f=f,
        fu=(fup - fum) / (2 * h),
        fv=(fvp - fvm) / (2 * h),
        fuu=(fup - 2 * f + fum) / h**2,
        fuv=(fpp - fpm - fmp + fmm) / (4 * h**2),
        fvv=(fvp - 2 * f + fvm) / h**2,
    )


def eval_jet2(imm: Immersion, u, v, scheme=EXACT) -> Jet2:
    """Jet of `imm` at chart point(s) (u, v)."""
    u, v = np.broadcast_arrays(np.asarray(u, dtype=float), np.asarray(v, dtype=float))
    margin = 2 * scheme.h if isinstance(scheme, FiniteDifference) else 0.0
    inside = imm.chart.contains(u, v, margin)
    if not np.all(inside):
        k = int(np.argmin(inside.ravel()))
        bad = (float(u.ravel()[k]), float(v.ravel()[k]))
        raise OutOfChart(f"point {bad} is outside the chart of {imm.name} (margin {margin:g})")
    if isinstance(scheme, FiniteDifference):
        return _fd_jet(imm, u, v, scheme.h)
    if imm.exact_jet is None:
        raise NoExactJet(f"{imm.name} has no exact jet")
    return imm.exact_jet(u, v)


def fd_validate(imm: Immersion, u, v, h: float = DEFAULT_FD_STEP, tol: float = 1e-6) -> Check:
    """Compare exact and finite-difference jets slot by slot at the given points."""
    exact = eval_jet2(imm, u, v, EXACT)
    approx = eval_jet2(imm, u, v, FiniteDifference(h))
    dev = exact.deviation(approx)
    per_point = dev.max(axis=-1)
    per_slot = dev.reshape(-1, len(SLOTS)).max(axis=0)
    return worst(
        "fd_vs_exact_jets",
        per_point,
        u,
        v,
        tol,
        step=h,
        slot_max={s: float(x) for s, x in zip(SLOTS, per_slot)},
    )

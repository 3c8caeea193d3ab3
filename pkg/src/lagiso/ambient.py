"""Indefinite complex linear algebra on C^2_1 and on the lift model S^5_2(1) in C^3_1.

Vectors are numpy complex arrays whose last axis is the complex coordinate
axis, so every function here broadcasts over leading batch axes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, WrongAmbient

LIGHTLIKE_TOL = 1e-9


class AmbientKind(enum.Enum):
    FLAT_C21 = "FlatC21"
    SPHERE_LIFT_S52 = "SphereLiftS52"


@dataclass(frozen=True)
class AmbientSpace:
    kind: AmbientKind

    @property
    def q(self) -> int:
        return 2 if self.kind is AmbientKind.FLAT_C21 else 3

    @property
    def s(self) -> int:
        return 1

    @property
    def c(self) -> int:
        return 0 if self.kind is AmbientKind.FLAT_C21 else 1

    @property
    def signs(self) -> np.ndarray:
        # index 1: only the first complex coordinate is negative
        out = np.ones(self.q)
        out[0] = -1.0
        return out

    def __str__(self) -> str:
        return self.kind.value


FLAT = AmbientSpace(AmbientKind.FLAT_C21)
SPHERE = AmbientSpace(AmbientKind.SPHERE_LIFT_S52)


class CausalCharacter(enum.Enum):
    SPACELIKE = "Spacelike"
    TIMELIKE = "Timelike"
    LIGHTLIKE = "Lightlike"


def _check_dims(space: AmbientSpace, *vectors: np.ndarray) -> None:
    for z in vectors:
        if z.shape[-1] != space.q:
            raise DimensionMismatch(
                f"expected {space.q} complex coordinates for {space}, got {z.shape[-1]}"
            )


def cvec(*entries) -> np.ndarray:
    return np.asarray(entries, dtype=complex)


def herm(space: AmbientSpace, z, w):
    """Hermitian form b_{1,q}(z, w) = -z_1 conj(w_1) + sum_{k>=2} z_k conj(w_k)."""
    z = np.asarray(z, dtype=complex)
    w = np.asarray(w, dtype=complex)
    _check_dims(space, z, w)
    return np.sum(space.signs * z * np.conj(w), axis=-1)


def inner(space: AmbientSpace, z, w):
    """Real ambient metric, the real part of `herm`."""
    return np.real(herm(space, z, w))


def jmul(z) -> np.ndarray:
    """Complex structure J: multiplication by i."""
    return 1j * np.asarray(z, dtype=complex)


def causal_character(space: AmbientSpace, v, tol: float = LIGHTLIKE_TOL) -> CausalCharacter:
    """Classify a single vector; it is first scaled to Euclidean unit length."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    v = np.asarray(v, dtype=complex)
    _check_dims(space, v)
    norm = np.linalg.norm(v)
    if norm == 0.0:
        return CausalCharacter.LIGHTLIKE
    q = float(inner(space, v / norm, v / norm))
    if abs(q) <= tol:
        return CausalCharacter.LIGHTLIKE
    return CausalCharacter.TIMELIKE if q < 0 else CausalCharacter.SPACELIKE


def _require_sphere(space: AmbientSpace) -> None:
    if space.kind is not AmbientKind.SPHERE_LIFT_S52:
        raise WrongAmbient(f"operation requires the lift model, got {space}")


def sphere_defect(space: AmbientSpace, z):
    """|b(z, z) - 1/c|, zero exactly on S^5_2(1)."""
    _require_sphere(space)
    return np.abs(herm(space, z, z) - 1.0 / space.c)


def horizontality_defect(space: AmbientSpace, f, fu, fv):
    """max(|<if, f_u>|, |<if, f_v>|); zero for a horizontal immersion."""
    _require_sphere(space)
    jf = jmul(f)
    return np.maximum(np.abs(inner(space, jf, fu)), np.abs(inner(space, jf, fv)))

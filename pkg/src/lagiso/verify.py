"""The full certification suite for one immersion, and grid sampling for CSV export."""

from __future__ import annotations

import os
from typing import Iterator

import numpy as np

from .ambient import AmbientKind, horizontality_defect, sphere_defect
from .families import SQ2, expected_point_type, flat_r0_pairings
from .frameflow import fit_lambda_phase, pde_residual, system_for
from .isotropy import (
    DEFAULT_TOL,
    PointType,
    classify_batch,
    lightlike_isotropy_residual,
    pseudo_isotropy_batch,
    recover_lambda,
)
from .jets import DEFAULT_FD_STEP, EXACT, Immersion, eval_jet2, fd_validate
from .report import Check, VerificationReport, worst
from .shape import (
    DEFAULT_STEP,
    covariant_derivative_h,
    cubic_symmetry_defect,
    gauss_defect,
    induced_metric,
    minimality_defect,
    normal_orthogonality_defect,
    normal_span_defect,
    null_frame,
    second_fundamental,
    shape_operator_symmetry_defect,
    shape_operator_tangency_defect,
)

GRID_INSET = 0.01
EXACT_TOL = 1e-8
CODAZZI_TOL = 1e-4
GAUSS_TOL = 1e-3
FD_JET_TOL = 1e-6
LIFT_TOL = 1e-10
INITIAL_TOL = 1e-12
PDE_TOL = 1e-9
LAMBDA_FIT_TOL = 1e-6
PROPER_MIN_NORM = 0.5
TOL_ENV = "LAGISO_TOL"


def default_tol() -> float:
    """Isotropy/classification tolerance; the LAGISO_TOL environment variable overrides it."""
    raw = os.environ.get(TOL_ENV)
    return float(raw) if raw else DEFAULT_TOL


def _count(name: str, bad: np.ndarray, u, v, **info) -> Check:
    bad = np.ravel(bad)
    witness = None
    if bad.any():
        k = int(np.argmax(bad))
        witness = (float(np.ravel(u)[k]), float(np.ravel(v)[k]))
    return Check(name, float(bad.sum()), 0.0, "<=", witness, info)


def _classify(h, tol: float) -> np.ndarray:
    return classify_batch(h, tol)


def lambda_recovered(h, types: np.ndarray) -> np.ndarray:
    out = np.zeros(types.shape)
    for pt in PointType:
        mask = types == pt
        if mask.any():
            out[mask] = recover_lambda(h, pt)[mask]
    return out


def verify_family(
    imm: Immersion,
    nu: int = 21,
    nv: int = 21,
    tol: float | None = None,
    inset: float = GRID_INSET,
    fd_step: float = DEFAULT_FD_STEP,
    diff_step: float = DEFAULT_STEP,
) -> VerificationReport:
    """Run every check that applies to `imm` on an nu x nv grid; checks come in a fixed order."""
    tol = default_tol() if tol is None else tol
    space = imm.ambient
    U, V = imm.chart.grid(nu, nv, inset)
    report = VerificationReport(
        family=imm.family,
        params=dict(imm.params),
        grid={"nu": nu, "nv": nv, "chart": imm.chart.to_list(), "inset": inset},
    )
    add = report.checks.append
    proper = imm.family != "plane"

    jet = eval_jet2(imm, U, V, EXACT)
    g = induced_metric(space, jet)
    add(worst("lorentzian_signature", g.det, U, V, 0.0, "<"))
    frame = null_frame(g)
    h = second_fundamental(space, jet, frame)

    cubic = cubic_symmetry_defect(space, jet, frame)
    add(worst("lagrangian_omega", cubic.omega, U, V, EXACT_TOL))
    add(worst("cubic_symmetry", cubic.cubic, U, V, EXACT_TOL))
    add(worst("normal_span", normal_span_defect(h), U, V, EXACT_TOL))
    add(worst("normal_orthogonality", normal_orthogonality_defect(space, h), U, V, EXACT_TOL))
    tangency = np.max([shape_operator_tangency_defect(h, x, y) for x in (1, 2) for y in (1, 2)], axis=0)
    add(worst("shape_operator_tangency", tangency, U, V, EXACT_TOL))
    add(worst("shape_operator_symmetry", shape_operator_symmetry_defect(h), U, V, EXACT_TOL))
    add(worst("lightlike_isotropy", lightlike_isotropy_residual(h), U, V, EXACT_TOL))

    pseudo, lam_tilde, polar = pseudo_isotropy_batch(h, tol)
    if proper:
        add(worst("pseudo_isotropy_expected_failure", polar, U, V, tol, ">", pseudo_isotropic=bool(pseudo.any())))
    else:
        add(
            worst(
                "pseudo_isotropy",
                polar,
                U,
                V,
                tol,
                pseudo_isotropic=bool(pseudo.all()),
                lambda_tilde=float(np.max(np.abs(lam_tilde))),
            )
        )
    mdef = minimality_defect(h)
    minimal = mdef <= tol
    add(_count("minimal_iff_pseudo_isotropic", minimal != pseudo, U, V))
    if proper:
        add(worst("mean_curvature_nonvanishing", mdef, U, V, PROPER_MIN_NORM, ">="))
    else:
        add(worst("mean_curvature_vanishing", mdef, U, V, tol))

    types = _classify(h, tol)
    want = expected_point_type(imm)
    seen = sorted({t.value for t in types})
    observed = seen[0] if len(seen) == 1 else "mixed"
    add(_count("classification", np.array([t.value != want for t in types]), U, V, expected=want, observed=seen))

    add(worst("codazzi", covariant_derivative_h(space, imm, U, V, diff_step).defect, U, V, CODAZZI_TOL, step=diff_step))
    add(worst("gauss", gauss_defect(space, imm, U, V, diff_step), U, V, GAUSS_TOL, step=diff_step))

    if space.kind is AmbientKind.SPHERE_LIFT_S52:
        add(worst("sphere_defect", sphere_defect(space, jet.f), U, V, LIFT_TOL))
        add(worst("horizontality_defect", horizontality_defect(space, jet.f, jet.fu, jet.fv), U, V, LIFT_TOL))
        j0 = eval_jet2(imm, 0.0, 0.0, EXACT)
        lam0 = -1.0
        dev = max(
            float(np.max(np.abs(j0.f - np.array([0, 0, 1])))),
            float(np.max(np.abs(j0.fu - np.array([1, 1, 0]) / SQ2))),
            float(np.max(np.abs(j0.fv + lam0 * j0.fu - np.array([-1, 1, 0]) / SQ2))),
        )
        add(Check("initial_conditions", dev, INITIAL_TOL, witness=(0.0, 0.0)))

    if imm.family == "type2-flat" and imm.params.get("r") == 0:
        pairings = flat_r0_pairings()
        add(
            Check(
                "frame_pairing_A2_variant",
                abs(pairings["derivation"] - 1.0),
                INITIAL_TOL,
                witness=(0.0, 0.0),
                info={"A2_used": "derivation", "pairing_derivation": pairings["derivation"],
                      "pairing_summary": pairings["summary"]},
            )
        )

    if proper:
        for eq, res in pde_residual(imm, system_for(imm), U, V).items():
            add(worst(f"pde: {eq}", res, U, V, PDE_TOL))

    add(fd_validate(imm, U, V, fd_step, FD_JET_TOL))

    if imm.family in ("type2-flat", "type2-cp"):
        lam = lambda_recovered(h, types)
        u0, dev = fit_lambda_phase(U, lam, imm.params["c"], imm.params["r"])
        add(Check("lambda_phase_fit", dev, LAMBDA_FIT_TOL, info={"u0": u0}))
    for c in report.checks:
        c.info["point_type"] = observed
    return report


def sample_header(q: int) -> list[str]:
    cols = ["u", "v"]
    for k in range(q):
        cols += [f"re{k}", f"im{k}"]
    return cols + ["guu", "guv", "gvv", "lambda_recovered"]


def sample_rows(imm: Immersion, nu: int, nv: int, tol: float | None = None) -> Iterator[list[float]]:
    """Row-major samples: position, induced metric and recovered lambda at every grid point."""
    tol = default_tol() if tol is None else tol
    U, V = imm.chart.grid(nu, nv)
    jet = eval_jet2(imm, U, V, EXACT)
    g = induced_metric(imm.ambient, jet)
    h = second_fundamental(imm.ambient, jet, null_frame(g))
    lam = lambda_recovered(h, _classify(h, tol))
    for k in range(U.size):
        row = [U[k], V[k]]
        for z in jet.f[k]:
            row += [z.real, z.imag]
        row += [g.guu[k], g.guv[k], g.gvv[k], lam[k]]
        yield row

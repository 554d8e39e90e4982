"""Operator-versus-relation tests for minimal extensions.

Whether the extension behind a compressed resolvent is an operator can
be read off exactly in finite dimension (multivalued part of the
coupling) or detected through the growth of boundary families along the
imaginary axis.  Both routes are provided; they must agree on models
with a finite realization.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    ArgumentError,
    AssumptionError,
    RealizationUnavailable,
)
from .linrel import (
    TOL,
    LinearRelation,
    Subspace,
    Tolerances,
    rel_matrix,
    rel_parts,
)
from .boundary import (
    BoundaryRelation,
    OrdinaryTriplet,
    kernel_of_boundary_map,
    weyl_eval,
)
from .nevanlinna import FamilyEval, NevanlinnaPairEval
from .coupling import couple

__all__ = [
    "LimitProbe",
    "AdmissibilityReport",
    "DEFAULT_PROBE",
    "probe_vectors",
    "exact_mul",
    "realize_tau",
    "mul_a0_limit",
    "mul_t_limit",
    "admissible",
    "mt_admissibility",
    "langer_textorius",
]

DEFAULT_GRID = (1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8)


@dataclass(frozen=True)
class LimitProbe:
    """Sampling plan for limits along the upper imaginary axis."""

    y_grid: tuple[float, ...] = DEFAULT_GRID
    slope_tol: float = 0.5
    extra_probes: int = 5
    seed: int = 1729

    def __post_init__(self) -> None:
        if len(self.y_grid) < 4:
            raise ArgumentError("limit grid needs at least four points")
        diffs = np.diff(np.asarray(self.y_grid, dtype=float))
        if np.any(diffs <= 0):
            raise ArgumentError("limit grid must be strictly increasing")


DEFAULT_PROBE = LimitProbe()


@dataclass(frozen=True)
class AdmissibilityReport:
    """Verdicts of the exact and the limit route.

    exact_mul_dim and agreement are None when the parameter family has
    no finite realization attached, in which case only the limit
    verdict is meaningful.
    """

    exact_mul_dim: int | None
    adm1_pass: bool
    adm2_pass: bool
    qlt_pass: bool
    agreement: bool | None
    admissible: bool
    adm1_slope: float
    adm2_slope: float


def probe_vectors(dim: int, probe: LimitProbe = DEFAULT_PROBE) -> np.ndarray:
    """Standard basis columns padded with seeded random unit vectors."""
    if dim == 0:
        return np.zeros((0, 0), dtype=complex)
    rng = np.random.default_rng(probe.seed)
    extra = rng.standard_normal((dim, probe.extra_probes)) + 1j * rng.standard_normal(
        (dim, probe.extra_probes)
    )
    norms = np.linalg.norm(extra, axis=0)
    extra = extra / np.where(norms == 0, 1.0, norms)
    return np.hstack([np.eye(dim, dtype=complex), extra])


def _fit_top_decades(ys: Sequence[float], vals: Sequence[float]) -> tuple[float, float]:
    """Log-log slope over the top four grid decades and the top value."""
    ys_arr = np.asarray(ys, dtype=float)
    vals_arr = np.maximum(np.abs(np.asarray(vals, dtype=float)), 1e-300)
    keep = ys_arr >= ys_arr.max() / 1e4 * 0.999
    if int(keep.sum()) < 2:
        keep = np.ones(ys_arr.shape, dtype=bool)
    slope = np.polyfit(np.log10(ys_arr[keep]), np.log10(vals_arr[keep]), 1)[0]
    return float(slope), float(vals_arr[np.argmax(ys_arr)])


def _tends_to_zero(slope: float, top: float, probe: LimitProbe) -> bool:
    return top < 1e-12 or (slope < -probe.slope_tol and top < 1e-4)


def exact_mul(a_tilde: LinearRelation, tol: Tolerances = TOL) -> Subspace:
    """Multivalued part of a selfadjoint relation, computed exactly."""
    return rel_parts(a_tilde, tol).mul


def realize_tau(tau: NevanlinnaPairEval) -> BoundaryRelation:
    """Finite realization attached to a parameter pair, if any."""
    if tau.realization is None or not isinstance(tau.realization, BoundaryRelation):
        raise RealizationUnavailable("parameter pair carries no finite realization")
    return tau.realization


def _family_matrix(family: FamilyEval, lam: complex, tol: Tolerances) -> np.ndarray:
    return rel_matrix(family.eval(lam), tol)


def mul_a0_limit(family: FamilyEval, probe: LimitProbe = DEFAULT_PROBE, tol: Tolerances = TOL) -> bool:
    """True when the quadratic form of the family grows sublinearly for
    every probe, so the distinguished extension has no multivalued part.

    The discriminated alternative is a positive constant limit of
    (value(iy)h, h)/(iy); a vanishing limit may decay arbitrarily
    slowly, so the gate is a flat-slope test rather than the strict
    decay gate used for the resolvent-difference conditions.
    """
    probes = probe_vectors(family.dim, probe)
    if probes.size == 0:
        return True
    ys = np.asarray(probe.y_grid, dtype=float)
    vals = np.zeros((probes.shape[1], ys.size), dtype=float)
    for j, y in enumerate(ys):
        mat = _family_matrix(family, 1j * y, tol)
        for i in range(probes.shape[1]):
            h = probes[:, i]
            vals[i, j] = abs(np.vdot(h, mat @ h)) / y
    for i in range(probes.shape[1]):
        slope, top = _fit_top_decades(ys, vals[i])
        if slope > -0.25 and top > 1e-6:
            return False
    return True


def mul_t_limit(
    family: FamilyEval,
    probe: LimitProbe = DEFAULT_PROBE,
    h0: Subspace | None = None,
    tol: Tolerances = TOL,
) -> bool:
    """True when y times the dissipative part of the quadratic form
    diverges for every probe orthogonal to h0, so the domain relation
    of the boundary map has no multivalued part off h0."""
    if not mul_a0_limit(family, probe, tol):
        raise AssumptionError("sublinear growth of the family is required first")
    m = family.dim
    probes = probe_vectors(m, probe)
    if probes.size == 0:
        return True
    if h0 is not None:
        if h0.ambient_dim != m:
            raise ArgumentError("h0 does not live in the boundary space")
        proj = np.eye(m, dtype=complex) - h0.projector()
        probes = proj @ probes
        norms = np.linalg.norm(probes, axis=0)
        keep = norms > 0.5
        probes = probes[:, keep] / norms[keep]
        if probes.size == 0:
            return True
    ys = np.asarray(probe.y_grid, dtype=float)
    for i in range(probes.shape[1]):
        h = probes[:, i]
        vals = []
        for y in ys:
            mat = _family_matrix(family, 1j * y, tol)
            vals.append(y * abs(np.imag(np.vdot(h, mat @ h))))
        slope, _ = _fit_top_decades(ys, vals)
        if slope <= probe.slope_tol:
            return False
    return True


def _pair_pieces(
    pi: OrdinaryTriplet, tau: NevanlinnaPairEval, lam: complex, tol: Tolerances
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Weyl matrix, pair factors and the inverse of their combination."""
    m_mat = rel_matrix(weyl_eval(pi, lam, tol), tol)
    phi, psi = tau.eval(lam)
    omega0 = np.asarray(psi, dtype=complex) + m_mat @ np.asarray(phi, dtype=complex)
    try:
        omega = np.linalg.inv(omega0)
    except np.linalg.LinAlgError:
        omega = np.linalg.pinv(omega0)
    return m_mat, np.asarray(phi, dtype=complex), np.asarray(psi, dtype=complex), omega


def _weak_decay(
    mats: list[np.ndarray], ys: np.ndarray, probes: np.ndarray, probe: LimitProbe
) -> tuple[bool, float]:
    """Decide the weak vanishing of mats[j]/ys[j] over probe pairs."""
    vals = []
    for mat, y in zip(mats, ys):
        inner = np.abs(probes.conj().T @ mat @ probes)
        vals.append(float(inner.max()) / y)
    slope, top = _fit_top_decades(ys, vals)
    return _tends_to_zero(slope, top, probe), slope


def admissible(
    pi: OrdinaryTriplet,
    tau: NevanlinnaPairEval,
    probe: LimitProbe = DEFAULT_PROBE,
    tol: Tolerances = TOL,
    z0: complex = 1j,
) -> AdmissibilityReport:
    """Full report: the two resolvent-difference limit conditions, the
    quadratic-form test, and the exact multivalued part of the coupling
    when the pair carries a realization."""
    m = pi.base.boundary_dim
    if tau.dim != m:
        raise ArgumentError("pair dimension differs from the boundary space")
    probes = probe_vectors(m, probe)
    ys = np.asarray(probe.y_grid, dtype=float)
    x1 = []
    x2 = []
    for y in ys:
        m_mat, phi, psi, omega = _pair_pieces(pi, tau, 1j * y, tol)
        x1.append(phi @ omega)
        x2.append(psi @ omega @ m_mat)
    adm1, slope1 = _weak_decay(x1, ys, probes, probe)
    adm2, slope2 = _weak_decay(x2, ys, probes, probe)
    a0_operator = rel_parts(kernel_of_boundary_map(pi, 0, tol), tol).mul.dim == 0
    a1_operator = rel_parts(kernel_of_boundary_map(pi, 1, tol), tol).mul.dim == 0
    if a0_operator:
        verdict = adm1
    elif a1_operator:
        verdict = adm2
    else:
        verdict = adm1 and adm2
    qlt = langer_textorius(pi, tau, z0, probe, tol)
    try:
        chi = realize_tau(tau)
        coupled = couple(pi, chi, tol)
        exact_dim: int | None = exact_mul(coupled, tol).dim
        agreement: bool | None = (exact_dim == 0) == verdict
    except RealizationUnavailable:
        exact_dim = None
        agreement = None
    return AdmissibilityReport(
        exact_mul_dim=exact_dim,
        adm1_pass=adm1,
        adm2_pass=adm2,
        qlt_pass=qlt,
        agreement=agreement,
        admissible=verdict,
        adm1_slope=slope1,
        adm2_slope=slope2,
    )


def mt_admissibility(
    pi: OrdinaryTriplet,
    tau: NevanlinnaPairEval,
    t: np.ndarray,
    probe: LimitProbe = DEFAULT_PROBE,
    tol: Tolerances = TOL,
) -> bool:
    """Strong-limit test of the transformed block family.

    The verdict is always necessary for the minimal extension to be an
    operator; it is sufficient when the boundary condition tied to the
    adjoint of t defines an operator extension, which callers can check
    exactly through the intermediate extension of the triplet.
    """
    m = pi.base.boundary_dim
    t_mat = np.asarray(t, dtype=complex).reshape(m, m)
    probes = probe_vectors(m, probe)
    ys = np.asarray(probe.y_grid, dtype=float)
    vals = []
    for y in ys:
        m_mat, phi, psi, omega = _pair_pieces(pi, tau, 1j * y, tol)
        eye = np.eye(m, dtype=complex)
        ul = -phi @ omega
        ur = eye - phi @ omega @ m_mat
        ll = psi @ omega
        lr = psi @ omega @ m_mat
        m_t = t_mat.conj().T @ ul @ t_mat + t_mat.conj().T @ ur + ll @ t_mat + lr
        vals.append(float(np.linalg.norm(m_t @ probes, axis=0).max()) / y)
    slope, top = _fit_top_decades(ys, vals)
    return _tends_to_zero(slope, top, probe)


def langer_textorius(
    pi: OrdinaryTriplet,
    tau: NevanlinnaPairEval,
    z0: complex,
    probe: LimitProbe = DEFAULT_PROBE,
    tol: Tolerances = TOL,
) -> bool:
    """Quadratic-form test built from one reference point in the upper
    half plane; the verdict does not depend on the reference point."""
    z0 = complex(z0)
    if z0.imag <= 0:
        raise ArgumentError("reference point must lie in the upper half plane")
    m = pi.base.boundary_dim
    m_ref = rel_matrix(weyl_eval(pi, z0, tol), tol)
    probes = probe_vectors(m, probe)
    ys = np.asarray(probe.y_grid, dtype=float)
    vals = np.zeros((probes.shape[1], ys.size), dtype=float)
    for j, y in enumerate(ys):
        m_mat, phi, _, omega = _pair_pieces(pi, tau, 1j * y, tol)
        resolv = phi @ omega
        q = m_mat - (m_mat - m_ref.conj().T) @ resolv @ (m_mat - m_ref)
        for i in range(probes.shape[1]):
            h = probes[:, i]
            vals[i, j] = abs(np.vdot(h, q @ h)) / y
    for i in range(probes.shape[1]):
        slope, top = _fit_top_decades(ys, vals[i])
        if not _tends_to_zero(slope, top, probe):
            return False
    return True

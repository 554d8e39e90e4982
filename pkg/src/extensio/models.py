"""Fixture construction and closed-form models.

Seeded random scenes and relations, the small hand fixtures used across
the test suite, free Sturm-Liouville boundary maps on an interval in
closed form, and the interface determinant whose real zeros are the
eigenvalues of two coupled intervals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np
from scipy.linalg import expm
from scipy.optimize import brentq, minimize_scalar
from scipy.stats import unitary_group

from .errors import ArgumentError, NearPole
from .linrel import (
    TOL,
    LinearRelation,
    Tolerances,
    relation_from_generators,
    relation_from_matrix,
    subspace_from_columns,
)
from .boundary import BoundaryRelation, OrdinaryTriplet, von_neumann_triplet, weyl_eval
from .nevanlinna import NevanlinnaPairEval, pair_from_relation
from .coupling import CouplingScene, canonical_chi, coupling_scene
from .kreinspace import FundamentalSymmetry
from .transforms import StandardJUnitary, standard_j_unitary

__all__ = [
    "SLModel",
    "fix_a_relation",
    "fix_b_relation",
    "fix_b_scene",
    "fix_b_triplet",
    "fix_infty_relation",
    "fix_infty_steering",
    "twist_relation",
    "realized_constant_pair",
    "realized_pair",
    "random_hermitian",
    "random_relation",
    "random_selfadjoint_relation",
    "random_symmetric_restriction",
    "random_scene",
    "random_standard_j_unitary",
    "scene_triplet",
    "sl_weyl",
    "sl_pair_eval",
    "halfline_m",
    "periodic_spectrum",
]


# ---------------------------------------------------------------------------
# hand fixtures


def fix_a_relation(tol: Tolerances = TOL) -> LinearRelation:
    """Rank-one symmetric operator on C^2 sending e1 to e2."""
    gens = np.array([[1.0], [0.0], [0.0], [1.0]], dtype=complex)
    return relation_from_generators(2, 2, gens, tol)


def fix_b_relation(tol: Tolerances = TOL) -> LinearRelation:
    """Graph of the flip matrix on C^2."""
    return relation_from_matrix(np.array([[0.0, 1.0], [1.0, 0.0]]), tol)


def fix_b_scene(tol: Tolerances = TOL) -> CouplingScene:
    """The flip matrix split over C^1 + C^1."""
    return coupling_scene(fix_b_relation(tol), 1, 1, tol)


def fix_b_triplet(tol: Tolerances = TOL) -> OrdinaryTriplet:
    """Triplet over the trivial restriction in C^1 whose Weyl function is
    the identity coordinate."""
    from .boundary import ordinary_triplet, validate_boundary_relation
    from .linrel import identity_relation

    return ordinary_triplet(validate_boundary_relation(identity_relation(2), tol), tol)


def fix_infty_relation(tol: Tolerances = TOL) -> LinearRelation:
    """Selfadjoint extension of the rank-one fixture with a one
    dimensional multivalued part."""
    gens = np.array(
        [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 1.0]], dtype=complex
    )
    return relation_from_generators(2, 2, gens, tol)


def twist_relation(v: LinearRelation, tol: Tolerances = TOL) -> LinearRelation:
    """Flip the sign of the output component; an involution that maps
    selfadjoint parameters to selfadjoint parameters."""
    gens = np.vstack([v.in_block, -v.out_block])
    return relation_from_generators(v.dim_in, v.dim_out, gens, tol)


# ---------------------------------------------------------------------------
# realized parameter pairs


def realized_constant_pair(v: LinearRelation, tol: Tolerances = TOL) -> NevanlinnaPairEval:
    """Constant pair whose finite realization couples to the extension
    with boundary values in the sign-twisted parameter."""
    base = pair_from_relation(v)
    chi = canonical_chi(twist_relation(v, tol), tol)
    return NevanlinnaPairEval(base.dim, base.eval, chi)


def realized_pair(chi: BoundaryRelation, tol: Tolerances = TOL) -> NevanlinnaPairEval:
    """Pair evaluator reading off the Weyl family of a boundary relation,
    carrying that relation as its realization."""
    m = chi.boundary_dim

    def eval_at(lam: complex) -> tuple[np.ndarray, np.ndarray]:
        value = weyl_eval(chi, lam, tol)
        return value.in_block, value.out_block

    return NevanlinnaPairEval(m, eval_at, chi)


def _triplet_boundary_values(
    pi: OrdinaryTriplet, columns: np.ndarray, tol: Tolerances
) -> np.ndarray:
    x = pi.gamma.in_block
    y = pi.gamma.out_block
    coeff, *_ = np.linalg.lstsq(x, columns, rcond=None)
    if np.linalg.norm(x @ coeff - columns) > tol.angle * (1 + np.linalg.norm(columns)):
        raise ArgumentError("columns are outside the domain of the triplet")
    return y @ coeff


def fix_infty_steering(tol: Tolerances = TOL) -> tuple[OrdinaryTriplet, NevanlinnaPairEval]:
    """Triplet for the rank-one fixture together with the constant pair
    that steers the coupling onto the multivalued extension."""
    pi = von_neumann_triplet(fix_a_relation(tol), tol=tol)
    basis = fix_infty_relation(tol).graph.basis
    bounds = _triplet_boundary_values(pi, basis, tol)
    m = pi.base.boundary_dim
    theta = relation_from_generators(m, m, bounds, tol)
    return pi, realized_constant_pair(twist_relation(theta, tol), tol)


# ---------------------------------------------------------------------------
# seeded random generators


def random_hermitian(rng: np.random.Generator, n: int) -> np.ndarray:
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (g + g.conj().T) / 2


def random_relation(
    rng: np.random.Generator, dim_in: int, dim_out: int, graph_dim: int | None = None,
    tol: Tolerances = TOL,
) -> LinearRelation:
    total = dim_in + dim_out
    if graph_dim is None:
        graph_dim = int(rng.integers(0, total + 1))
    gens = rng.standard_normal((total, graph_dim)) + 1j * rng.standard_normal(
        (total, graph_dim)
    )
    return LinearRelation(dim_in, dim_out, subspace_from_columns(gens, tol))


def random_selfadjoint_relation(
    rng: np.random.Generator, n: int, tol: Tolerances = TOL
) -> LinearRelation:
    """Cayley image of a Haar unitary; multivalued with positive
    probability."""
    u = unitary_group.rvs(n, random_state=rng)
    eye = np.eye(n, dtype=complex)
    gens = np.vstack([u - eye, 1j * (u + eye)])
    return relation_from_generators(n, n, gens, tol)


def random_symmetric_restriction(
    rng: np.random.Generator, n: int, defect: int, tol: Tolerances = TOL
) -> LinearRelation:
    """Restriction of a random Hermitian matrix to a random subspace of
    codimension defect; symmetric with equal defect numbers."""
    if not 0 < defect <= n:
        raise ArgumentError("defect must lie between 1 and the dimension")
    h = random_hermitian(rng, n)
    g = rng.standard_normal((n, n - defect)) + 1j * rng.standard_normal((n, n - defect))
    q = np.linalg.qr(g)[0]
    return relation_from_generators(n, n, np.vstack([q, h @ q]), tol)


def random_scene(
    seed: int,
    n1: int,
    n2: int,
    a_tilde: LinearRelation | None = None,
    tol: Tolerances = TOL,
) -> CouplingScene:
    """Coupling scene over a seeded Gaussian Hermitian matrix; a_tilde
    overrides the matrix for fixture injection."""
    if n1 < 1 or n2 < 1:
        raise ArgumentError("both component spaces must be nontrivial")
    if a_tilde is None:
        rng = np.random.default_rng(seed)
        a_tilde = relation_from_matrix(random_hermitian(rng, n1 + n2), tol)
    return coupling_scene(a_tilde, n1, n2, tol)


def random_standard_j_unitary(
    rng: np.random.Generator, m: int, scale: float = 0.7
) -> StandardJUnitary:
    j = FundamentalSymmetry(m).matrix
    s = scale * random_hermitian(rng, 2 * m)
    return standard_j_unitary(expm(1j * (j @ s)))


def scene_triplet(scene: CouplingScene, tol: Tolerances = TOL) -> OrdinaryTriplet:
    """Distinguished triplet for the first restriction of a scene."""
    return von_neumann_triplet(scene.s1, tol=tol)


# ---------------------------------------------------------------------------
# Sturm-Liouville interval models


@dataclass(frozen=True)
class SLModel:
    """Free second-derivative model on an interval of the given length;
    square roots use the principal branch with nonnegative imaginary
    part."""

    length: float = 1.0

    def __post_init__(self) -> None:
        if not self.length > 0:
            raise ArgumentError("interval length must be positive")


def _sqrt_upper(lam: complex) -> complex:
    w = complex(np.sqrt(complex(lam)))
    if w.imag < 0 or (w.imag == 0 and w.real < 0):
        w = -w
    return w


def _entire_sincos(model: SLModel, lam: complex) -> tuple[complex, complex]:
    """sin(w l)/w and cos(w l), both entire in lam."""
    w = _sqrt_upper(lam)
    z = w * model.length
    c = complex(np.cos(z))
    if abs(z) < 1e-5:
        s = model.length * (1 - z**2 / 6 + z**4 / 120)
    else:
        s = complex(np.sin(z)) / w
    return s, c


def sl_weyl(model: SLModel, lam: complex) -> np.ndarray:
    """Boundary-value transfer matrix of -f'' = lam f with data
    (f(0), f(l)) against (f'(0), -f'(l))."""
    w = _sqrt_upper(lam)
    z = w * model.length
    k = int(round(z.real / np.pi))
    if k >= 1 and abs(z - k * np.pi) < 1e-6:
        raise NearPole(f"lambda={lam} is within 1e-6 of a Dirichlet eigenvalue")
    if z.imag > 30.0:
        # exp(i z) is tiny here; the naive quotient overflows long before
        # the matrix itself grows.
        q = complex(np.exp(2j * z))
        diag = 1j * w * (1.0 + q) / (1.0 - q)
        off = 2j * w * complex(np.exp(1j * z)) / (q - 1.0)
        return np.array([[diag, off], [off, diag]], dtype=complex)
    s, c = _entire_sincos(model, lam)
    return (1.0 / s) * np.array([[-c, 1.0], [1.0, -c]], dtype=complex)


def _sl_pair_fn(model: SLModel) -> Callable[[complex], tuple[np.ndarray, np.ndarray]]:
    def eval_at(lam: complex) -> tuple[np.ndarray, np.ndarray]:
        w = _sqrt_upper(lam)
        z = w * model.length
        if z.imag > 300.0:
            # Same subspace, rescaled by 2 exp(i z) to stay representable.
            q = complex(np.exp(2j * z))
            g = 2.0 * complex(np.exp(1j * z))
            phi = ((q - 1.0) / (1j * w)) * np.eye(2, dtype=complex)
            psi = np.array([[-(q + 1.0), g], [g, -(q + 1.0)]], dtype=complex)
            return phi, psi
        s, c = _entire_sincos(model, lam)
        phi = s * np.eye(2, dtype=complex)
        psi = np.array([[-c, 1.0], [1.0, -c]], dtype=complex)
        return phi, psi

    return eval_at


def sl_pair_eval(model: SLModel) -> NevanlinnaPairEval:
    """Entire pair representing the interval boundary-value family
    without poles; the quotient reproduces sl_weyl off the poles."""
    return NevanlinnaPairEval(2, _sl_pair_fn(model))


def halfline_m(lam: complex) -> complex:
    """Titchmarsh coefficient of the free half line: i times the upper
    square root."""
    lam = complex(lam)
    if lam.imag == 0 and lam.real >= 0:
        raise ArgumentError("evaluation on the essential spectrum is rejected")
    return 1j * _sqrt_upper(lam)


# ---------------------------------------------------------------------------
# coupled-interval spectrum


def _interface_det(model: SLModel, variant: str) -> Callable[[complex], complex]:
    """Determinant of the interface system for two mirrored copies,
    built from entire pairs so interval eigenvalues cause no poles."""
    if variant == "periodic":

        def det_at(lam: complex) -> complex:
            s, c = _entire_sincos(model, lam)
            phi = s * np.eye(2, dtype=complex)
            psi = np.array([[-c, 1.0], [1.0, -c]], dtype=complex)
            top = np.hstack([phi, -phi])
            bot = np.hstack([psi, psi])
            return complex(np.linalg.det(np.vstack([top, bot])))

        return det_at
    if variant == "dirichlet":

        def det_at(lam: complex) -> complex:
            s, c = _entire_sincos(model, lam)
            d = np.array([[s, -s], [-c, -c]], dtype=complex)
            return complex(np.linalg.det(d))

        return det_at
    raise ArgumentError(f"unknown coupling variant {variant!r}")


def periodic_spectrum(
    model: SLModel,
    search_window: tuple[float, float],
    variant: str = "periodic",
) -> list[float]:
    """Real zeros of the interface determinant for two coupled copies of
    the interval: the eigenvalues of the glued selfadjoint operator.

    Zeros are located on a grid of the determinant evaluated just above
    the axis; odd-order zeros are bracketed through the real part and
    even-order zeros through the imaginary part near magnitude minima,
    then refined by bisection.
    """
    lo, hi = float(search_window[0]), float(search_window[1])
    if not lo < hi:
        raise ArgumentError("search window must be nonempty")
    eps = 1e-8
    det_fn = _interface_det(model, variant)

    def det_at(x: float) -> complex:
        return det_fn(x + 1j * eps)

    step = min(0.02, (hi - lo) / 400)
    xs = np.arange(lo, hi + step, step)
    vals = np.array([det_at(x) for x in xs])
    mags = np.abs(vals)
    scale = float(mags.max()) if mags.size else 1.0
    roots: list[float] = []

    re = np.real(vals)
    for i in range(len(xs) - 1):
        if re[i] == 0.0:
            roots.append(float(xs[i]))
        elif re[i] * re[i + 1] < 0:
            roots.append(
                float(brentq(lambda x: det_at(x).real, xs[i], xs[i + 1], xtol=1e-10))
            )

    for i in range(1, len(xs) - 1):
        if mags[i] < mags[i - 1] and mags[i] <= mags[i + 1] and mags[i] < 1e-5 * scale:
            a, b = float(xs[i - 1]), float(xs[i + 1])
            ia, ib = det_at(a).imag, det_at(b).imag
            if ia * ib < 0:
                roots.append(float(brentq(lambda x: det_at(x).imag, a, b, xtol=1e-10)))
            else:
                res = minimize_scalar(
                    lambda x: abs(det_at(x)),
                    bounds=(a, b),
                    method="bounded",
                    options={"xatol": 1e-12},
                )
                if abs(det_at(float(res.x))) < 1e-10 * (1 + scale):
                    roots.append(float(res.x))

    cleaned: list[float] = []
    for x in sorted(roots):
        if lo - 1e-9 <= x <= hi + 1e-9 and (
            not cleaned or abs(x - cleaned[-1]) > 1e-6 * (1 + abs(x))
        ):
            cleaned.append(x)
    return cleaned

"""Indefinite inner product structure on C^{2n} and the main transform.

The pairing is [u, v] = (J u, v) with the block symmetry
J = [[0, -iI], [iI, 0]] materialized as an explicit matrix.  Euclidean
inner products stay linear in the first argument, as in ``linrel``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError, DimMismatch, NotUnitary
from .linrel import (
    TOL,
    LinearRelation,
    Subspace,
    Tolerances,
    is_subrelation,
    is_subspace,
    largest_principal_angle,
    rel_adjoint,
    rel_equal,
    rel_inverse,
    rel_parts,
    rel_product,
    relation_from_matrix,
    subspace_complement,
    subspace_from_columns,
)

__all__ = [
    "FundamentalSymmetry",
    "KreinRelation",
    "DomainIdentityReport",
    "ProductReport",
    "krein_pairing",
    "krein_complement",
    "krein_from_matrix",
    "krein_adjoint",
    "is_isometric",
    "is_unitary",
    "main_transform",
    "inverse_main_transform",
    "unitary_domain_identities",
    "product_unitarity_check",
]


@dataclass(frozen=True)
class FundamentalSymmetry:
    """Signature matrix J on C^{2n}; J equals its adjoint and its inverse."""

    half_dim: int

    def __post_init__(self) -> None:
        if self.half_dim < 0:
            raise ArgumentError("half_dim must be nonnegative")

    @property
    def dim(self) -> int:
        return 2 * self.half_dim

    @property
    def matrix(self) -> np.ndarray:
        n = self.half_dim
        eye = np.eye(n, dtype=complex)
        zero = np.zeros((n, n), dtype=complex)
        return np.vstack([np.hstack([zero, -1j * eye]), np.hstack([1j * eye, zero])])


@dataclass(frozen=True)
class KreinRelation:
    """A linear relation between two indefinite spaces, with their symmetries."""

    rel: LinearRelation
    j_in: FundamentalSymmetry
    j_out: FundamentalSymmetry

    def __post_init__(self) -> None:
        if self.rel.dim_in != self.j_in.dim or self.rel.dim_out != self.j_out.dim:
            raise DimMismatch("relation dimensions do not match the symmetries")


def krein_from_matrix(mat, tol: Tolerances = TOL) -> KreinRelation:
    """Wrap the graph of a 2n x 2m matrix with the standard symmetries."""
    rel = relation_from_matrix(mat, tol)
    if rel.dim_in % 2 or rel.dim_out % 2:
        raise DimMismatch("matrix sides must be even")
    return KreinRelation(rel, FundamentalSymmetry(rel.dim_in // 2), FundamentalSymmetry(rel.dim_out // 2))


def krein_pairing(j: FundamentalSymmetry, u, v) -> complex:
    """Indefinite pairing [u, v] = (J u, v), linear in u."""
    uu = np.asarray(u, dtype=complex).reshape(-1)
    vv = np.asarray(v, dtype=complex).reshape(-1)
    if uu.size != j.dim or vv.size != j.dim:
        raise DimMismatch("vectors do not live in the symmetry's space")
    return complex(np.vdot(vv, j.matrix @ uu))


def krein_complement(space: Subspace, j: FundamentalSymmetry, tol: Tolerances = TOL) -> Subspace:
    """J-orthogonal complement: all u with [u, v] = 0 for every v in space."""
    if space.ambient_dim != j.dim:
        raise DimMismatch("space does not live in the symmetry's space")
    return subspace_complement(subspace_from_columns(j.matrix @ space.basis, tol), tol)


def krein_adjoint(t: KreinRelation, tol: Tolerances = TOL) -> LinearRelation:
    """Indefinite adjoint: compose J_in, the Euclidean adjoint, and J_out."""
    j_out_rel = relation_from_matrix(t.j_out.matrix, tol)
    j_in_rel = relation_from_matrix(t.j_in.matrix, tol)
    star = rel_adjoint(t.rel, tol)
    return rel_product(j_in_rel, rel_product(star, j_out_rel, tol), tol)


def is_isometric(t: KreinRelation, tol: Tolerances = TOL) -> bool:
    """Inverse graph contained in the indefinite adjoint."""
    return is_subrelation(rel_inverse(t.rel), krein_adjoint(t, tol), tol)


def is_unitary(t: KreinRelation, tol: Tolerances = TOL) -> bool:
    """Inverse graph equals the indefinite adjoint."""
    return rel_equal(rel_inverse(t.rel), krein_adjoint(t, tol), tol)


def main_transform(gamma: KreinRelation) -> LinearRelation:
    """Reorder {(f, f'), (h, h')} into {(f, h), (f', -h')} on C^{n+m}."""
    n = gamma.j_in.half_dim
    m = gamma.j_out.half_dim
    basis = gamma.rel.graph.basis
    f = basis[:n, :]
    fp = basis[n : 2 * n, :]
    h = basis[2 * n : 2 * n + m, :]
    hp = basis[2 * n + m :, :]
    # Row shuffle with a sign flip keeps the basis orthonormal exactly.
    shuffled = np.vstack([f, h, fp, -hp])
    return LinearRelation(n + m, n + m, Subspace(2 * (n + m), shuffled))


def inverse_main_transform(atilde: LinearRelation, split: tuple[int, int]) -> KreinRelation:
    """Undo the main transform; split gives the two half dimensions (n, m)."""
    n, m = split
    if atilde.dim_in != n + m or atilde.dim_out != n + m:
        raise DimMismatch("relation does not act on C^{n+m}")
    basis = atilde.graph.basis
    f = basis[:n, :]
    h = basis[n : n + m, :]
    fp = basis[n + m : 2 * n + m, :]
    neg_hp = basis[2 * n + m :, :]
    graph = np.vstack([f, fp, h, -neg_hp])
    rel = LinearRelation(2 * n, 2 * m, Subspace(2 * n + 2 * m, graph))
    return KreinRelation(rel, FundamentalSymmetry(n), FundamentalSymmetry(m))


@dataclass(frozen=True)
class DomainIdentityReport:
    """Residual angles for the kernel/domain and multivalued/range pairings."""

    ker_angle: float
    mul_angle: float


def unitary_domain_identities(t: KreinRelation, tol: Tolerances = TOL) -> DomainIdentityReport:
    """Check ker T = [perp] of dom T and mul T = [perp] of ran T."""
    if not is_unitary(t, tol):
        raise NotUnitary("domain identities hold for unitary relations only")
    parts = rel_parts(t.rel, tol)
    ker_angle = largest_principal_angle(parts.ker, krein_complement(parts.dom, t.j_in, tol))
    mul_angle = largest_principal_angle(parts.mul, krein_complement(parts.ran, t.j_out, tol))
    return DomainIdentityReport(ker_angle, mul_angle)


@dataclass(frozen=True)
class ProductReport:
    """Outcome of composing two indefinite relations, left after right."""

    isometric: bool
    unitary: bool
    hypotheses: tuple[str, ...]


def _standard_operator(rel: LinearRelation, tol: Tolerances) -> bool:
    parts = rel_parts(rel, tol)
    return parts.dom.dim == rel.dim_in and parts.mul.dim == 0


def product_unitarity_check(left: KreinRelation, right: KreinRelation, tol: Tolerances = TOL) -> ProductReport:
    """Compose left after right; report isometry, unitarity, and which
    sufficient hypotheses held.  Closedness conditions are vacuous in
    finite dimension, so composing two unitaries always yields a unitary.
    """
    if right.j_out.half_dim != left.j_in.half_dim:
        raise DimMismatch("inner spaces of the factors differ")
    product = KreinRelation(rel_product(left.rel, right.rel, tol), right.j_in, left.j_out)
    left_parts = rel_parts(left.rel, tol)
    right_parts = rel_parts(right.rel, tol)
    held: list[str] = []
    if is_subspace(right_parts.ran, left_parts.dom, tol):
        held.append("ran_right_inside_dom_left")
    if is_subspace(left_parts.dom, right_parts.ran, tol):
        held.append("dom_left_inside_ran_right")
    if _standard_operator(left.rel, tol):
        held.append("left_standard_operator")
    if _standard_operator(right.rel, tol):
        held.append("right_standard_operator")
    return ProductReport(is_isometric(product, tol), is_unitary(product, tol), tuple(held))

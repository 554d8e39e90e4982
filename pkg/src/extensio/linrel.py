"""Calculus of linear relations in finite-dimensional complex spaces.

A linear relation from :math:`\\mathbb{C}^n` to :math:`\\mathbb{C}^m` is a
subspace of :math:`\\mathbb{C}^{n+m}`; the first ``n`` coordinates carry the
input component ``f``, the last ``m`` the output component ``f'``.  Graphs of
matrices are the single-valued special case; nothing below assumes
single-valuedness.  Inverses, adjoints, sums, products, eigenspaces and
resolvents are all subspace computations, with every rank decision made by an
SVD under an explicit tolerance context.

Inner products are linear in the first argument and conjugate-linear in the
second, so ``(u, v) = v^H u``.

Everything is immutable and pure; in finite dimension every relation is
closed, so closure operations are identities and are not provided.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import ArgumentError, AssumptionError, SingularAtLambda

__all__ = [
    "Tolerances",
    "TOL",
    "Subspace",
    "LinearRelation",
    "as_complex_matrix",
    "subspace_from_columns",
    "zero_subspace",
    "full_subspace",
    "subspace_span",
    "subspace_complement",
    "subspace_intersect",
    "subspace_sum",
    "subspace_direct_sum",
    "subspace_coords",
    "subspace_permute",
    "containment_gap",
    "is_subspace",
    "largest_principal_angle",
    "principal_angles",
    "subspace_equal",
    "relation_from_graph",
    "relation_from_generators",
    "relation_from_matrix",
    "zero_relation",
    "identity_relation",
    "mul_relation",
    "rel_parts",
    "RelationParts",
    "rel_inverse",
    "rel_adjoint",
    "rel_neg",
    "rel_scale",
    "rel_shift",
    "rel_sum",
    "rel_comp_sum",
    "rel_product",
    "rel_intersect",
    "rel_image",
    "rel_preimage",
    "rel_apply",
    "rel_direct_sum",
    "rel_permute",
    "eigenspace",
    "rel_classify",
    "RelationFlags",
    "operator_part",
    "is_simple",
    "simplicity_samples",
    "is_subrelation",
    "rel_equal",
    "rel_matrix",
    "resolvent_matrix",
]


@dataclass(frozen=True)
class Tolerances:
    """Tolerance context threaded through all subspace decisions.

    :param rank: relative singular-value cutoff; the effective threshold for
        a matrix ``M`` is ``rank * smax(M) * max(M.shape)``.
    :param angle: largest principal angle (radians) below which two
        subspaces count as equal / contained.
    :param psd: eigenvalue slack for semidefiniteness and Hermiticity checks.
    """

    rank: float = 1e-10
    angle: float = 1e-8
    psd: float = 1e-9


TOL = Tolerances()


def as_complex_matrix(entries, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Validate and return a dense complex matrix.

    Accepts anything array-like, enforces two dimensions, optional shape, and
    finiteness of all entries.
    """
    mat = np.asarray(entries, dtype=complex)
    if mat.ndim != 2:
        raise ArgumentError(f"expected a matrix, got ndim={mat.ndim}")
    if rows is not None and mat.shape[0] != rows:
        raise ArgumentError(f"expected {rows} rows, got {mat.shape[0]}")
    if cols is not None and mat.shape[1] != cols:
        raise ArgumentError(f"expected {cols} columns, got {mat.shape[1]}")
    if mat.size and not (
        np.all(np.isfinite(mat.real)) and np.all(np.isfinite(mat.imag))
    ):
        raise ArgumentError("matrix entries must be finite")
    return mat


def _rank(singular: np.ndarray, shape: tuple[int, int], tol: Tolerances, scale: float | None = None) -> int:
    if singular.size == 0:
        return 0
    anchor = singular[0] if scale is None else max(singular[0], scale)
    cutoff = tol.rank * anchor * max(shape)
    return int(np.count_nonzero(singular > cutoff))


def _orthonormal_columns(mat: np.ndarray, tol: Tolerances, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis of the column span, rank decided by SVD.

    ``scale`` anchors the cutoff for inputs sliced out of unit bases,
    where a uniformly tiny block is noise rather than a small subspace.
    """
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return np.zeros((mat.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(mat, full_matrices=False)
    return np.ascontiguousarray(u[:, : _rank(s, mat.shape, tol, scale)])


def _nullspace(mat: np.ndarray, tol: Tolerances, scale: float | None = None) -> np.ndarray:
    """Orthonormal basis of ker(mat) as columns."""
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return np.eye(mat.shape[1], dtype=complex)
    _, s, vh = np.linalg.svd(mat)
    r = _rank(s, mat.shape, tol, scale)
    return np.ascontiguousarray(vh[r:, :].conj().T)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A subspace of ``C^ambient_dim`` held as an orthonormal column basis."""

    ambient_dim: int
    basis: np.ndarray

    def __post_init__(self):
        basis = as_complex_matrix(self.basis, rows=self.ambient_dim)
        object.__setattr__(self, "basis", basis)
        k = basis.shape[1]
        if k > self.ambient_dim:
            raise ArgumentError("basis has more columns than the ambient dimension")
        if k:
            gram = basis.conj().T @ basis
            if np.linalg.norm(gram - np.eye(k)) > 1e-7 * max(1, k):
                raise ArgumentError("basis columns are not orthonormal")

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        """Orthogonal projector onto the subspace as a dense matrix."""
        return self.basis @ self.basis.conj().T

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def subspace_from_columns(mat, tol: Tolerances = TOL) -> Subspace:
    """Span of the columns of ``mat`` with SVD rank decision.

    A zero (or empty) matrix yields the zero subspace.
    """
    mat = as_complex_matrix(mat)
    return Subspace(mat.shape[0], _orthonormal_columns(mat, tol))


def zero_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.zeros((ambient_dim, 0), dtype=complex))


def full_subspace(ambient_dim: int) -> Subspace:
    return Subspace(ambient_dim, np.eye(ambient_dim, dtype=complex))


def subspace_span(vectors: Sequence, ambient_dim: int, tol: Tolerances = TOL) -> Subspace:
    """Span of a sequence of ambient vectors."""
    if len(vectors) == 0:
        return zero_subspace(ambient_dim)
    cols = np.column_stack([np.asarray(v, dtype=complex).reshape(-1) for v in vectors])
    if cols.shape[0] != ambient_dim:
        raise ArgumentError("vector length does not match the ambient dimension")
    return subspace_from_columns(cols, tol)


def subspace_complement(space: Subspace, tol: Tolerances = TOL) -> Subspace:
    """Orthogonal complement within the ambient space."""
    return Subspace(space.ambient_dim, _nullspace(space.basis.conj().T, tol))


def subspace_intersect(a: Subspace, b: Subspace, tol: Tolerances = TOL) -> Subspace:
    """Intersection via the nullspace of the stacked basis matrix."""
    if a.ambient_dim != b.ambient_dim:
        raise ArgumentError("ambient dimensions differ")
    if a.dim == 0 or b.dim == 0:
        return zero_subspace(a.ambient_dim)
    coeff = _nullspace(np.hstack([a.basis, -b.basis]), tol)
    return subspace_from_columns(a.basis @ coeff[: a.dim], tol)


def subspace_sum(a: Subspace, b: Subspace, tol: Tolerances = TOL) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ArgumentError("ambient dimensions differ")
    return subspace_from_columns(np.hstack([a.basis, b.basis]), tol)


def subspace_direct_sum(a: Subspace, b: Subspace) -> Subspace:
    """Block direct sum inside ``C^(ambient_a + ambient_b)``."""
    top = np.hstack([a.basis, np.zeros((a.ambient_dim, b.dim))])
    bot = np.hstack([np.zeros((b.ambient_dim, a.dim)), b.basis])
    return Subspace(a.ambient_dim + b.ambient_dim, np.vstack([top, bot]))


def subspace_coords(space: Subspace, rows: Sequence[int], tol: Tolerances = TOL) -> Subspace:
    """Coordinate projection: span of the selected rows of the basis.

    The rank cutoff is anchored at the unit column scale of the basis, so
    a projection that is uniformly at rounding level collapses to zero.
    """
    rows = list(rows)
    if not space.dim:
        return zero_subspace(len(rows))
    return Subspace(len(rows), _orthonormal_columns(space.basis[rows, :], tol, 1.0))


def subspace_permute(space: Subspace, perm: Sequence[int]) -> Subspace:
    """Reorder ambient coordinates; orthonormality is preserved."""
    perm = list(perm)
    if sorted(perm) != list(range(space.ambient_dim)):
        raise ArgumentError("not a permutation of the ambient coordinates")
    return Subspace(space.ambient_dim, space.basis[perm, :])


def containment_gap(inner: Subspace, outer: Subspace) -> float:
    """Largest principal angle from ``inner`` to its projection on ``outer``.

    Computed through the sine, ``||(I - P_outer) B_inner||_2``, which stays
    accurate for angles far below sqrt(machine eps); the arccos route loses
    exactly the small angles the equality test cares about.
    """
    if inner.ambient_dim != outer.ambient_dim:
        raise ArgumentError("ambient dimensions differ")
    if inner.dim == 0:
        return 0.0
    resid = inner.basis - outer.basis @ (outer.basis.conj().T @ inner.basis)
    sine = min(1.0, float(np.linalg.norm(resid, 2)))
    return float(np.arcsin(sine))


def is_subspace(inner: Subspace, outer: Subspace, tol: Tolerances = TOL) -> bool:
    return containment_gap(inner, outer) <= tol.angle


def largest_principal_angle(a: Subspace, b: Subspace) -> float:
    return max(containment_gap(a, b), containment_gap(b, a))


def principal_angles(a: Subspace, b: Subspace) -> np.ndarray:
    """All principal angles, ascending, between equal-or-unequal dim spaces."""
    if a.dim == 0 or b.dim == 0:
        return np.zeros(0)
    cosines = np.linalg.svd(a.basis.conj().T @ b.basis, compute_uv=False)
    return np.arccos(np.clip(cosines, -1.0, 1.0))[::-1]


def subspace_equal(a: Subspace, b: Subspace, tol: Tolerances = TOL) -> bool:
    if a.ambient_dim != b.ambient_dim or a.dim != b.dim:
        return False
    return largest_principal_angle(a, b) <= tol.angle


class RelationParts(NamedTuple):
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """A subspace of ``C^(dim_in + dim_out)`` viewed as a multivalued map."""

    dim_in: int
    dim_out: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != self.dim_in + self.dim_out:
            raise ArgumentError("graph ambient dimension must be dim_in + dim_out")

    @property
    def in_block(self) -> np.ndarray:
        return self.graph.basis[: self.dim_in, :]

    @property
    def out_block(self) -> np.ndarray:
        return self.graph.basis[self.dim_in :, :]

    @property
    def graph_dim(self) -> int:
        return self.graph.dim

    def __repr__(self):  # pragma: no cover - debugging aid
        return (
            f"LinearRelation({self.dim_in}->{self.dim_out}, "
            f"graph_dim={self.graph.dim})"
        )


def relation_from_graph(graph: Subspace, dim_in: int, dim_out: int) -> LinearRelation:
    return LinearRelation(dim_in, dim_out, graph)


def relation_from_generators(dim_in: int, dim_out: int, columns, tol: Tolerances = TOL) -> LinearRelation:
    """Relation spanned by generator columns in ``C^(dim_in + dim_out)``."""
    cols = as_complex_matrix(columns, rows=dim_in + dim_out)
    return LinearRelation(dim_in, dim_out, subspace_from_columns(cols, tol))


def relation_from_matrix(mat, tol: Tolerances = TOL) -> LinearRelation:
    """Graph of a matrix as a (single-valued, everywhere defined) relation."""
    mat = as_complex_matrix(mat)
    m, n = mat.shape
    gens = np.vstack([np.eye(n, dtype=complex), mat])
    return relation_from_generators(n, m, gens, tol)


def zero_relation(dim_in: int, dim_out: int) -> LinearRelation:
    """The zero operator: every input maps to 0."""
    gens = np.vstack([np.eye(dim_in, dtype=complex), np.zeros((dim_out, dim_in))])
    return relation_from_generators(dim_in, dim_out, gens)


def identity_relation(dim: int) -> LinearRelation:
    return relation_from_matrix(np.eye(dim, dtype=complex))


def mul_relation(mul_space: Subspace) -> LinearRelation:
    """The purely multivalued relation {0} x mul_space."""
    d = mul_space.ambient_dim
    gens = np.vstack([np.zeros((d, mul_space.dim)), mul_space.basis])
    return LinearRelation(d, d, Subspace(2 * d, gens))


def rel_parts(rel: LinearRelation, tol: Tolerances = TOL) -> RelationParts:
    """Domain, range, kernel and multivalued part of a relation.

    dom and ran are coordinate projections of the graph; ker collects the
    inputs paired with output 0 and mul the outputs paired with input 0.
    """
    if not rel.graph_dim:
        return RelationParts(
            zero_subspace(rel.dim_in),
            zero_subspace(rel.dim_out),
            zero_subspace(rel.dim_in),
            zero_subspace(rel.dim_out),
        )
    # Blocks of a unit basis: anchor all rank decisions at scale one.
    x, y = rel.in_block, rel.out_block
    dom = Subspace(rel.dim_in, _orthonormal_columns(x, tol, 1.0))
    ran = Subspace(rel.dim_out, _orthonormal_columns(y, tol, 1.0))
    ker = Subspace(rel.dim_in, _orthonormal_columns(x @ _nullspace(y, tol, 1.0), tol, 1.0))
    mul = Subspace(rel.dim_out, _orthonormal_columns(y @ _nullspace(x, tol, 1.0), tol, 1.0))
    return RelationParts(dom, ran, ker, mul)


def rel_inverse(rel: LinearRelation) -> LinearRelation:
    """Swap input and output blocks; a row permutation of the graph basis."""
    basis = np.vstack([rel.out_block, rel.in_block])
    return LinearRelation(rel.dim_out, rel.dim_in, Subspace(rel.dim_in + rel.dim_out, basis))


def rel_adjoint(rel: LinearRelation, tol: Tolerances = TOL) -> LinearRelation:
    """Adjoint relation {(h,k) : (k,f) = (h,g) for all (f,g) in rel}.

    The defining conditions say exactly that (h,k) is orthogonal to every
    vector (-g, f), so the adjoint graph is the orthogonal complement of the
    sign/swap image of the original graph.
    """
    swapped = np.vstack([-rel.out_block, rel.in_block])
    comp = _nullspace(swapped.conj().T, tol)
    return LinearRelation(rel.dim_out, rel.dim_in, Subspace(rel.dim_in + rel.dim_out, comp))


def rel_neg(rel: LinearRelation, tol: Tolerances = TOL) -> LinearRelation:
    """The relation {(f, -g)}."""
    return relation_from_generators(
        rel.dim_in, rel.dim_out, np.vstack([rel.in_block, -rel.out_block]), tol
    )


def rel_scale(rel: LinearRelation, factor: complex, tol: Tolerances = TOL) -> LinearRelation:
    """The relation {(f, factor*g)}."""
    return relation_from_generators(
        rel.dim_in, rel.dim_out, np.vstack([rel.in_block, factor * rel.out_block]), tol
    )


def rel_shift(rel: LinearRelation, lam: complex, tol: Tolerances = TOL) -> LinearRelation:
    """The relation R - lam = {(f, g - lam*f)}."""
    if rel.dim_in != rel.dim_out:
        raise ArgumentError("shift needs dim_in = dim_out")
    gens = np.vstack([rel.in_block, rel.out_block - lam * rel.in_block])
    return relation_from_generators(rel.dim_in, rel.dim_out, gens, tol)


def rel_sum(a: LinearRelation, b: LinearRelation, tol: Tolerances = TOL) -> LinearRelation:
    """Operator-like sum {(f, g+h) : (f,g) in a, (f,h) in b}.

    Realized on the triple space C^(n+m+m): intersect a x C^m with the lift
    of b that leaves the middle block free, then add the two output blocks.
    """
    if a.dim_in != b.dim_in or a.dim_out != b.dim_out:
        raise ArgumentError("dimension mismatch in rel_sum")
    n, m = a.dim_in, a.dim_out
    eye_m = np.eye(m, dtype=complex)
    lift_a = np.hstack(
        [
            np.vstack([a.in_block, a.out_block, np.zeros((m, a.graph_dim))]),
            np.vstack([np.zeros((n + m, m)), eye_m]),
        ]
    )
    lift_b = np.hstack(
        [
            np.vstack([b.in_block, np.zeros((m, b.graph_dim)), b.out_block]),
            np.vstack([np.zeros((n, m)), eye_m, np.zeros((m, m))]),
        ]
    )
    meet = subspace_intersect(
        subspace_from_columns(lift_a, tol), subspace_from_columns(lift_b, tol), tol
    )
    collapse = meet.basis[:n, :], meet.basis[n : n + m, :] + meet.basis[n + m :, :]
    return relation_from_generators(n, m, np.vstack(collapse), tol)


def rel_comp_sum(a: LinearRelation, b: LinearRelation, tol: Tolerances = TOL) -> LinearRelation:
    """Componentwise sum: the subspace sum of the two graphs."""
    if a.dim_in != b.dim_in or a.dim_out != b.dim_out:
        raise ArgumentError("dimension mismatch in rel_comp_sum")
    return LinearRelation(a.dim_in, a.dim_out, subspace_sum(a.graph, b.graph, tol))


def rel_product(a: LinearRelation, b: LinearRelation, tol: Tolerances = TOL) -> LinearRelation:
    """Composition a o b = {(f,k) : exists g with (f,g) in b, (g,k) in a}.

    Intersection-then-projection on the triple space C^(p+q+r) where b maps
    C^p -> C^q and a maps C^q -> C^r.
    """
    if b.dim_out != a.dim_in:
        raise ArgumentError("inner dimensions differ in rel_product")
    p, q, r = b.dim_in, b.dim_out, a.dim_out
    lift_b = np.vstack([b.in_block, b.out_block, np.zeros((r, b.graph_dim))])
    free_r = np.vstack([np.zeros((p + q, r)), np.eye(r, dtype=complex)])
    span_b = subspace_from_columns(np.hstack([lift_b, free_r]), tol)
    lift_a = np.vstack([np.zeros((p, a.graph_dim)), a.in_block, a.out_block])
    free_p = np.vstack([np.eye(p, dtype=complex), np.zeros((q + r, p))])
    span_a = subspace_from_columns(np.hstack([lift_a, free_p]), tol)
    meet = subspace_intersect(span_b, span_a, tol)
    gens = np.vstack([meet.basis[:p, :], meet.basis[p + q :, :]])
    return relation_from_generators(p, r, gens, tol)


def rel_intersect(a: LinearRelation, b: LinearRelation, tol: Tolerances = TOL) -> LinearRelation:
    if a.dim_in != b.dim_in or a.dim_out != b.dim_out:
        raise ArgumentError("dimension mismatch in rel_intersect")
    return LinearRelation(a.dim_in, a.dim_out, subspace_intersect(a.graph, b.graph, tol))


def rel_image(rel: LinearRelation, space: Subspace, tol: Tolerances = TOL) -> Subspace:
    """Image {g : (f,g) in rel for some f in space}."""
    if space.ambient_dim != rel.dim_in:
        raise ArgumentError("space must live in the input space")
    lifted = subspace_direct_sum(space, full_subspace(rel.dim_out))
    meet = subspace_intersect(rel.graph, lifted, tol)
    return subspace_coords(meet, range(rel.dim_in, rel.dim_in + rel.dim_out), tol)


def rel_preimage(rel: LinearRelation, space: Subspace, tol: Tolerances = TOL) -> Subspace:
    return rel_image(rel_inverse(rel), space, tol)


def rel_apply(rel: LinearRelation, vec, tol: Tolerances = TOL) -> np.ndarray:
    """Apply a single-valued relation to a vector of its domain."""
    vec = np.asarray(vec, dtype=complex).reshape(-1)
    if vec.shape[0] != rel.dim_in:
        raise ArgumentError("vector length does not match dim_in")
    if rel_parts(rel, tol).mul.dim:
        raise AssumptionError("relation is multivalued; images are not unique")
    x = rel.in_block
    coeff, *_ = np.linalg.lstsq(x, vec, rcond=None)
    scale = 1.0 + float(np.linalg.norm(vec))
    if np.linalg.norm(x @ coeff - vec) > 1e-8 * scale:
        raise AssumptionError("vector is not in the domain of the relation")
    return rel.out_block @ coeff


def rel_direct_sum(a: LinearRelation, b: LinearRelation) -> LinearRelation:
    """Direct sum acting on C^(n_a+n_b) -> C^(m_a+m_b)."""
    na, ma, nb, mb = a.dim_in, a.dim_out, b.dim_in, b.dim_out
    ka, kb = a.graph_dim, b.graph_dim
    gens = np.vstack(
        [
            np.hstack([a.in_block, np.zeros((na, kb))]),
            np.hstack([np.zeros((nb, ka)), b.in_block]),
            np.hstack([a.out_block, np.zeros((ma, kb))]),
            np.hstack([np.zeros((mb, ka)), b.out_block]),
        ]
    )
    return LinearRelation(na + nb, ma + mb, Subspace(na + nb + ma + mb, gens))


def rel_permute(rel: LinearRelation, in_perm: Sequence[int] | None = None, out_perm: Sequence[int] | None = None) -> LinearRelation:
    """Permute input and/or output coordinates."""
    perm = list(in_perm) if in_perm is not None else list(range(rel.dim_in))
    perm += [rel.dim_in + j for j in (out_perm if out_perm is not None else range(rel.dim_out))]
    return LinearRelation(rel.dim_in, rel.dim_out, subspace_permute(rel.graph, perm))


def eigenspace(rel: LinearRelation, lam: complex, tol: Tolerances = TOL) -> tuple[Subspace, LinearRelation]:
    """Eigenspace N = ker(T - lam) and its graph copy {(f, lam*f) in T}."""
    if rel.dim_in != rel.dim_out:
        raise ArgumentError("eigenspace needs dim_in = dim_out")
    x, y = rel.in_block, rel.out_block
    coeff = _nullspace(y - lam * x, tol)
    vecs = x @ coeff
    space = subspace_from_columns(vecs, tol) if coeff.size else zero_subspace(rel.dim_in)
    # Keep the graph copy inside rel exactly; the eigen-residual stays in
    # the output rows instead of pushing the basis off the graph.
    gens = rel.graph.basis @ coeff
    graph_rel = relation_from_generators(rel.dim_in, rel.dim_in, gens, tol)
    return space, graph_rel


@dataclass(frozen=True)
class RelationFlags:
    symmetric: bool
    selfadjoint: bool
    dissipative: bool
    accumulative: bool
    maximal_dissipative: bool


def rel_classify(rel: LinearRelation, tol: Tolerances = TOL) -> RelationFlags:
    """Symmetry/selfadjointness/dissipativity flags for a square relation.

    Symmetry is containment in the adjoint; dissipativity is positive
    semidefiniteness of the imaginary Gram form on a graph basis.
    """
    if rel.dim_in != rel.dim_out:
        raise ArgumentError("classification needs dim_in = dim_out")
    adj = rel_adjoint(rel, tol)
    symmetric = is_subrelation(rel, adj, tol)
    selfadjoint = symmetric and rel.graph_dim == adj.graph_dim
    gram = rel.in_block.conj().T @ rel.out_block
    imag_form = (gram - gram.conj().T) / 2j
    if imag_form.size:
        eigs = np.linalg.eigvalsh(imag_form)
        dissipative = bool(eigs.min() >= -tol.psd)
        accumulative = bool(eigs.max() <= tol.psd)
    else:
        dissipative = accumulative = True
    return RelationFlags(
        symmetric=symmetric,
        selfadjoint=selfadjoint,
        dissipative=dissipative,
        accumulative=accumulative,
        maximal_dissipative=dissipative and rel.graph_dim == rel.dim_in,
    )


def operator_part(rel: LinearRelation, tol: Tolerances = TOL) -> tuple[LinearRelation, Subspace]:
    """Split R = R_s (+) {0} x mul R with outputs of R_s orthogonal to mul.

    Requires a dissipative or accumulative relation so that the split is a
    componentwise orthogonal decomposition.
    """
    flags = rel_classify(rel, tol)
    if not (flags.dissipative or flags.accumulative):
        raise AssumptionError("operator_part needs a dissipative or accumulative relation")
    mul = rel_parts(rel, tol).mul
    if mul.dim == 0:
        return rel, mul
    coeff = _nullspace(mul.basis.conj().T @ rel.out_block, tol)
    gens = np.vstack([rel.in_block @ coeff, rel.out_block @ coeff])
    return relation_from_generators(rel.dim_in, rel.dim_out, gens, tol), mul


def simplicity_samples(ambient_dim: int) -> list[complex]:
    """The fixed nonreal sample grid {k +/- i : k = 0..ambient-1}."""
    pts: list[complex] = []
    for k in range(ambient_dim):
        pts.extend([k + 1j, k - 1j])
    return pts


def is_simple(rel: LinearRelation, sample_lams: Sequence[complex] | None = None, tol: Tolerances = TOL) -> bool:
    """True when the defect eigenvectors of the adjoint span the whole space.

    A symmetric relation with a selfadjoint orthogonal summand leaves that
    summand out of every N_lambda, so the span test detects simplicity; in
    finite dimension the fixed 2n-point sample grid suffices.
    """
    if not rel_classify(rel, tol).symmetric:
        raise AssumptionError("simplicity is defined for symmetric relations")
    if sample_lams is None:
        sample_lams = simplicity_samples(rel.dim_in)
    adj = rel_adjoint(rel, tol)
    stacks = []
    for lam in sample_lams:
        space, _ = eigenspace(adj, lam, tol)
        if space.dim:
            stacks.append(space.basis)
    if not stacks:
        return rel.dim_in == 0
    joint = subspace_from_columns(np.hstack(stacks), tol)
    return joint.dim == rel.dim_in


def is_subrelation(a: LinearRelation, b: LinearRelation, tol: Tolerances = TOL) -> bool:
    if a.dim_in != b.dim_in or a.dim_out != b.dim_out:
        return False
    return is_subspace(a.graph, b.graph, tol)


def rel_equal(a: LinearRelation, b: LinearRelation, tol: Tolerances = TOL) -> bool:
    if a.dim_in != b.dim_in or a.dim_out != b.dim_out:
        return False
    return subspace_equal(a.graph, b.graph, tol)


def rel_matrix(rel: LinearRelation, tol: Tolerances = TOL) -> np.ndarray:
    """Matrix of an everywhere-defined single-valued relation.

    The graph of such a relation has dimension dim_in with an invertible
    input block, so the matrix is out_block @ in_block^{-1}.
    """
    if rel.graph_dim != rel.dim_in:
        raise AssumptionError(
            f"graph dimension {rel.graph_dim} != dim_in {rel.dim_in}; not a matrix"
        )
    x = rel.in_block
    if rel.dim_in == 0:
        return np.zeros((rel.dim_out, 0), dtype=complex)
    s = np.linalg.svd(x, compute_uv=False)
    # Block of a unit basis: anchor the cutoff at scale one so a
    # rounding-level input block reads as singular.
    if s[-1] <= tol.rank * max(s[0], 1.0) * max(x.shape):
        raise AssumptionError("relation is not single-valued and everywhere defined")
    return rel.out_block @ np.linalg.inv(x)


def resolvent_matrix(rel: LinearRelation, lam: complex, tol: Tolerances = TOL) -> np.ndarray:
    """Matrix of (R - lam)^{-1}; raises SingularAtLambda when obstructed."""
    inv = rel_inverse(rel_shift(rel, lam, tol))
    parts = rel_parts(inv, tol)
    if parts.mul.dim:
        raise SingularAtLambda(lam, "nontrivial kernel of R - lambda")
    if parts.dom.dim < rel.dim_in:
        raise SingularAtLambda(lam, "R - lambda is not surjective")
    return rel_matrix(inv, tol)

"""Subspace and linear relation calculus tests."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import extensio as ex

RESID = 1e-10


def random_rel(rng, dim_in, dim_out, graph_dim):
    gens = rng.standard_normal((dim_in + dim_out, graph_dim)) + 1j * rng.standard_normal(
        (dim_in + dim_out, graph_dim)
    )
    return ex.relation_from_generators(dim_in, dim_out, gens)


def test_as_complex_matrix_validation():
    with pytest.raises(ex.ArgumentError):
        ex.as_complex_matrix(np.array([[np.inf, 0.0]]))
    with pytest.raises(ex.ArgumentError):
        ex.as_complex_matrix(np.eye(2), 3, 2)
    # non-contiguous views must pass the finiteness check
    picked = np.eye(4, dtype=complex)[:, [0, 2]]
    out = ex.as_complex_matrix(picked)
    assert out.shape == (4, 2)


def test_subspace_rank_collapse():
    cols = np.array([[1.0, 2.0], [1.0, 2.0]], dtype=complex)
    sub = ex.subspace_from_columns(cols)
    assert sub.dim == 1
    proj = sub.projector()
    assert np.linalg.norm(proj @ proj - proj) < RESID


def test_subspace_equality_and_gap():
    a = ex.subspace_from_columns(np.array([[1.0], [0.0]], dtype=complex))
    b = ex.subspace_from_columns(np.array([[2.0], [0.0]], dtype=complex))
    c = ex.subspace_from_columns(np.array([[1.0], [1.0]], dtype=complex))
    assert ex.subspace_equal(a, b)
    assert not ex.subspace_equal(a, c)
    # angle between span{e1} and the diagonal is pi/4
    assert abs(ex.containment_gap(a, c) - np.pi / 4) < 1e-12


def test_subspace_lattice_dims():
    rng = np.random.default_rng(0)
    a = ex.subspace_from_columns(rng.standard_normal((6, 2)) + 0j)
    b = ex.subspace_from_columns(rng.standard_normal((6, 3)) + 0j)
    inter = ex.subspace_intersect(a, b)
    total = ex.subspace_sum(a, b)
    assert total.dim + inter.dim == a.dim + b.dim
    comp = ex.subspace_complement(a)
    assert comp.dim == 6 - a.dim
    assert ex.largest_principal_angle(a, comp) > 1.0


def test_relation_from_matrix_parts():
    mat = np.array([[1.0, 2.0], [0.0, 0.0]], dtype=complex)
    rel = ex.relation_from_matrix(mat)
    parts = ex.rel_parts(rel)
    assert parts.dom.dim == 2
    assert parts.ran.dim == 1
    assert parts.ker.dim == 1
    assert parts.mul.dim == 0
    assert np.linalg.norm(ex.rel_matrix(rel) - mat) < RESID


def test_adjoint_matches_conjugate_transpose():
    rng = np.random.default_rng(1)
    mat = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    adj = ex.rel_adjoint(ex.relation_from_matrix(mat))
    assert np.linalg.norm(ex.rel_matrix(adj) - mat.conj().T) < RESID


def test_operator_sum_vs_componentwise():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    b = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
    op_sum = ex.rel_sum(ex.relation_from_matrix(a), ex.relation_from_matrix(b))
    assert np.linalg.norm(ex.rel_matrix(op_sum) - (a + b)) < RESID
    # componentwise sum of a graph with itself is the graph again
    rel = ex.relation_from_matrix(a)
    comp = ex.rel_comp_sum(rel, rel)
    assert ex.rel_equal(comp, rel)


def test_product_matches_matrix_product():
    rng = np.random.default_rng(3)
    a = rng.standard_normal((2, 3)) + 1j * rng.standard_normal((2, 3))
    b = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    prod = ex.rel_product(ex.relation_from_matrix(a), ex.relation_from_matrix(b))
    assert np.linalg.norm(ex.rel_matrix(prod) - a @ b) < RESID


def test_inverse_and_shift():
    mat = np.array([[2.0, 0.0], [0.0, 4.0]], dtype=complex)
    rel = ex.relation_from_matrix(mat)
    inv = ex.rel_inverse(rel)
    assert np.linalg.norm(ex.rel_matrix(inv) - np.linalg.inv(mat)) < RESID
    shifted = ex.rel_shift(rel, 1.0)
    assert np.linalg.norm(ex.rel_matrix(shifted) - (mat - np.eye(2))) < RESID


def test_mul_and_zero_relations():
    mul = ex.mul_relation(ex.full_subspace(2))
    parts = ex.rel_parts(mul)
    assert parts.dom.dim == 0 and parts.mul.dim == 2
    zero = ex.zero_relation(2, 2)
    assert zero.graph_dim == 2
    assert np.linalg.norm(ex.rel_matrix(zero)) == 0.0
    ident = ex.identity_relation(3)
    assert np.linalg.norm(ex.rel_matrix(ident) - np.eye(3)) < RESID


def test_eigenspace_of_diagonal():
    rel = ex.relation_from_matrix(np.diag([1.0, 1.0, 3.0]).astype(complex))
    space, graph_rel = ex.eigenspace(rel, 1.0)
    assert space.dim == 2
    assert graph_rel.graph_dim == 2
    # graph copy stays inside the relation even for huge eigenparameters
    big, _ = ex.eigenspace(rel, 1e8j)
    assert big.dim == 0


def test_eigenspace_graph_stays_in_relation():
    # second order growth in lambda must not push the basis off the graph
    rel = ex.fix_a_relation()
    adj = ex.rel_adjoint(rel)
    for lam in (1j, 1e6j, 1e8j):
        _, nhat = ex.eigenspace(adj, lam)
        assert nhat.graph_dim == 1
        assert ex.is_subrelation(nhat, adj)


def test_classify_flags():
    herm = ex.relation_from_matrix(np.array([[1.0, 2.0], [2.0, -1.0]], dtype=complex))
    flags = ex.rel_classify(herm)
    assert flags.symmetric and flags.selfadjoint
    diss = ex.rel_classify(ex.relation_from_matrix(1j * np.eye(2)))
    assert diss.dissipative and diss.maximal_dissipative and not diss.symmetric
    acc = ex.rel_classify(ex.relation_from_matrix(-1j * np.eye(2)))
    assert acc.accumulative and not acc.dissipative


def test_operator_part_splits_mul():
    gens = np.array([[1.0, 0.0], [0.0, 0.0], [1.0, 0.0], [0.0, 1.0]], dtype=complex)
    rel = ex.relation_from_generators(2, 2, gens)
    op, mul = ex.operator_part(rel)
    assert mul.dim == 1
    assert ex.rel_parts(op).mul.dim == 0


def test_simplicity():
    rng = np.random.default_rng(4)
    s = ex.random_symmetric_restriction(rng, 4, 1)
    # a restriction of a matrix with a reducing eigenvector is not simple
    block = ex.rel_direct_sum(s, ex.relation_from_matrix(np.array([[1.0]], dtype=complex)))
    assert not ex.is_simple(block)


def test_resolvent_matrix_oracle():
    mat = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    rel = ex.relation_from_matrix(mat)
    for lam in (2j, 1 + 1j):
        res = ex.resolvent_matrix(rel, lam)
        oracle = np.linalg.inv(mat - lam * np.eye(2))
        assert np.linalg.norm(res - oracle) < RESID
    with pytest.raises(ex.SingularAtLambda):
        ex.resolvent_matrix(rel, 1.0)


def test_permute_and_direct_sum():
    mat = np.array([[1.0, 2.0], [3.0, 4.0]], dtype=complex)
    rel = ex.rel_permute(ex.relation_from_matrix(mat), in_perm=[1, 0])
    assert np.linalg.norm(ex.rel_matrix(rel) - mat[:, [1, 0]]) < RESID
    both = ex.rel_direct_sum(
        ex.relation_from_matrix(mat), ex.relation_from_matrix(np.eye(1, dtype=complex))
    )
    expect = np.zeros((3, 3), dtype=complex)
    expect[:2, :2] = mat
    expect[2, 2] = 1.0
    assert np.linalg.norm(ex.rel_matrix(both) - expect) < RESID


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 4), st.integers(1, 4))
def test_inverse_product_laws(seed, n_in, n_mid, n_out):
    rng = np.random.default_rng(seed)
    a = random_rel(rng, n_mid, n_out, rng.integers(0, n_mid + n_out + 1))
    b = random_rel(rng, n_in, n_mid, rng.integers(0, n_in + n_mid + 1))
    assert ex.rel_equal(ex.rel_inverse(ex.rel_inverse(a)), a)
    assert ex.rel_equal(ex.rel_adjoint(ex.rel_inverse(a)), ex.rel_inverse(ex.rel_adjoint(a)))
    left = ex.rel_inverse(ex.rel_product(a, b))
    right = ex.rel_product(ex.rel_inverse(b), ex.rel_inverse(a))
    assert ex.rel_equal(left, right)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(1, 4))
def test_adjoint_involution_and_rank_nullity(seed, n_in, n_out):
    rng = np.random.default_rng(seed)
    rel = random_rel(rng, n_in, n_out, rng.integers(0, n_in + n_out + 1))
    assert ex.rel_equal(ex.rel_adjoint(ex.rel_adjoint(rel)), rel)
    parts = ex.rel_parts(rel)
    assert parts.dom.dim + parts.mul.dim == rel.graph_dim
    assert parts.ran.dim + parts.ker.dim == rel.graph_dim

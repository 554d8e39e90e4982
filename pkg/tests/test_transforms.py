"""Boundary transforms and the induced moves of the Weyl family."""

import numpy as np
import pytest

import extensio as ex

RESID = 1e-9
LAMS = (1j, 2j, 1 + 1j)


def triplet_fixture(seed=21, n=5, defect=3):
    rng = np.random.default_rng(seed)
    s = ex.random_symmetric_restriction(rng, n, defect)
    return ex.von_neumann_triplet(s), rng


def test_standard_j_unitary_validation():
    rng = np.random.default_rng(0)
    w = ex.random_standard_j_unitary(rng, 2)
    j = ex.FundamentalSymmetry(2).matrix
    assert np.linalg.norm(w.matrix.conj().T @ j @ w.matrix - j) < RESID
    with pytest.raises(ex.AssumptionError):
        ex.standard_j_unitary(2.0 * np.eye(4))


def test_shmulyan_image_oracle():
    # the graph image under a block matrix ((a, b), (c, d)) sends the
    # graph of t to the graph of (c + d t)(a + b t)^{-1}
    rng = np.random.default_rng(1)
    w = ex.random_standard_j_unitary(rng, 2)
    t_mat = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    theta = ex.relation_from_matrix(t_mat)
    image = ex.shmulyan(ex.relation_from_matrix(w.matrix), theta)
    blocks = w.matrix
    a, b = blocks[:2, :2], blocks[:2, 2:]
    c, d = blocks[2:, :2], blocks[2:, 2:]
    oracle = (c + d @ t_mat) @ np.linalg.inv(a + b @ t_mat)
    assert np.linalg.norm(ex.rel_matrix(image) - oracle) < RESID


def test_compose_and_recover():
    pi, rng = triplet_fixture()
    w = ex.random_standard_j_unitary(rng, 3)
    moved = ex.compose_boundary(w, pi)
    recovered = ex.recover_transform(pi, moved)
    # recover up to the graph of the factor
    assert ex.rel_equal(
        ex.relation_from_matrix(recovered.matrix), ex.relation_from_matrix(w.matrix)
    )
    # the family moves by the graph-image transform
    fam = ex.shmulyan_family(w, ex.FamilyEval(3, lambda lam: ex.weyl_eval(pi, lam)))
    for lam in LAMS:
        direct = ex.rel_matrix(ex.weyl_eval(moved, lam))
        via_image = ex.rel_matrix(fam.eval(lam))
        assert np.linalg.norm(direct - via_image) < RESID


def test_transpose_boundary_negative_inverse():
    pi = ex.fix_b_triplet()
    flipped = ex.transpose_boundary(pi)
    for lam in LAMS:
        m = ex.rel_matrix(ex.weyl_eval(flipped, lam))
        assert abs(m[0, 0] + 1.0 / lam) < RESID


def test_affine_transform_formula():
    pi = ex.fix_b_triplet()
    b = np.array([[0.5]], dtype=complex)
    g = np.array([[2.0]], dtype=complex)
    moved = ex.affine_transform(pi, b, g)
    for lam in LAMS:
        m = ex.rel_matrix(ex.weyl_eval(moved, lam))
        expect = b @ g + g.conj().T * lam @ g
        assert abs(m[0, 0] - expect[0, 0]) < RESID
    with pytest.raises(ex.GSingular):
        ex.affine_transform(pi, b, np.zeros((1, 1)))
    with pytest.raises(ex.BGNotHermitian):
        ex.affine_transform(pi, np.array([[1j]]), np.array([[1.0]]))


def test_block_compress_two_routes():
    pi, _ = triplet_fixture()
    split = ex.SpaceSplit(1, 2)
    for which in (1, 2):
        res = ex.block_compress(pi, split, which)
        for lam in LAMS:
            direct = ex.rel_matrix(ex.weyl_eval(res.boundary, lam))
            assert np.linalg.norm(direct - res.weyl_fn(lam)) < RESID


def test_schur_complement_two_routes():
    pi, _ = triplet_fixture()
    split = ex.SpaceSplit(2, 1)
    res = ex.schur_complement(pi, split)
    full = ex.rel_matrix(ex.weyl_eval(pi, 2j))
    oracle = full[:2, :2] - full[:2, 2:] @ np.linalg.inv(full[2:, 2:]) @ full[2:, :2]
    assert np.linalg.norm(res.weyl_fn(2j) - oracle) < RESID
    for lam in LAMS:
        direct = ex.rel_matrix(ex.weyl_eval(res.boundary, lam))
        assert np.linalg.norm(direct - res.weyl_fn(lam)) < RESID


def test_t_transform_two_routes():
    pi, rng = triplet_fixture()
    split = ex.SpaceSplit(1, 2)
    t = rng.standard_normal((1, 2)) + 1j * rng.standard_normal((1, 2))
    res = ex.t_transform(pi, split, t)
    full = ex.rel_matrix(ex.weyl_eval(pi, 2j))
    m11, m12 = full[:1, :1], full[:1, 1:]
    m21, m22 = full[1:, :1], full[1:, 1:]
    oracle = t.conj().T @ m11 @ t + t.conj().T @ m12 + m21 @ t + m22
    assert np.linalg.norm(res.weyl_fn(2j) - oracle) < RESID
    for lam in LAMS:
        direct = ex.rel_matrix(ex.weyl_eval(res.boundary, lam))
        assert np.linalg.norm(direct - res.weyl_fn(lam)) < RESID


def test_zero_t_transform_is_second_block():
    pi, _ = triplet_fixture()
    split = ex.SpaceSplit(1, 2)
    res = ex.t_transform(pi, split, np.zeros((1, 2), dtype=complex))
    block = ex.block_compress(pi, split, 2)
    for lam in (1j, 2j):
        assert np.linalg.norm(res.weyl_fn(lam) - block.weyl_fn(lam)) < RESID


def test_direct_sum_and_sum_weyl():
    pi1, _ = triplet_fixture(seed=31, n=3, defect=2)
    pi2, _ = triplet_fixture(seed=32, n=4, defect=2)
    both = ex.boundary_direct_sum(pi1, pi2)
    summed = ex.sum_weyl(pi1, pi2)
    for lam in LAMS:
        m1 = ex.rel_matrix(ex.weyl_eval(pi1, lam))
        m2 = ex.rel_matrix(ex.weyl_eval(pi2, lam))
        assert np.linalg.norm(summed.weyl_fn(lam) - (m1 + m2)) < RESID
        direct = ex.rel_matrix(ex.weyl_eval(summed.boundary, lam))
        assert np.linalg.norm(direct - (m1 + m2)) < RESID
        full = ex.rel_matrix(ex.weyl_eval(both, lam))
        assert np.linalg.norm(full[:2, :2] - m1) < RESID
        assert np.linalg.norm(full[2:, 2:] - m2) < RESID


def test_split_validation():
    pi, _ = triplet_fixture()
    with pytest.raises(ex.DimMismatch):
        ex.block_compress(pi, ex.SpaceSplit(1, 1), 1)
    with pytest.raises(ex.ArgumentError):
        ex.block_compress(pi, ex.SpaceSplit(1, 2), 3)

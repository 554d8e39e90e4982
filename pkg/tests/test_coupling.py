"""Coupling scenes, induced parameter families and resolvent formulas."""

import numpy as np
import pytest

import extensio as ex

RESID = 1e-9


def random_case(seed=7, n1=2, n2=3):
    rng = np.random.default_rng(seed)
    scene = ex.random_scene(rng, n1, n2)
    pi = ex.scene_triplet(scene)
    return scene, pi


def test_fix_b_scene_corners():
    scene = ex.fix_b_scene()
    assert (scene.h1_dim, scene.h2_dim) == (1, 1)
    # the off-diagonal coupling leaves only the zero vector in each corner
    assert scene.s1.graph_dim == 0
    assert scene.s2.graph_dim == 0
    # and projects onto everything, so the compressions are full relations
    assert scene.t1.graph_dim == 2
    assert scene.t2.graph_dim == 2
    assert scene.minimal


def test_coupling_scene_validation():
    with pytest.raises(ex.DimMismatch):
        ex.coupling_scene(ex.fix_b_relation(), 2, 1)
    nonsa = ex.relation_from_matrix(np.array([[1.0, 1.0], [0.0, 1.0]]))
    with pytest.raises(ex.AssumptionError):
        ex.coupling_scene(nonsa, 1, 1)


def test_induced_chi_mismatch():
    scene, _ = random_case()
    other = ex.fix_b_triplet()
    with pytest.raises(ex.TripletMismatch):
        ex.induced_chi(scene, other)


def test_tau_identity_triplet_is_negative_reciprocal():
    scene = ex.fix_b_scene()
    pi = ex.fix_b_triplet()
    tau = ex.tau_of_extension(scene, pi)
    for lam in (1j, 2j, 1 + 1j):
        val = ex.rel_matrix(tau.eval(lam))
        assert abs(val[0, 0] + 1.0 / lam) < RESID


def test_generalized_resolvent_fix_b_value():
    scene = ex.fix_b_scene()
    sample = ex.generalized_resolvent(scene, 1j)
    assert abs(sample.compressed[0, 0] - 0.5j) < 1e-12


def test_krein_formula_matches_compression():
    scene, pi = random_case()
    tau = ex.tau_of_extension(scene, pi)
    for lam in (1j, 2j, 1 + 1j):
        lhs = ex.generalized_resolvent(scene, lam).compressed
        rhs = ex.krein_rhs(pi, tau, lam)
        assert np.linalg.norm(lhs - rhs) < RESID


def test_krein_rhs_singular_sum():
    pi = ex.fix_b_triplet()
    # family value -M(lam) makes the sum the zero relation
    tau = ex.FamilyEval(1, lambda lam: ex.relation_from_matrix(np.array([[-lam]])))
    with pytest.raises(ex.RelationSumSingular):
        ex.krein_rhs(pi, tau, 1j)


def test_straus_solve_matches_resolvent():
    scene, pi = random_case(seed=9)
    rng = np.random.default_rng(10)
    h = rng.standard_normal(scene.h1_dim) + 1j * rng.standard_normal(scene.h1_dim)
    for lam in (1j, 1 + 1j):
        direct = ex.generalized_resolvent(scene, lam).compressed @ h
        solved = ex.straus_solve(scene, pi, h, lam)
        assert np.linalg.norm(direct - solved) < RESID


def test_couple_round_trip():
    for seed, n1, n2 in ((3, 1, 1), (4, 2, 2), (5, 2, 3)):
        scene, pi = random_case(seed=seed, n1=n1, n2=n2)
        chi = ex.induced_chi(scene, pi)
        rebuilt = ex.couple(pi, chi)
        assert ex.rel_equal(rebuilt, scene.a_tilde)


def test_couple_canonical_parameter():
    # zero-dimensional second space: coupling equals the extension with
    # boundary values in the parameter relation
    pi = ex.fix_b_triplet()
    theta = ex.relation_from_matrix(np.array([[2.0]], dtype=complex))
    chi = ex.canonical_chi(theta)
    coupled = ex.couple(pi, chi)
    direct = ex.intermediate_extension(pi, theta)
    assert ex.rel_equal(coupled, direct)
    with pytest.raises(ex.AssumptionError):
        ex.canonical_chi(ex.relation_from_matrix(np.array([[1j]])))


def test_double_weyl_two_routes():
    scene, pi = random_case(seed=11)
    chi = ex.induced_chi(scene, pi)
    dw = ex.double_weyl(pi, chi)
    assert ex.check_B123(dw.boundary).all_hold
    for lam in (1j, 2j, 1 + 1j):
        direct = ex.rel_matrix(ex.weyl_eval(dw.boundary, lam))
        assert np.linalg.norm(direct - dw.weyl_fn(lam)) < RESID


def test_double_weyl_corner_is_resolvent_family():
    # upper-left block reproduces the compressed resolvent after the
    # gamma-field dressing is stripped
    scene = ex.fix_b_scene()
    pi = ex.fix_b_triplet()
    chi = ex.induced_chi(scene, pi)
    dw = ex.double_weyl(pi, chi)
    val = dw.weyl_fn(1j)
    assert abs(val[0, 0] - 0.5j) < 1e-12
    val2 = dw.weyl_fn(2j)
    assert abs(val2[0, 0] - 0.4j) < 1e-12


def test_intermediate_extensions_two_routes():
    scene, pi = random_case(seed=13)
    chi = ex.induced_chi(scene, pi)
    for res in (ex.intermediate_h1(pi, chi), ex.intermediate_h2(pi, chi)):
        for lam in (1j, 2j):
            direct = ex.rel_matrix(ex.weyl_eval(res.boundary, lam))
            assert np.linalg.norm(direct - res.weyl_fn(lam)) < RESID


def test_fix_infty_coupling_is_multivalued():
    # the steering triplet itself has operator kernels; the multivalued
    # part appears only in the coupling with the realized parameter
    pi, pair = ex.fix_infty_steering()
    for idx in (0, 1):
        assert ex.rel_parts(ex.kernel_of_boundary_map(pi, idx)).mul.dim == 0
    coupled = ex.couple(pi, pair.realization)
    assert ex.rel_parts(coupled).mul.dim == 1
    assert ex.rel_classify(coupled).selfadjoint

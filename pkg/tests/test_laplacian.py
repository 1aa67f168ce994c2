from collections import Counter

import numpy as np
import pytest
from hypothesis import given

from groupmatroid import fixtures as fx
from groupmatroid.exceptions import CapabilityError, DomainError, ScaleError
from groupmatroid.groups import GroupProduct, cyclic, subgroup_closure, symmetric
from groupmatroid.laplacian import (
    _hypothesis_holds,
    build_quotient,
    coloop_cone_check,
    edge_counts,
    euler_check,
    laplacian_matrix,
    laplacian_spectrum,
    predicted_top_spectrum,
    top_betti,
    verify_top_homology,
)
from groupmatroid.polymatroid import rank_table

from conftest import subgroups

small = subgroups(max_n=3, max_order=72)


def _naive_cosets(H, S):
    """Left cosets of π_S(H) in G_S as frozensets of tuples."""
    coords = [x for x in range(H.n) if S >> x & 1]
    sub = H.parent.sub(S)
    HS = {tuple(h[x] for x in coords) for h in H}
    return {frozenset(sub.mul(g, h) for h in HS) for g in map(tuple, sub.all_elements().tolist())}


@given(small)
def test_face_counts(H):
    C = build_quotient(H)
    for j in range(H.n):
        want = sum(H.parent.order_of(S) // H.projection_size(S)
                   for S in range(1 << H.n) if bin(S).count("1") == j + 1)
        assert C.num_faces(j) == want
    for S in range(1, 1 << H.n):
        assert len(C.spaces[S]) == len(_naive_cosets(H, S))


@given(small)
def test_boundary_squares_to_zero(H):
    C = build_quotient(H)
    for j in range(1, H.n):
        assert not (C.boundary(j - 1) @ C.boundary(j)).any()


@given(small)
def test_each_face_has_one_facet_per_coordinate(H):
    C = build_quotient(H)
    for j in range(1, H.n):
        B = C.boundary(j)
        assert (np.count_nonzero(B, axis=0) == j + 1).all()
        assert set(np.abs(B).ravel().tolist()) <= {0, 1}


@given(small)
def test_boundary_is_representative_independent(H):
    C = build_quotient(H)
    rng = np.random.default_rng(0)
    for j in range(H.n):
        assert np.array_equal(C.boundary(j, rng=rng), C.boundary(j))


@given(small)
def test_spectrum_matches_floating_eigenvalues(H):
    C = build_quotient(H)
    for j in range(H.n):
        if C.num_faces(j) > 80:
            continue
        rep = laplacian_spectrum(C, j)
        L = laplacian_matrix(C, j)
        assert np.array_equal(L, L.T)
        ev = np.linalg.eigvalsh(L.astype(float))
        assert ev.min() > -1e-8 and rep.psd
        assert len(rep.char_poly) - 1 == C.num_faces(j)
        if len(ev) <= 16:
            assert np.rint(np.poly(ev)[::-1]).astype(np.int64).tolist() == rep.char_poly
        for r, m in rep.integer_roots.items():
            assert np.sum(np.abs(ev - r) < 1e-6) >= m


@given(small)
def test_top_spectrum_is_integral_and_predicted(H):
    C = build_quotient(H)
    if C.num_faces(H.n - 1) > 150:
        return
    rep = laplacian_spectrum(C, H.n - 1)
    assert rep.splits
    if _hypothesis_holds(rank_table(H)):
        assert predicted_top_spectrum(H) == rep.integer_roots


@given(small)
def test_betti_numbers(H):
    C = build_quotient(H)
    B = C.boundary(H.n - 1)
    assert top_betti(C) == B.shape[1] - np.linalg.matrix_rank(B.astype(float))
    assert verify_top_homology(H, C).match
    assert euler_check(C).match


def test_chen_complex():
    C = build_quotient(fx.chen())
    assert C.num_faces(0) == 3
    assert sorted(edge_counts(C).values()) == [1, 2, 3]
    rep = laplacian_spectrum(C, 0, augmented=False)
    assert rep.char_poly == [0, 33, -12, 1]
    assert rep.integer_roots == Counter({0: 1}) and rep.residual_factor == [33, -12, 1]


def test_binary_examples():
    A, B = fx.binary_a(), fx.binary_b()
    want = Counter({12: 1, 8: 3, 4: 3, 0: 1})
    for H in (A, B):
        C = build_quotient(H)
        assert C.num_faces(5) == 8
        assert laplacian_spectrum(C, 5).integer_roots == want
        assert predicted_top_spectrum(H) == want
        rep = verify_top_homology(H, C)
        assert rep.match and rep.lhs == 1


def test_trivial_subgroup_is_the_join():
    H = fx.trivial_subgroup(GroupProduct([cyclic(2), cyclic(3)]))
    C = build_quotient(H)
    assert C.num_faces(1) == 6 and C.num_faces(0) == 5


def test_single_factor():
    H = subgroup_closure(GroupProduct([symmetric(3)]), [])
    assert laplacian_spectrum(build_quotient(H), 0).spectrum() == [6, 0, 0, 0, 0, 0]
    whole = fx.full_product(GroupProduct([symmetric(3)]))
    rep = euler_check(build_quotient(whole))
    assert rep.match and rep.lhs == 0


def test_full_product_has_one_top_face():
    P = GroupProduct([cyclic(2), cyclic(3)])
    H = fx.full_product(P)
    # every coordinate is a coloop, so the prediction does not apply
    with pytest.raises(CapabilityError):
        predicted_top_spectrum(H)
    assert laplacian_spectrum(build_quotient(H), 1).integer_roots == Counter({2: 1})
    assert verify_top_homology(H).lhs == 0


def test_h_s3_homology():
    rep = verify_top_homology(fx.h_s3())
    assert rep.match and rep.lhs == 3 and rep.details["chi_dual_at_q"] == 3


def test_coloop_cone_binary():
    Z2 = cyclic(2)
    A = fx.binary_a()
    rows = [tuple(h) + (0,) for h in A.generators] + [(0,) * 6 + (1,)]
    H = subgroup_closure(GroupProduct([Z2] * 7), rows)
    rep = coloop_cone_check(H, 6)
    assert rep.match and 1 in rep.details["observed_shifts"]


def test_coloop_cone_point_and_observation_only():
    H = fx.full_product(GroupProduct([cyclic(2)]))
    assert coloop_cone_check(H, 0).match
    H3 = fx.full_product(GroupProduct([cyclic(3)]))
    rep = coloop_cone_check(H3, 0)
    assert rep.warnings
    with pytest.raises(DomainError):
        coloop_cone_check(fx.binary_a(), 0)


def test_prediction_refuses_without_hypothesis():
    with pytest.raises(CapabilityError):
        predicted_top_spectrum(fx.h_s3())


def test_caps():
    with pytest.raises(ScaleError):
        build_quotient(fx.chen(), cap=10)
    with pytest.raises(ScaleError):
        laplacian_spectrum(build_quotient(fx.chen()), 2, cap=5)


def test_augmentation_default_follows_top_dimension():
    C = build_quotient(fx.chen())
    assert laplacian_spectrum(C, 0).char_poly == [0, 33, -12, 1]
    assert laplacian_spectrum(C, 0, augmented=True).char_poly == [-99, 69, -15, 1]

import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from groupmatroid.exceptions import ScaleError, ValidationError
from groupmatroid.groups import (
    GroupProduct,
    RawSubset,
    Subgroup,
    automorphisms,
    conjugacy_classes,
    construct_group,
    cyclic,
    dihedral,
    enumerate_subgroups,
    kernel_contract,
    parse_product_spec,
    project,
    quaternion8,
    subgroup_closure,
    symmetric,
)

from conftest import subgroups


def _brute_subgroups(G):
    """Every subset containing the identity and closed under products."""
    out = 0
    others = [g for g in range(G.order) if g != G.identity]
    for r in range(len(others) + 1):
        for sub in itertools.combinations(others, r):
            S = set(sub) | {G.identity}
            if all(int(G.mul[a, b]) in S for a in S for b in S):
                out += 1
    return out


@pytest.mark.parametrize("spec", ["cyclic:6", "symmetric:3", "abelian:2x2", "cyclic:4", "dihedral:4"])
def test_subgroup_count_matches_subset_brute_force(spec):
    G = construct_group(spec)
    assert len(enumerate_subgroups(G)) == _brute_subgroups(G)


@pytest.mark.parametrize("spec,count", [("symmetric:3", 6), ("cyclic:6", 4), ("quaternion:8", 6)])
def test_subgroup_counts_of_small_groups(spec, count):
    assert len(enumerate_subgroups(construct_group(spec))) == count


def test_subgroups_of_s3_squared():
    assert len(enumerate_subgroups(parse_product_spec("symmetric:3,symmetric:3"))) == 60


def test_enumeration_respects_cap():
    with pytest.raises(ScaleError):
        enumerate_subgroups(parse_product_spec("cyclic:6,cyclic:6,cyclic:6"), cap=100)


@pytest.mark.parametrize("G,size", [(symmetric(3), 6), (cyclic(6), 2), (cyclic(5), 4),
                                    (construct_group("abelian:2x2"), 6), (quaternion8(), 24),
                                    (dihedral(4), 8)])
def test_automorphism_group_sizes(G, size):
    auts = automorphisms(G)
    assert len(auts) == size
    for a in auts:
        a = np.array(a)
        assert np.array_equal(a[G.mul], G.mul[a][:, a])


@pytest.mark.parametrize("G,sizes", [(symmetric(3), [1, 2, 3]), (quaternion8(), [1, 1, 2, 2, 2]),
                                     (dihedral(4), [1, 1, 2, 2, 2]), (cyclic(4), [1, 1, 1, 1])])
def test_conjugacy_class_sizes(G, sizes):
    classes = conjugacy_classes(G)
    assert sorted(map(len, classes)) == sizes
    assert sorted(g for c in classes for g in c) == list(range(G.order))


def test_symmetric_group_parses_cycle_notation():
    G = symmetric(3)
    t, c = G.element("(12)"), G.element("(123)")
    assert G.power(c, 3) == G.identity and c != G.identity
    assert G.mul[t, t] == G.identity
    assert not G.is_abelian


def test_invalid_tables_are_rejected():
    with pytest.raises(ValidationError):
        construct_group("cyclic:x")
    from groupmatroid.groups import FiniteGroup
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1], [0, 1]])
    with pytest.raises(ValidationError):
        FiniteGroup([[0, 1, 2], [1, 0, 2], [2, 2, 0]])


def test_subgroup_validation_rejects_non_closed_sets():
    P = GroupProduct([cyclic(4)])
    with pytest.raises(ValidationError):
        Subgroup(P, [[0], [1]])


def test_raw_subset_needs_distinct_elements():
    P = GroupProduct([cyclic(2)] * 2)
    with pytest.raises(ValidationError):
        RawSubset(P, [(0, 0), (0, 0)])


@given(subgroups())
def test_closure_is_a_subgroup_dividing_the_product(H):
    H.check()
    assert H.parent.order % H.order == 0
    for g in H.generators or ():
        assert g in H


@given(subgroups(), st.integers(0, 7))
def test_projection_sizes_divide_and_are_monotone(H, S):
    S &= H.parent.full_mask
    p = H.projection_size(S)
    assert H.parent.order_of(S) % p == 0
    for x in range(H.n):
        assert H.projection_size(S | (1 << x)) % p == 0
    if S:
        assert project(H, S).order == p


@given(subgroups(), st.integers(0, 7))
def test_kernel_times_projection_is_the_whole_group(H, S):
    S &= H.parent.full_mask
    if S == H.parent.full_mask:
        return
    K = kernel_contract(H, S)
    assert K.order * H.projection_size(S) == H.order


def test_product_element_formatting_round_trips():
    P = parse_product_spec("symmetric:3,cyclic:6")
    for t in P.all_elements()[::5]:
        t = tuple(int(v) for v in t)
        assert P.parse_element(P.format_element(t)) == t


def test_closure_of_nothing_is_trivial():
    P = parse_product_spec("symmetric:3,symmetric:3")
    assert subgroup_closure(P, []).order == 1


def test_subgroups_of_z4_squared():
    assert len(enumerate_subgroups(parse_product_spec("cyclic:4,cyclic:4"))) == 15

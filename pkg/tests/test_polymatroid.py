from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from groupmatroid import fixtures as fx
from groupmatroid.exceptions import DomainError
from groupmatroid.groups import GroupProduct, cyclic, kernel_contract, subgroup_closure, symmetric
from groupmatroid.polymatroid import (
    RankTable,
    a_dual,
    char_poly,
    char_poly_mobius,
    check_axioms,
    closure,
    contract,
    delete,
    equivalent_realizations,
    flats,
    gamma_possible,
    isomorphism,
    mobius,
    rank_table,
    rank_table_from_subset,
    representability_search,
    tutte,
    tutte_eval_exact,
    tutte_recursive_rhs,
    uniform_matroid,
)

from conftest import subgroups


def _brute_submodular(card, n):
    return all(card[S & T] * card[S | T] <= card[S] * card[T]
               for S in range(1 << n) for T in range(1 << n))


def _brute_flats(card, n):
    full = (1 << n) - 1
    return [S for S in range(1 << n)
            if all(card[S | (1 << x)] != card[S] for x in range(n) if not S >> x & 1) or S == full]


def _brute_chi(card, n, k):
    cE = card[(1 << n) - 1]
    return sum((-1) ** bin(S).count("1") * (cE / card[S]) ** k for S in range(1 << n))


@given(subgroups())
def test_subgroup_tables_satisfy_axioms(H):
    P = rank_table(H)
    rep = check_axioms(P)
    assert rep.P1 and rep.P2 and rep.P3 and rep.P3_prime
    assert _brute_submodular(P.card, P.n)


def test_raw_subset_fails_submodularity_at_12_23():
    rep = check_axioms(rank_table_from_subset(fx.example_l()))
    assert not rep.P3
    assert rep.counterexamples["P3"] == (0b011, 0b110)


def test_h_s3_card_table():
    P = rank_table(fx.h_s3())
    assert P.base == 6 and list(P.card) == [1, 2, 6, 6]


@given(subgroups())
def test_flats_match_brute_force(H):
    P = rank_table(H)
    assert flats(P) == _brute_flats(P.card, P.n)
    for S in range(1 << P.n):
        c = closure(P, S)
        assert c & S == S and P.card[c] == P.card[S] and c in flats(P)


@given(subgroups())
def test_subset_sum_and_mobius_char_polys_agree(H):
    P = rank_table(H)
    assert char_poly(P) == char_poly_mobius(P)
    for k in (0, 1, 2):
        if not P.loops():
            assert char_poly(P).eval_at_power(k) == _brute_chi(P.card, P.n, k)


def test_char_poly_vanishes_with_a_loop():
    P = RankTable(2, [1, 1, 2, 2], base=2)
    assert char_poly(P).is_zero() and char_poly_mobius(P).is_zero()


def test_h_s3_dual():
    D = a_dual(rank_table(fx.h_s3()))
    assert list(D.card) == [1, 6, 2, 6]
    assert flats(D) == [0, 0b10, 0b11]
    mu = mobius(D)
    assert (mu[(0, 0b10)], mu[(0, 0b11)]) == (-1, 0)
    chi = char_poly(D)
    assert chi.terms == {Fraction(6): 1, Fraction(3): -1}
    assert [chi.eval_at_power(k) for k in (1, 2)] == [3, 27]


@given(subgroups())
def test_dual_is_an_involution_and_a_polymatroid(H):
    P = rank_table(H)
    A = list(H.parent.orders)
    D = a_dual(P, A)
    assert check_axioms(D).polymatroid
    assert a_dual(D, A).card == P.card


@given(subgroups(), st.integers(0, 7))
def test_minor_duality(H, S):
    P = rank_table(H)
    S &= P.full
    if S == P.full:
        return
    A = list(H.parent.orders)
    rest = [A[x] for x in range(P.n) if not S >> x & 1]
    assert a_dual(delete(P, S), rest).card == contract(a_dual(P, A), S).card
    assert a_dual(contract(P, S), rest).card == delete(a_dual(P, A), S).card


@given(subgroups(), st.integers(0, 7))
def test_contraction_is_realized_by_the_kernel(H, S):
    P = rank_table(H)
    S &= P.full
    if S == P.full:
        return
    assert rank_table(kernel_contract(H, S), b=P.base).card == contract(P, S).card


def test_contraction_of_h_s3_by_first_coordinate():
    H = fx.h_s3()
    K = kernel_contract(H, 0b01)
    assert K.order == 3
    assert list(contract(rank_table(H), 0b01).card) == [1, 3]


@given(subgroups(), st.sampled_from([(1, 0), (0, 1), (2, 1), (1, 2), (-1, 2)]))
def test_tutte_deletion_contraction(H, ab):
    P = rank_table(H)
    a, b = ab
    T = tutte_eval_exact(tutte(P), a, b)
    for x in range(P.n):
        if P.n == 1:
            break
        assert tutte_recursive_rhs(P, x, a, b) == T


def test_tutte_of_h_s3_at_first_point():
    T = tutte(rank_table(fx.h_s3()))
    assert tutte_eval_exact(T, 1, 0) == 11


def test_uniform_dual():
    D = a_dual(uniform_matroid(1, 3), [2, 2, 2])
    assert D.card == uniform_matroid(2, 3).card
    assert check_axioms(uniform_matroid(2, 3)).matroid


def test_dual_rejects_small_capacities():
    with pytest.raises(DomainError):
        a_dual(rank_table(fx.h_s3()), [1, 6])


def test_gamma_possible():
    P = rank_table(fx.h_s3())
    assert gamma_possible(P, symmetric(3)) == (True, None)
    assert gamma_possible(P, symmetric(3), strong=True)[0]
    bad = RankTable(1, [1, 4], base=6)
    assert gamma_possible(bad, symmetric(3)) == (False, 1)


def test_isomorphism_finds_permutation():
    P = RankTable(2, [1, 2, 6, 6], base=6)
    Q = RankTable(2, [1, 6, 2, 6], base=6)
    assert isomorphism(P, Q) == (1, 0)
    assert isomorphism(P, RankTable(2, [1, 3, 6, 6], base=6)) is None


def test_equivalent_realizations_of_diagonals():
    P = GroupProduct([symmetric(3)] * 2)
    H1 = fx.diagonal_s3()
    t, c = symmetric(3).element("(12)"), symmetric(3).element("(123)")
    c2 = symmetric(3).power(c, 2)
    H2 = subgroup_closure(P, [(t, t), (c, c2)])  # graph of conjugation by t
    ok, witness = equivalent_realizations(H1, H2)
    assert ok
    ok, reason = equivalent_realizations(H1, fx.h_s3())
    assert not ok


def test_u23_is_representable_over_z2():
    H = representability_search(uniform_matroid(2, 3, b=2), cyclic(2), n_max=3)
    assert H is not None and H.order == 4
    assert isomorphism(rank_table(H, b=2), uniform_matroid(2, 3, b=2)) is not None


def test_u24_is_not_representable_over_z2():
    assert representability_search(uniform_matroid(2, 4, b=2), cyclic(2), n_max=4) is None


def test_rank_table_json_round_trip():
    P = rank_table(fx.h_s3())
    data = P.to_json()
    assert data == {"n": 2, "b": {"kind": "group_order", "value": 6},
                    "card": {"0": "1", "1": "2", "2": "6", "3": "6"}}
    assert RankTable.from_json(data).card == P.card
    Q = a_dual(RankTable(1, [1, Fraction(3, 2)], base=Fraction(3, 2)), [Fraction(9, 4)])
    assert RankTable.from_json(Q.to_json()).card == Q.card

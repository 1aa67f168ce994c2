import cmath
import math

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from groupmatroid import fixtures as fx
from groupmatroid.cyclotomic import Cyclotomic, cyclotomic_poly
from groupmatroid.exceptions import CapabilityError, ValidationError
from groupmatroid.groups import construct_group, cyclic, quaternion8, symmetric
from groupmatroid.io import read_text
from groupmatroid.polymatroid import a_dual, check_axioms, rank_table
from groupmatroid.reptheory import (
    abelian_dual_subgroup,
    aggregate_dimension,
    character_table,
    dual_crapo_rota,
    exact_triv_distribution,
    r_spectrum,
    rank_from_spectrum,
    read_character_table,
    submodularity_counterexample_rR,
    triv_distribution_from_spectrum,
)

from conftest import abelian_subgroups, subgroups


@pytest.mark.parametrize("e", range(1, 31))
def test_cyclotomic_polynomials_match_sympy(e):
    x = sympy.Symbol("x")
    want = sympy.Poly(sympy.cyclotomic_poly(e, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_poly(e)) == [int(c) for c in want]


@given(st.integers(1, 12), st.lists(st.integers(-5, 5), min_size=1, max_size=12),
       st.lists(st.integers(-5, 5), min_size=1, max_size=12))
def test_cyclotomic_arithmetic_matches_complex(e, a, b):
    A, B = Cyclotomic(e, a), Cyclotomic(e, b)
    assert abs((A * B).to_complex() - A.to_complex() * B.to_complex()) < 1e-6
    assert abs((A + B).to_complex() - A.to_complex() - B.to_complex()) < 1e-9
    assert abs(A.conj().to_complex() - A.to_complex().conjugate()) < 1e-9


def test_cyclotomic_parse():
    z = Cyclotomic.parse("1+z^2", 3)
    assert z == -Cyclotomic.zeta_power(3, 1)
    with pytest.raises(ValidationError):
        Cyclotomic.parse("1+y", 3)


def test_s3_character_table():
    T = character_table(symmetric(3))
    assert T.names == ("1", "s", "t") and T.dims == (1, 1, 2)
    assert [[T.value(i, c).to_int() for c in range(3)] for i in range(3)] == [[1, 1, 1], [1, -1, 1], [2, 0, -1]]


@pytest.mark.parametrize("spec", ["cyclic:5", "cyclic:6", "abelian:2x2", "dihedral:4", "dihedral:5",
                                  "quaternion:8", "symmetric:4"])
def test_tables_are_orthonormal_and_complete(spec):
    T = character_table(construct_group(spec))
    assert sum(d * d for d in T.dims) == T.group.order
    assert len(T.names) == len(T.classes)


def test_cyclic_characters_are_exponentials():
    G = cyclic(6)
    T = character_table(G)
    vals = np.array([[T.value(i, c).to_complex() for c in range(6)] for i in range(6)])
    classes = [cl[0] for cl in T.classes]
    expected = {tuple(np.round([cmath.exp(2j * math.pi * j * g / 6) for g in classes], 8)) for j in range(6)}
    assert {tuple(np.round(v, 8)) for v in vals} == expected


def test_q8_table_file_matches_builtin(tmp_path):
    path = tmp_path / "q8.chartab"
    path.write_text(read_text("builtin:q8", ".chartab"))
    T = read_character_table(quaternion8(), path)
    assert sorted(T.dims) == [1, 1, 1, 1, 2]


def test_bad_character_file_is_rejected(tmp_path):
    path = tmp_path / "bad.chartab"
    text = read_text("builtin:q8", ".chartab").replace("rho: 2 -2 0 0 0", "rho: 2 2 0 0 0")
    path.write_text(text)
    with pytest.raises(ValidationError):
        read_character_table(quaternion8(), path)


def _float_multiplicities(H):
    """<π, χ> with π the permutation character on left cosets of H, in floating point."""
    P = H.parent
    tables = [character_table(F) for F in P.factors]
    G = P.all_elements()
    codes_H = set(H.codes.tolist())
    # coset label: canonical code of gH
    cosets = {}
    for g in G:
        gh = P.encode(P.mul_arrays(np.broadcast_to(g, H.elements.shape), H.elements))
        cosets.setdefault(int(gh.min()), g)
    reps = np.array(list(cosets.values()))
    inv_reps = P.inv_arrays(reps)
    out = {}
    perm_char = np.empty(len(G))
    for a, g in enumerate(G):
        # g fixes rH iff r^{-1} g r ∈ H
        conj = P.mul_arrays(P.mul_arrays(inv_reps, np.broadcast_to(g, reps.shape)), reps)
        perm_char[a] = sum(int(c) in codes_H for c in P.encode(conj))
    for irr in np.ndindex(*[len(t.names) for t in tables]):
        chi = np.ones(len(G), dtype=complex)
        for x, (t, i) in enumerate(zip(tables, irr)):
            cl = t.class_of[G[:, x]]
            chi *= np.array([t.value(i, c).to_complex() for c in range(len(t.classes))])[cl]
        m = (perm_char * chi.conj()).sum() / len(G)
        if abs(m) > 1e-6:
            out[irr] = m
    return out


@given(subgroups(max_n=2, max_order=72))
def test_multiplicities_match_float_permutation_character(H):
    spec = r_spectrum(H)
    want = _float_multiplicities(H)
    got = {en.irrep: en.mult for en in spec.entries}
    assert set(got) == set(want)
    for k, v in want.items():
        assert abs(v - got[k]) < 1e-6


@given(subgroups())
def test_aggregate_identity(H):
    spec = r_spectrum(H)
    for S in range(1 << H.n):
        lhs = sum(en.mult * en.dim for en in spec.entries if en.triv & S == S)
        assert lhs == aggregate_dimension(H, S)
    assert triv_distribution_from_spectrum(spec) == exact_triv_distribution(H)


def test_named_spectra():
    assert r_spectrum(fx.diagonal_s3()).names() == {"1⊗1", "s⊗s", "t⊗t"}
    assert r_spectrum(fx.sign_matched_s3()).names() == {"1⊗1", "s⊗s"}
    assert r_spectrum(fx.h_s3()).names() == {"1⊗1", "s⊗s", "t⊗1", "t⊗s"}


def test_diagonal_dual_crapo_rota_k1():
    rep = dual_crapo_rota(fx.diagonal_s3(), 1)
    assert rep.match and rep.lhs == 5


@given(subgroups(), st.integers(1, 3), st.sampled_from(["orders", "spectrum"]))
def test_dual_crapo_rota(H, k, source):
    rep = dual_crapo_rota(H, k, source=source)
    assert rep.match, (rep.lhs, rep.rhs)


@given(subgroups())
def test_spectrum_ranks_equal_dual_ranks(H):
    spec = r_spectrum(H)
    D = a_dual(rank_table(H))
    for S in range(1 << H.n):
        assert rank_from_spectrum(spec, S) == D.card[S]


def test_h_s3_spectrum_ranks():
    spec = r_spectrum(fx.h_s3())
    assert rank_from_spectrum(spec, 0b01) == 6 and rank_from_spectrum(spec, 0b10) == 2


def test_arbitrary_representation_rank_is_not_submodular():
    out = submodularity_counterexample_rR()
    assert not out["submodular"] and out["lhs"] < out["rhs"]


@given(abelian_subgroups(max_n=3, max_order=128).filter(lambda H: len(set(H.parent.factors)) == 1))
def test_abelian_dual_realizes_the_dual(H):
    Hd = abelian_dual_subgroup(H)
    assert Hd.order * H.order == H.parent.order
    assert rank_table(Hd).card == a_dual(rank_table(H)).card
    assert abelian_dual_subgroup(Hd) == H
    assert check_axioms(rank_table(Hd)).polymatroid


def test_chen_dual_realization():
    H = fx.chen()
    assert rank_table(abelian_dual_subgroup(H)).card == a_dual(rank_table(H)).card


def test_nonabelian_dual_realization_is_refused():
    with pytest.raises(CapabilityError):
        abelian_dual_subgroup(fx.h_s3())

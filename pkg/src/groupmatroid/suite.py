"""Regression suite over the worked examples: each check recomputes a
published value from scratch and compares it with the expected one."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import fixtures as fx
from .codes import macwilliams_check, weight_enumerator
from .critical import verify_crapo_rota
from .groups import GroupProduct, cyclic, subgroup_closure, symmetric
from .hypergraph import star_graph
from .laplacian import build_quotient, edge_counts, laplacian_spectrum, predicted_top_spectrum
from .polymatroid import (
    a_dual,
    char_poly,
    check_axioms,
    flats,
    mobius,
    rank_table,
    rank_table_from_subset,
)
from .reports import exact_json
from .reptheory import (
    abelian_dual_subgroup,
    character_table,
    dual_crapo_rota,
    r_spectrum,
    rank_from_spectrum,
    submodularity_counterexample_rR,
)

__all__ = ["Check", "CHECKS", "run_suite"]


@dataclass
class Check:
    name: str
    ok: bool
    observed: object
    expected: object
    notes: list = field(default_factory=list)
    seconds: float = 0.0

    def to_json(self) -> dict:
        out = {"name": self.name, "ok": self.ok, "observed": exact_json(self.observed),
               "expected": exact_json(self.expected)}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


def _cmp(name, observed, expected, notes=()):
    return Check(name, observed == expected, observed, expected, list(notes))


def _products():
    a = GroupProduct([symmetric(3)] * 2)
    b = GroupProduct([cyclic(6)] * 3)
    return _cmp("product orders S3², (Z/6)³", [a.order, b.order], [36, 216])


def _generated():
    return _cmp("generated subgroups: H_s3 and diagonal", [fx.h_s3().order, fx.diagonal_s3().order], [6, 6])


def _h_s3_ranks():
    return _cmp("H_s3 card table (b = 6)", list(rank_table(fx.h_s3()).card), [1, 2, 6, 6])


def _not_submodular():
    L = fx.example_l()
    sizes = [L.projection_size(S) for S in (0b011, 0b110, 0b111, 0b010)]
    rep = check_axioms(rank_table_from_subset(L))
    return _cmp("raw subset: |L_12|·|L_23| < |L_123|·|L_2| and P3 fails at {1,2},{2,3}",
                [sizes[0] * sizes[1], sizes[2] * sizes[3], rep.P3, rep.counterexamples.get("P3")],
                [9, 10, False, (0b011, 0b110)])


def _dual_flats():
    D = a_dual(rank_table(fx.h_s3()))
    mu = mobius(D)
    return _cmp("dual of H_s3: flats ∅ ⊂ {2} ⊂ E, μ(∅,{2}) = −1, μ(∅,E) = 0",
                [flats(D), mu[(0, 0)], mu[(0, 0b10)], mu[(0, 0b11)]], [[0, 0b10, 0b11], 1, -1, 0])


def _dual_charpoly():
    chi = char_poly(a_dual(rank_table(fx.h_s3())))
    return _cmp("χ_{P*} = t − t^(log_6 3)", chi.terms, {Fraction(6): 1, Fraction(3): -1})


def _charpoly_values():
    chi = char_poly(a_dual(rank_table(fx.h_s3())))
    return _cmp("χ_{P*} at k = 0, 1, 2", [chi.eval_at_power(k) for k in (0, 1, 2)], [0, 3, 27])


def _dual_ranks():
    D = a_dual(rank_table(fx.h_s3()), [6, 6])
    return _cmp("dual card table (A = (6, 6))", list(D.card), [1, 6, 2, 6])


def _crapo_rota():
    H = fx.h_s3()
    reps = [verify_crapo_rota(H, k) for k in (1, 2)]
    return _cmp("Crapo–Rota on H_s3, k = 1, 2", [(r.lhs, r.rhs) for r in reps], [(3, 3), (27, 27)])


def _s3_characters():
    T = character_table(symmetric(3))
    vals = [[int(T.values[i, j, 0]) for j in range(3)] for i in range(3)]
    return _cmp("S3 character table rows 1, s, t", vals, [[1, 1, 1], [1, -1, 1], [2, 0, -1]])


def _spectra():
    got = [r_spectrum(H).names() for H in (fx.diagonal_s3(), fx.sign_matched_s3(), fx.h_s3())]
    want = [{"1⊗1", "s⊗s", "t⊗t"}, {"1⊗1", "s⊗s"}, {"1⊗1", "s⊗s", "t⊗1", "t⊗s"}]
    return _cmp("R(H) for diagonal, sign-matched, H_s3", got, want)


def _dual_crapo_rota():
    rep = dual_crapo_rota(fx.h_s3(), 2)
    return _cmp("dual Crapo–Rota on H_s3, k = 2", [rep.lhs, rep.rhs], [27, 27])


def _spectrum_ranks():
    spec = r_spectrum(fx.h_s3())
    return _cmp("card from spectrum: {1} ↦ 6, {2} ↦ 2",
                [rank_from_spectrum(spec, 0b01), rank_from_spectrum(spec, 0b10)], [6, 2])


def _rR_not_submodular():
    out = submodularity_counterexample_rR()
    return _cmp("r_R for Z/2: 9/4 < 9/3", [out["lhs"], out["rhs"], out["submodular"]],
                [Fraction(9, 4), Fraction(3), False])


def _whitney_dual():
    parent = GroupProduct([cyclic(2)] * 4)
    H = subgroup_closure(parent, [(1, 0, 1, 1), (0, 1, 1, 0)])
    Hd = abelian_dual_subgroup(H)
    perp = {t for t in map(tuple, parent.all_elements())
            if all(sum(a * b for a, b in zip(t, h)) % 2 == 0 for h in H.tuples())}
    return _cmp("dual subgroup over Z/2 is the orthogonal complement", set(map(tuple, Hd.tuples())), perp)


def _greene_n1():
    H = subgroup_closure(GroupProduct([symmetric(3)]), [(1,), (3,)])
    return _cmp("n = 1: W_H(t) = 1 + (|H| − 1)t", list(weight_enumerator(H).coeffs), [1, H.order - 1])


def _macwilliams_binary():
    rep = macwilliams_check(fx.binary_b())
    return Check("MacWilliams for a binary code", rep.match, rep.lhs, rep.rhs)


def _hypergraph_matrix():
    A = star_graph(fx.hypergraph_example()).matrix.tolist()
    want = [[1, 0, 1, 0, 0, 1, 0, 0, 0],
            [0, 1, 0, 1, 1, -1, 0, 0, 0],
            [-1, -1, 0, 0, 0, 0, 0, 0, 1],
            [0, 0, -1, -1, -1, 0, 0, 0, -1]]
    return _cmp("A(H) of the four-edge hypergraph", A, want)


def _chen_edges():
    counts = edge_counts(build_quotient(fx.chen()))
    observed = {f"v{a[0] + 1}v{b[0] + 1}": c for (a, b), c in counts.items()}
    published = {"v1v2": 2, "v1v3": 1, "v2v3": 3}
    ok = sorted(observed.values()) == sorted(published.values())
    return Check("Chen: edge multiplicities between the three vertices", ok, observed, published,
                 ["compared as multisets: the computed labelling is v1v2:3, v1v3:2, v2v3:1"])


def _chen_spectrum():
    rep = laplacian_spectrum(build_quotient(fx.chen()), 0, augmented=False)
    return _cmp("Chen: Δ_0 char poly λ³ − 12λ² + 33λ", [rep.char_poly, rep.residual_factor],
                [[0, 33, -12, 1], [33, -12, 1]])


def _single_join():
    H = subgroup_closure(GroupProduct([symmetric(3)]), [])
    rep = laplacian_spectrum(build_quotient(H), 0)
    return _cmp("n = 1: Δ_0 eigenvalues |Γ|, 0^(|Γ|−1)", rep.spectrum(), [6, 0, 0, 0, 0, 0])


def _binary_spectra():
    A, B = fx.binary_a(), fx.binary_b()
    pa, pb = predicted_top_spectrum(A), predicted_top_spectrum(B)
    ca = laplacian_spectrum(build_quotient(A), 5).integer_roots
    cb = laplacian_spectrum(build_quotient(B), 5).integer_roots
    return _cmp("binary A and B: identical Δ_5 spectra (predicted and computed)",
                [dict(pa), dict(ca), dict(cb)], [dict(pb), dict(pa), dict(pa)])


CHECKS: list[Callable[[], Check]] = [
    _products, _generated, _h_s3_ranks, _not_submodular, _dual_flats, _dual_charpoly, _charpoly_values,
    _dual_ranks, _crapo_rota, _s3_characters, _spectra, _dual_crapo_rota, _spectrum_ranks,
    _rR_not_submodular, _whitney_dual, _greene_n1, _macwilliams_binary, _hypergraph_matrix,
    _chen_edges, _chen_spectrum, _single_join, _binary_spectra,
]


def run_suite() -> list[Check]:
    out = []
    for fn in CHECKS:
        t0 = time.perf_counter()
        try:
            chk = fn()
        except Exception as exc:  # a crashing check is a failing check
            chk = Check(fn.__name__.strip("_"), False, f"{type(exc).__name__}: {exc}", None)
        chk.seconds = time.perf_counter() - t0
        out.append(chk)
    return out


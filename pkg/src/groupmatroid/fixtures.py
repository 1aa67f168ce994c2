"""Named subgroups and hypergraphs used by the regression suite, the tests and
the demos."""
from __future__ import annotations

from .groups import GroupProduct, RawSubset, Subgroup, cyclic, subgroup_closure
from .hypergraph import Hypergraph, example_hypergraph
from .io import load_subgroup

__all__ = ["h_s3", "diagonal_s3", "sign_matched_s3", "chen", "binary_a", "binary_b",
           "example_l", "hypergraph_example", "full_product", "trivial_subgroup"]


def h_s3() -> Subgroup:
    """Order 6 in ``S3 × S3``: identity first coordinate over the 3-cycles, a
    transposition over the transpositions."""
    return load_subgroup("builtin:h_s3")


def diagonal_s3() -> Subgroup:
    return load_subgroup("builtin:diagonal_s3")


def sign_matched_s3() -> Subgroup:
    """``{(σ, τ) : sgn σ = sgn τ}``, order 18."""
    return load_subgroup("builtin:sign_matched_s3")


def chen() -> Subgroup:
    """Generated by ``(1, 2, 3)`` and ``(2, 1, 4)`` in ``(Z/6)³``."""
    return load_subgroup("builtin:chen")


def binary_a() -> Subgroup:
    return load_subgroup("builtin:binary_A")


def binary_b() -> Subgroup:
    return load_subgroup("builtin:binary_B")


def example_l() -> RawSubset:
    """Five points of ``{1,2}³`` whose projection sizes are not submodular."""
    parent = GroupProduct([cyclic(2)] * 3)
    pts = [(2, 2, 2), (2, 1, 2), (1, 1, 2), (1, 1, 1), (2, 1, 1)]
    return RawSubset(parent, [tuple(v - 1 for v in p) for p in pts])


def hypergraph_example() -> Hypergraph:
    return example_hypergraph()


def full_product(parent: GroupProduct) -> Subgroup:
    return Subgroup(parent, parent.all_elements(), check=False)


def trivial_subgroup(parent: GroupProduct) -> Subgroup:
    return subgroup_closure(parent, [])



"""Hypergraphs, their star-graph matrices and polymatroids, and exact counts
of proper colorings and nowhere-zero flows.

A hyperedge is a multiset of vertices, stored as a sorted tuple of vertex
indices.  Vertices are ordered by name (numeric names numerically), and the
anchor ``v_x`` of an edge is its largest vertex unless stated otherwise.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exactlinalg import rank_q
from .exceptions import CapabilityError, ScaleError, ValidationError
from .groups import FiniteGroup, _popcount, mask_to_coords
from .polymatroid import RankTable, a_dual

ENUMERATION_CAP = 10**8
_CHUNK = 1 << 17

__all__ = [
    "Hypergraph",
    "StarGraphMatrix",
    "parse_hypergraph",
    "read_hypergraph",
    "star_graph",
    "bipartite_graph",
    "components",
    "hyper_ranks",
    "hyper_polymatroid",
    "chi_integer",
    "count_colorings",
    "chromatic_value",
    "coloring_polynomial_values",
    "coloring_count_via_kernel",
    "count_nzflows",
    "flow_value",
    "flow_capacities",
    "is_totally_unimodular",
    "anchor_invariant",
    "random_hypergraph",
    "example_hypergraph",
]


def _vertex_key(name: str):
    return (0, int(name), "") if re.fullmatch(r"-?\d+", name) else (1, 0, name)


@dataclass(frozen=True)
class Hypergraph:
    """Vertex names and hyperedges as sorted tuples of vertex indices."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.vertices)
        if len(set(self.vertices)) != m:
            raise ValidationError("duplicate vertex names")
        for x in self.edges:
            if not x:
                raise ValidationError("hyperedges must be nonempty")
            if any(not 0 <= v < m for v in x):
                raise ValidationError(f"hyperedge {x} references an unknown vertex")
            if tuple(sorted(x)) != tuple(x):
                raise ValidationError("hyperedge tuples must be sorted")

    @classmethod
    def from_edges(cls, edges: Iterable[Iterable[str]], vertices: Iterable[str] = ()) -> "Hypergraph":
        edges = [[str(v) for v in x] for x in edges]
        names = sorted(set(map(str, vertices)).union(*map(set, edges)) if edges else set(map(str, vertices)),
                       key=_vertex_key)
        index = {v: i for i, v in enumerate(names)}
        return cls(tuple(names), tuple(tuple(sorted(index[v] for v in x)) for x in edges))

    @classmethod
    def from_graph(cls, edges: Iterable[tuple], vertices: Iterable = ()) -> "Hypergraph":
        """``H(G)``: a loop at ``a`` becomes ``{a, a}``."""
        out = []
        for e in edges:
            e = [str(v) for v in e]
            if len(e) == 1:
                e = e * 2
            if len(e) != 2:
                raise ValidationError("graph edges have one or two endpoints")
            out.append(e)
        return cls.from_edges(out, [str(v) for v in vertices])

    @property
    def m(self) -> int:
        return len(self.vertices)

    @property
    def n(self) -> int:
        return len(self.edges)

    def size(self, i: int) -> int:
        return len(self.edges[i])

    @property
    def capacities(self) -> list[int]:
        """``a_x = |x| − 1``."""
        return [len(x) - 1 for x in self.edges]

    def edge_names(self) -> list[str]:
        return ["".join(self.vertices[v] for v in x) if all(len(self.vertices[v]) == 1 for v in x)
                else " ".join(self.vertices[v] for v in x) for x in self.edges]

    def to_text(self) -> str:
        used = {v for x in self.edges for v in x}
        lines = [f"vertex {self.vertices[v]}" for v in range(self.m) if v not in used]
        lines += [" ".join(self.vertices[v] for v in x) for x in self.edges]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [[self.vertices[v] for v in x] for x in self.edges]}


def parse_hypergraph(text: str) -> Hypergraph:
    """One hyperedge per line, vertices separated by whitespace and repeated
    for multiplicity; ``vertex z`` declares a vertex; ``#`` starts a comment."""
    edges, extra = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        toks = raw.split("#", 1)[0].split()
        if not toks:
            continue
        if toks[0] == "vertex":
            if len(toks) < 2:
                raise ValidationError(f"line {lineno}: 'vertex' needs at least one name")
            extra.extend(toks[1:])
        else:
            edges.append(toks)
    return Hypergraph.from_edges(edges, extra)


def read_hypergraph(path) -> Hypergraph:
    return parse_hypergraph(Path(path).read_text())


def example_hypergraph() -> Hypergraph:
    """The four-edge hypergraph on ``{a, b, c, d}`` used throughout the tests."""
    return Hypergraph.from_edges([["a", "b", "c"], ["a", "b", "b", "d"], ["a", "b", "b", "b"], ["c", "d"]])


# ---------------------------------------------------------------------------
# graphs attached to a hypergraph
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StarGraphMatrix:
    """``A(H)`` with rows indexed by vertices and columns grouped by hyperedge.

    ``columns[j] = (x, w)``: column ``j`` lies in block ``x`` and joins
    ``w`` to the anchor; ``w`` equals the anchor for loop columns.
    """

    matrix: np.ndarray
    blocks: tuple[tuple[int, int], ...]
    anchors: tuple[int, ...]
    columns: tuple[tuple[int, int], ...]

    def block(self, x: int) -> np.ndarray:
        lo, hi = self.blocks[x]
        return self.matrix[:, lo:hi]

    def block_mask_columns(self, S: int) -> list[int]:
        return [j for x in mask_to_coords(S) for j in range(*self.blocks[x])]

    def to_json(self) -> dict:
        return {"matrix": self.matrix.tolist(), "blocks": [list(b) for b in self.blocks],
                "anchors": list(self.anchors)}


def star_graph(H: Hypergraph, anchor: str = "max") -> StarGraphMatrix:
    """``A(H)``: a column ``+1`` at ``w`` and ``−1`` at ``v_x`` per non-anchor
    occurrence, then a zero column per extra copy of ``v_x``."""
    if anchor not in ("max", "min"):
        raise ValueError("anchor must be 'max' or 'min'")
    cols, blocks, anchors, labels = [], [], [], []
    for x, edge in enumerate(H.edges):
        v = edge[-1] if anchor == "max" else edge[0]
        others = [w for w in edge if w != v]
        loops = edge.count(v) - 1
        lo = len(cols)
        for w in others:
            c = np.zeros(H.m, dtype=np.int64)
            c[w], c[v] = 1, -1
            cols.append(c)
            labels.append((x, w))
        for _ in range(loops):
            cols.append(np.zeros(H.m, dtype=np.int64))
            labels.append((x, v))
        blocks.append((lo, len(cols)))
        anchors.append(v)
    A = np.array(cols, dtype=np.int64).T if cols else np.zeros((H.m, 0), dtype=np.int64)
    A.setflags(write=False)
    return StarGraphMatrix(A, tuple(blocks), tuple(anchors), tuple(labels))


def bipartite_graph(H: Hypergraph) -> list[tuple[int, int]]:
    """Edges ``(x, v)`` of ``BG(H)``, oriented from hyperedge ``x`` to vertex
    ``v``, one per occurrence of ``v`` in ``x``."""
    return [(x, v) for x, edge in enumerate(H.edges) for v in edge]


def components(H: Hypergraph) -> int:
    """``κ(H)``: connected components of ``SG(H)``, isolated vertices included."""
    parent = list(range(H.m))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for edge in H.edges:
        for w in edge:
            parent[find(w)] = find(edge[-1])
    return len({find(v) for v in range(H.m)})


# ---------------------------------------------------------------------------
# polymatroids
# ---------------------------------------------------------------------------


def hyper_ranks(H: Hypergraph, anchor: str = "max") -> list[int]:
    """``r_H(S)`` for every mask: the rational column rank of the blocks in ``S``."""
    SG = star_graph(H, anchor)
    A = SG.matrix
    return [rank_q(A[:, SG.block_mask_columns(S)]) if S else 0 for S in range(1 << H.n)]


def hyper_polymatroid(H: Hypergraph, anchor: str = "max") -> RankTable:
    """``P(H)`` as a rank table with base 2 (``card = 2**r``)."""
    return RankTable(H.n, [1 << r for r in hyper_ranks(H, anchor)], base=2, provenance=H)


def _int_ranks(P: RankTable) -> list[int]:
    out = []
    for c in P.card:
        if c.denominator != 1 or c.numerator & (c.numerator - 1):
            raise ValidationError("expected a base-2 integer polymatroid")
        out.append(c.numerator.bit_length() - 1)
    return out


def chi_integer(ranks: Sequence[int], lam: int) -> int:
    """``Σ_S (−1)^{|S|} λ^{r(E) − r(S)}`` for an integer rank function."""
    rE = ranks[-1]
    return sum((-1 if _popcount(S) % 2 else 1) * lam ** (rE - r) for S, r in enumerate(ranks))


def flow_capacities(H: Hypergraph) -> list[int]:
    """``A_x = 2**(|x| − 1)``, encoding ``a_x = |x| − 1`` in base 2."""
    return [1 << a for a in H.capacities]


# ---------------------------------------------------------------------------
# enumeration helpers
# ---------------------------------------------------------------------------


def _chunks(base: int, k: int):
    """Yield ``range(base)**k`` as ``(k, N)`` column blocks, ``N`` at most about ``_CHUNK``."""
    r = k
    while r > 0 and base**r > _CHUNK:
        r -= 1
    tail = np.indices((base,) * r, dtype=np.int64).reshape(r, base**r)
    width = tail.shape[1]
    for prefix in itertools.product(range(base), repeat=k - r):
        out = np.empty((k, width), dtype=np.int64)
        out[: k - r] = np.array(prefix, dtype=np.int64)[:, None]
        out[k - r:] = tail
        yield out


# ---------------------------------------------------------------------------
# colorings
# ---------------------------------------------------------------------------


def count_colorings(H: Hypergraph, lam: int, cap: int = ENUMERATION_CAP) -> int:
    """Proper ``λ``-colorings by exhaustive enumeration of ``λ^{|V|}`` maps."""
    if lam < 0:
        raise ValueError("λ must be nonnegative")
    total = lam ** H.m
    if total > cap:
        raise ScaleError("λ^|V|", total, cap)
    if lam == 0:
        return int(H.m == 0 and H.n == 0)
    distinct = [sorted(set(x)) for x in H.edges]
    if any(len(d) == 1 for d in distinct):
        return 0
    count = 0
    for phi in _chunks(lam, H.m):
        ok = np.ones(phi.shape[1], dtype=bool)
        for d in distinct:
            ok &= (phi[d[1:]] != phi[d[0]]).any(axis=0)
        count += int(ok.sum())
    return count


def chromatic_value(H: Hypergraph, lam: int) -> int:
    """``λ^{κ(H)} χ_{P(H)}(λ)``."""
    return lam ** components(H) * chi_integer(hyper_ranks(H), lam)


def _abelian(G: FiniteGroup) -> FiniteGroup:
    if not G.is_abelian:
        raise CapabilityError("flows and the kernel route need a finite abelian group")
    return G


def _signed_row(G: FiniteGroup, row: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """``Σ_j row[j]·γ_j`` for each column ``γ`` of ``cols`` (entries of ``row`` in {−1, 0, 1})."""
    q = G.order
    flat, inv = np.asarray(G.mul).ravel(), np.asarray(G.inv)
    s = np.full(cols.shape[1], G.identity, dtype=np.int64)
    for j in np.flatnonzero(row):
        g = cols[j] if row[j] == 1 else inv[cols[j]]
        s = flat[s * q + g]
    return s


def _block_nonzero(G: FiniteGroup, blocks, h: np.ndarray) -> np.ndarray:
    ok = np.ones(h.shape[1], dtype=bool)
    for lo, hi in blocks:
        ok &= (h[lo:hi] != G.identity).any(axis=0)
    return ok


def coloring_count_via_kernel(H: Hypergraph, G: FiniteGroup, cap: int = ENUMERATION_CAP) -> dict:
    """Colorings through the coboundary map ``ψ(φ) = Aᵀφ`` into ``Π_x Γ^{|x|−1}``.

    A coloring is proper exactly when every block of ``ψ(φ)`` is non-identity,
    so the count is ``|ker ψ|`` times the number of image elements with empty
    identity support.  Returns the count, ``|ker ψ|`` and ``|Γ|^{κ(H)}``.
    """
    G = _abelian(G)
    q = G.order
    total = q ** H.m
    if total > cap:
        raise ScaleError("|Γ|^|V|", total, cap)
    SG = star_graph(H)
    At = SG.matrix.T
    image: set[bytes] = set()
    good: set[bytes] = set()
    for phi in _chunks(q, H.m):
        h = np.array([_signed_row(G, row, phi) for row in At], dtype=np.int64).reshape(len(At), phi.shape[1])
        ok = _block_nonzero(G, SG.blocks, h)
        rows = np.ascontiguousarray(h.T)
        image.update(map(bytes, rows))
        good.update(map(bytes, rows[ok]))
    kernel = total // len(image)
    return {"count": kernel * len(good), "kernel": kernel, "expected_kernel": q ** components(H),
            "image": len(image)}


# ---------------------------------------------------------------------------
# flows
# ---------------------------------------------------------------------------


def count_nzflows(H: Hypergraph, G: FiniteGroup, method: str = "matrix", cap: int = ENUMERATION_CAP) -> int:
    """Nowhere-zero ``Γ``-flows on ``H`` by exhaustive enumeration.

    ``method="matrix"`` enumerates ``γ ∈ Γ^k`` (one coordinate per column of
    ``A(H)``) with ``A(H)·γ = 0`` and no identity block.  ``method="bipartite"``
    enumerates values on the edges of ``BG(H)`` directly: each hub's values
    are free except the last, which balances the hub, and conservation is
    then checked at every vertex.
    """
    G = _abelian(G)
    q = G.order
    k = sum(H.capacities)
    total = q**k
    if total > cap:
        raise ScaleError("|Γ|^Σ(|x|−1)", total, cap)
    if method == "matrix":
        SG = star_graph(H)
        count = 0
        for gamma in _chunks(q, k):
            gamma = gamma[:, _block_nonzero(G, SG.blocks, gamma)]
            for row in SG.matrix:
                if not gamma.shape[1]:
                    break
                gamma = gamma[:, _signed_row(G, row, gamma) == G.identity]
            count += gamma.shape[1]
        return count
    if method != "bipartite":
        raise ValueError(f"unknown method {method!r}")
    # one BG edge per occurrence; the last occurrence in each hub carries −Σ(block)
    blocks, j = [], 0
    free_at: list[list[int]] = [[] for _ in range(H.m)]
    balance_at: list[list[int]] = [[] for _ in range(H.m)]
    for x, edge in enumerate(H.edges):
        lo = j
        for w in edge[:-1]:
            free_at[w].append(j)
            j += 1
        blocks.append((lo, j))
        balance_at[edge[-1]].append(x)
    hub_rows = np.zeros((len(blocks), k), dtype=np.int64)
    for x, (lo, hi) in enumerate(blocks):
        hub_rows[x, lo:hi] = -1
    vertex_rows = np.zeros((H.m, k + len(blocks)), dtype=np.int64)
    for v in range(H.m):
        vertex_rows[v, free_at[v]] = 1
        vertex_rows[v, [k + x for x in balance_at[v]]] = 1
    count = 0
    for gamma in _chunks(q, k):
        gamma = gamma[:, _block_nonzero(G, blocks, gamma)]
        if not gamma.shape[1]:
            continue
        # row k + x holds the balancing value −Σ(block x) of hub x
        hubs = [_signed_row(G, row, gamma) for row in hub_rows]
        full = np.vstack([gamma, np.array(hubs, dtype=np.int64).reshape(len(blocks), -1)])
        for row in vertex_rows:
            full = full[:, _signed_row(G, row, full) == G.identity]
            if not full.shape[1]:
                break
        count += full.shape[1]
    return count


def flow_value(H: Hypergraph, q: int | FiniteGroup) -> int:
    """``χ_{P(H)^{*a}}(q)`` with ``a_x = |x| − 1``."""
    if isinstance(q, FiniteGroup):
        q = _abelian(q).order
    dual = a_dual(hyper_polymatroid(H), flow_capacities(H))
    return chi_integer(_int_ranks(dual), q)


# ---------------------------------------------------------------------------
# structural checks and generators
# ---------------------------------------------------------------------------


def is_totally_unimodular(A: np.ndarray, max_size: int = 5) -> tuple[bool, tuple | None]:
    """Every square submatrix up to ``max_size`` has determinant in {−1, 0, 1}.

    Returns a failing ``(rows, cols)`` pair when one exists.
    """
    A = np.asarray(A, dtype=np.int64)
    if A.size and not np.isin(A, (-1, 0, 1)).all():
        i, j = map(int, np.argwhere(~np.isin(A, (-1, 0, 1)))[0])
        return False, ((i,), (j,))
    rows, cols = A.shape
    for s in range(2, min(max_size, rows, cols) + 1):
        col_sets = list(itertools.combinations(range(cols), s))
        for R in itertools.combinations(range(rows), s):
            sub = A[np.ix_(R, range(cols))]
            stack = np.stack([sub[:, C] for C in col_sets]).astype(np.float64)
            dets = np.rint(np.linalg.det(stack)).astype(np.int64)
            bad = np.flatnonzero(np.abs(dets) > 1)
            if len(bad):
                return False, (R, col_sets[int(bad[0])])
    return True, None


def anchor_invariant(H: Hypergraph) -> bool:
    """``P(H)`` computed with maximum and with minimum anchors agree."""
    return hyper_ranks(H, "max") == hyper_ranks(H, "min")


def random_hypergraph(rng: np.random.Generator, max_vertices: int = 7, max_total: int = 14,
                      max_edges: int = 6) -> Hypergraph:
    """A random hypergraph with ``|V| ≤ max_vertices`` and ``Σ|x| ≤ max_total``."""
    m = int(rng.integers(2, max_vertices + 1))
    names = [chr(ord("a") + i) for i in range(m)]
    budget = max_total
    edges = []
    for _ in range(int(rng.integers(1, max_edges + 1))):
        if budget < 1:
            break
        size = int(rng.integers(1, min(4, budget) + 1))
        edges.append([names[int(v)] for v in rng.integers(0, m, size=size)])
        budget -= size
    return Hypergraph.from_edges(edges, names)


def coloring_polynomial_values(H: Hypergraph, lams: Sequence[int]) -> dict[int, Fraction]:
    """``λ^{κ} χ_{P(H)}(λ)`` at several ``λ`` (shared rank computation)."""
    ranks = hyper_ranks(H)
    kappa = components(H)
    return {lam: Fraction(lam**kappa * chi_integer(ranks, lam)) for lam in lams}


"""Character tables, the spectrum ``R(H)`` of irreducibles in ``C[G/H]``, and
identities relating it to the dual polymatroid.

Multiplicities use the Frobenius formula
``mult(ρ) = (1/|H|) Σ_{h∈H} Π_x χ_{ρ_x}(h_x)`` evaluated in exact cyclotomic
arithmetic, which covers non-normal ``H`` as well.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .cyclotomic import Cyclotomic, reduce_ring, ring_conj, ring_lift, ring_mul
from .exceptions import CapabilityError, ConsistencyError, ValidationError
from .groups import (
    FiniteGroup,
    GroupProduct,
    Subgroup,
    as_mask,
    conjugacy_classes,
    cyclic,
    mask_to_coords,
)
from .polymatroid import a_dual, char_poly, rank_table
from .reports import Report

__all__ = [
    "CharacterTable",
    "SpectrumEntry",
    "RSpectrum",
    "character_table",
    "read_character_table",
    "r_spectrum",
    "aggregate_dimension",
    "exact_triv_distribution",
    "triv_distribution_from_spectrum",
    "dual_crapo_rota",
    "rank_from_spectrum",
    "submodularity_counterexample_rR",
    "abelian_dual_subgroup",
]


# ---------------------------------------------------------------------------
# character tables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CharacterTable:
    """Irreducible characters of ``group`` on its conjugacy classes.

    ``values[i, c]`` is the ring array (length ``e``) of ``χ_i`` on class ``c``;
    the trivial character is row 0.
    """

    group: FiniteGroup
    classes: tuple
    values: np.ndarray
    e: int
    names: tuple
    source: str

    def __post_init__(self):
        self.values.setflags(write=False)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(self.value(i, 0).to_int() for i in range(len(self.names)))

    @property
    def class_of(self) -> np.ndarray:
        out = np.empty(self.group.order, dtype=np.int64)
        for c, cls in enumerate(self.classes):
            out[list(cls)] = c
        return out

    def value(self, i: int, c: int) -> Cyclotomic:
        return Cyclotomic.from_ring(self.values[i, c], self.e)

    def validate(self):
        """Row orthogonality, ``Σ dim² = |Γ|`` and a trivial first row (exact)."""
        G = self.group
        k = len(self.classes)
        if self.values.shape[:2] != (k, k):
            raise ValidationError(f"character table must be {k}x{k}, got {self.values.shape[:2]}")
        if self.classes[0] != (G.identity,):
            raise ValidationError("the first class must be the identity class")
        sizes = np.array([len(c) for c in self.classes], dtype=np.int64)
        V = self.values
        Vc = ring_conj(V)
        for i in range(k):
            for j in range(k):
                acc = (sizes[:, None] * ring_mul(V[i], Vc[j])).sum(axis=0)
                val = Cyclotomic.from_ring(acc, self.e)
                want = G.order if i == j else 0
                if val != want:
                    raise ValidationError(f"characters {self.names[i]} and {self.names[j]} "
                                          f"are not orthonormal (inner product·|Γ| = {val})")
        dims = self.dims
        if sum(d * d for d in dims) != G.order:
            raise ValidationError(f"Σ dim² = {sum(d * d for d in dims)} differs from |Γ| = {G.order}")
        if any(Cyclotomic.from_ring(V[0, c], self.e) != 1 for c in range(k)):
            raise ValidationError("the first row must be the trivial character")
        return self


def _table(G: FiniteGroup, rows: Sequence[Sequence[Cyclotomic]], names, e: int, source: str) -> CharacterTable:
    classes = tuple(conjugacy_classes(G))
    vals = np.zeros((len(rows), len(classes), e), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in enumerate(row):
            vals[i, c] = v.lift(e).ring() if v.e != e else v.ring()
    return CharacterTable(G, classes, vals, e, tuple(names), source).validate()


def _cyclic_table(G: FiniteGroup) -> CharacterTable:
    n = G.order
    classes = conjugacy_classes(G)
    rows = [[Cyclotomic.zeta_power(n, j * cls[0]) for cls in classes] for j in range(n)]
    return _table(G, rows, [f"chi{j}" for j in range(n)], n, "builtin")


def _dihedral_table(G: FiniteGroup) -> CharacterTable:
    n = G.family[1]
    classes = conjugacy_classes(G)
    e = n

    def rot(g):
        return g < n, g % n

    rows, names = [], []

    def linear(fr, fs, name):
        row = []
        for cls in classes:
            is_rot, k = rot(cls[0])
            row.append(Cyclotomic.integer(e, fr**k if is_rot else fs * fr**k))
        rows.append(row)
        names.append(name)

    linear(1, 1, "1")
    linear(1, -1, "eps")
    if n % 2 == 0:
        linear(-1, 1, "eps_r")
        linear(-1, -1, "eps_rs")
    for h in range(1, (n - 1) // 2 + 1):
        row = []
        for cls in classes:
            is_rot, k = rot(cls[0])
            if is_rot:
                row.append(Cyclotomic.zeta_power(e, h * k) + Cyclotomic.zeta_power(e, -h * k))
            else:
                row.append(Cyclotomic.integer(e, 0))
        rows.append(row)
        names.append(f"rho{h}")
    return _table(G, rows, names, e, "builtin")


def _cycle_type(perm_name: str) -> tuple[int, ...]:
    p = [int(c) - 1 for c in perm_name]
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        out.append(length)
    return tuple(sorted(out, reverse=True))


_SYMMETRIC = {
    1: ([(1,)], {"1": [1]}),
    2: ([(1, 1), (2,)], {"1": [1, 1], "s": [1, -1]}),
    3: ([(1, 1, 1), (2, 1), (3,)], {"1": [1, 1, 1], "s": [1, -1, 1], "t": [2, 0, -1]}),
    4: ([(1, 1, 1, 1), (2, 1, 1), (2, 2), (3, 1), (4,)],
        {"1": [1, 1, 1, 1, 1], "s": [1, -1, 1, 1, -1], "std": [3, 1, -1, 0, -1],
         "std_s": [3, -1, -1, 0, 1], "t": [2, 0, 2, -1, 0]}),
}


def _symmetric_table(G: FiniteGroup) -> CharacterTable:
    n = G.family[1]
    if n not in _SYMMETRIC:
        raise CapabilityError(f"built-in character tables cover S_n for n <= 4, not n = {n}")
    types, chars = _SYMMETRIC[n]
    classes = conjugacy_classes(G)
    col = [types.index(_cycle_type(G.names[cls[0]])) for cls in classes]
    rows = [[Cyclotomic.integer(1, vals[c]) for c in col] for vals in chars.values()]
    return _table(G, rows, list(chars), 1, "builtin")


def _product_table(G: FiniteGroup) -> CharacterTable:
    factors = G.family[1]
    tabs = [character_table(F) for F in factors]
    e = math.lcm(*(t.e for t in tabs))
    prod = GroupProduct(factors)
    classes = conjugacy_classes(G)
    cls_of = [t.class_of for t in tabs]
    rows, names = [], []
    for combo in np.ndindex(*[len(t.names) for t in tabs]):
        row = []
        for cls in classes:
            rep = prod.decode(cls[0])
            v = Cyclotomic.integer(e, 1)
            for t, co, i, g in zip(tabs, cls_of, combo, rep):
                v = v * t.value(i, int(co[g])).lift(e)
            row.append(v)
        rows.append(row)
        names.append("(" + ",".join(t.names[i] for t, i in zip(tabs, combo)) + ")")
    return _table(G, rows, names, e, "builtin")


def read_character_table(G: FiniteGroup, path) -> CharacterTable:
    """Read a character table file for ``G``.

    Header ``classes k zeta e``; a line ``sizes s_1 … s_k`` whose entries must
    match the class sizes of ``G`` in canonical class order; then one line per
    irreducible: an optional ``name:`` prefix followed by ``k`` values in the
    syntax ``a0+a1*z^1+…`` with ``z = ζ_e``.
    """
    text = Path(path).read_text() if not hasattr(path, "read_text") else path.read_text()
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    head = lines[0].split() if lines else []
    if len(head) != 4 or head[0] != "classes" or head[2] != "zeta":
        raise ValidationError(f"{path}: header must be 'classes k zeta e'")
    k, e = int(head[1]), int(head[3])
    classes = conjugacy_classes(G)
    if k != len(classes):
        raise ValidationError(f"{path}: declares {k} classes, group has {len(classes)}")
    if len(lines) < 2 or not lines[1].startswith("sizes"):
        raise ValidationError(f"{path}: second line must be 'sizes ...'")
    sizes = [int(s) for s in lines[1].split()[1:]]
    if sizes != [len(c) for c in classes]:
        raise ValidationError(f"{path}: class sizes {sizes} do not match {[len(c) for c in classes]}")
    rows, names = [], []
    for i, ln in enumerate(lines[2:]):
        name, _, rest = ln.rpartition(":")
        toks = rest.split()
        if len(toks) != k:
            raise ValidationError(f"{path}: row {i + 1} has {len(toks)} values, expected {k}")
        rows.append([Cyclotomic.parse(t, e) for t in toks])
        names.append(name.strip() or f"chi{i}")
    return _table(G, rows, names, e, f"file:{path}")


def character_table(G: FiniteGroup, path=None) -> CharacterTable:
    """Built-in table for the supported families, or a validated file import."""
    if path is not None:
        return read_character_table(G, path)
    fam = G.family[0] if G.family else None
    if G.order == 1:
        return _table(G, [[Cyclotomic.integer(1, 1)]], ["1"], 1, "builtin")
    if fam == "cyclic":
        return _cyclic_table(G)
    if fam == "dihedral":
        return _dihedral_table(G)
    if fam == "symmetric":
        return _symmetric_table(G)
    if fam == "quaternion":
        data = resources.files("groupmatroid") / "data" / "q8.chartab"
        return read_character_table(G, data)
    if fam == "product":
        return _product_table(G)
    raise CapabilityError(f"no built-in character table for {G.label}; supply a table file")


# ---------------------------------------------------------------------------
# the spectrum R(H)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectrumEntry:
    irrep: tuple[int, ...]
    dim: int
    triv: int
    mult: int
    name: str

    def to_json(self) -> dict:
        return {"irrep": list(self.irrep), "name": self.name, "dim": self.dim, "mult": self.mult,
                "triv": [i + 1 for i in mask_to_coords(self.triv)]}


@dataclass(frozen=True)
class RSpectrum:
    product: GroupProduct
    entries: tuple[SpectrumEntry, ...]

    def names(self) -> set[str]:
        return {en.name for en in self.entries}

    def total(self) -> int:
        return sum(en.mult * en.dim for en in self.entries)

    def to_json(self) -> dict:
        return {"entries": [en.to_json() for en in self.entries]}


def _class_counts(H: Subgroup, tables) -> np.ndarray:
    cls = [t.class_of for t in tables]
    shape = tuple(len(t.classes) for t in tables)
    idx = np.stack([c[H.elements[:, i]] for i, c in enumerate(cls)], axis=1)
    flat = np.ravel_multi_index(idx.T, shape)
    return np.bincount(flat, minlength=math.prod(shape)).reshape(shape)


def r_spectrum(H: Subgroup, tables: Sequence[CharacterTable] | None = None) -> RSpectrum:
    """Irreducibles of ``G`` in ``C[G/H]`` with their exact multiplicities."""
    factors = H.parent.factors
    if tables is None:
        tables = [character_table(F) for F in factors]
    tables = list(tables)
    e = math.lcm(*(t.e for t in tables))
    counts = _class_counts(H, tables)
    # contract the class axes one coordinate at a time inside Z[x]/(x^e − 1)
    acc = np.zeros(counts.shape + (e,), dtype=np.int64)
    acc[..., 0] = counts
    for t in tables:
        vals = ring_lift(t.values, t.e, e)
        # acc axes: (class_i, remaining classes..., finished irreps..., e)
        new = None
        for s in range(e):
            part = np.tensordot(vals[:, :, s], acc, axes=([1], [0]))
            part = np.roll(part, s, axis=-1)
            new = part if new is None else new + part
        acc = np.moveaxis(new, 0, -2)
    entries = []
    order = H.order
    for irr in np.ndindex(*[len(t.names) for t in tables]):
        raw = reduce_ring(acc[irr], e)
        if any(raw[1:]):
            raise ConsistencyError(f"multiplicity of {irr} is not rational: {raw}")
        s = raw[0] if raw else 0
        if s % order:
            raise ConsistencyError(f"multiplicity of {irr} is {s}/{order}, not an integer")
        mult = s // order
        if mult < 0:
            raise ConsistencyError(f"negative multiplicity for {irr}")
        if mult == 0:
            continue
        dim = math.prod(t.dims[i] for t, i in zip(tables, irr))
        triv = sum(1 << x for x, i in enumerate(irr) if i == 0)
        name = "⊗".join(t.names[i] for t, i in zip(tables, irr))
        entries.append(SpectrumEntry(tuple(int(i) for i in irr), dim, triv, int(mult), name))
    return RSpectrum(H.parent, tuple(entries))


def aggregate_dimension(H: Subgroup, S) -> int:
    """``|G_{E−S}| / |H_{E−S}|``, the total dimension of spectrum entries with ``S ⊆ triv``."""
    S = as_mask(S, H.n)
    rest = H.parent.full_mask & ~S
    gs = H.parent.order_of(rest)
    hs = H.projection_size(rest)
    if gs % hs:
        raise ConsistencyError("projection order does not divide the product order")
    return gs // hs


def _superset_mobius(N: list[int], n: int) -> list[int]:
    f = list(N)
    for i in range(n):
        bit = 1 << i
        for m in range(1 << n):
            if not m & bit:
                f[m] -= f[m | bit]
    return f


def exact_triv_distribution(H: Subgroup) -> dict[int, int]:
    """``S ↦ Σ_{triv ρ = S} mult·dim`` (nonzero values only), from group orders alone."""
    n = H.n
    N = [aggregate_dimension(H, S) for S in range(1 << n)]
    f = _superset_mobius(N, n)
    if any(v < 0 for v in f):
        raise ConsistencyError(f"negative triv-distribution value {min(f)}")
    return {S: v for S, v in enumerate(f) if v}


def triv_distribution_from_spectrum(spec: RSpectrum) -> dict[int, int]:
    out: dict[int, int] = {}
    for en in spec.entries:
        out[en.triv] = out.get(en.triv, 0) + en.mult * en.dim
    return dict(sorted(out.items()))


def _and_convolve_at_empty(f: Mapping[int, int], k: int, full: int) -> int:
    acc = {full: 1}
    items = list(f.items())
    for _ in range(k):
        nxt: dict[int, int] = {}
        for a, fa in acc.items():
            for m, fm in items:
                key = a & m
                nxt[key] = nxt.get(key, 0) + fa * fm
        acc = nxt
    return acc.get(0, 0)


def dual_crapo_rota(H: Subgroup, k: int, source: str = "orders") -> Report:
    """Weighted count of ``k``-tuples of spectrum entries with disjoint triv-sets
    against ``χ_{P*}(b^k)``.

    ``source="orders"`` takes the weights from :func:`exact_triv_distribution`;
    ``source="spectrum"`` takes them from :func:`r_spectrum`.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if source == "orders":
        f = exact_triv_distribution(H)
    elif source == "spectrum":
        f = triv_distribution_from_spectrum(r_spectrum(H))
    else:
        raise ValueError(f"unknown source {source!r}")
    lhs = _and_convolve_at_empty(f, k, H.parent.full_mask)
    rhs = char_poly(a_dual(rank_table(H))).eval_at_power(k)
    return Report("dual-crapo-rota", lhs, rhs, Fraction(lhs) == rhs, k, details={"source": source})


def rank_from_spectrum(spec: RSpectrum, S) -> Fraction:
    """``m`` with ``r_R(S) = log_b m``: total dimension over the dimension with ``S ⊆ triv``."""
    S = as_mask(S, spec.product.n)
    total = spec.total()
    part = sum(en.mult * en.dim for en in spec.entries if en.triv & S == S)
    if part == 0:
        raise ValueError("no entry has S in its triv-set; rank is undefined")
    return Fraction(total, part)


def submodularity_counterexample_rR(G: FiniteGroup | None = None) -> dict:
    """The representation ``(1⊗1⊗ρ) ⊕ (1⊗1⊗1) ⊕ (ρ⊗1⊗1)`` with ``ρ`` a nontrivial
    linear character, whose rank function fails submodularity on {1,2}, {2,3}."""
    G = cyclic(2) if G is None else G
    tab = character_table(G)
    rho = next((i for i, d in enumerate(tab.dims) if d == 1 and i != 0), None)
    if rho is None:
        raise CapabilityError(f"{G.label} has no nontrivial linear character")
    prod = GroupProduct([G, G, G])
    irreps = [(0, 0, rho), (0, 0, 0), (rho, 0, 0)]
    entries = tuple(
        SpectrumEntry(irr, 1, sum(1 << x for x, i in enumerate(irr) if i == 0), 1,
                      "⊗".join(tab.names[i] for i in irr))
        for irr in irreps
    )
    spec = RSpectrum(prod, entries)
    m = {name: rank_from_spectrum(spec, S) for name, S in
         (("12", 0b011), ("23", 0b110), ("123", 0b111), ("2", 0b010))}
    lhs = m["12"] * m["23"]
    rhs = m["123"] * m["2"]
    return {"spectrum": spec, "m": m, "lhs": lhs, "rhs": rhs, "submodular": lhs >= rhs}


# ---------------------------------------------------------------------------
# abelian duality
# ---------------------------------------------------------------------------


def _cyclic_components(G: FiniteGroup) -> tuple[list[int], np.ndarray]:
    """Moduli ``n_i`` and, for each element, its coordinates in ``Π Z/n_i``."""
    fam = G.family[0] if G.family else None
    if fam == "cyclic":
        return [G.order], np.arange(G.order)[:, None]
    if fam == "product" and all(F.family and F.family[0] == "cyclic" for F in G.family[1]):
        mods = [F.order for F in G.family[1]]
        return mods, GroupProduct(G.family[1]).decode(np.arange(G.order))
    raise CapabilityError(f"{G.label}: the canonical dual isomorphism is defined for cyclic groups "
                          "and products of cyclic groups")


def abelian_dual_subgroup(H: Subgroup) -> Subgroup:
    """``H' = {γ ∈ Γ^n : Σ_x ⟨γ_x, h_x⟩ = 0 for all h ∈ H}`` under the canonical pairing
    ``⟨j, g⟩ = jg/m`` on each cyclic component ``Z/m``."""
    factors = H.parent.factors
    if len(set(factors)) != 1:
        raise CapabilityError("abelian duality needs all coordinates over the same group")
    G = factors[0]
    if not G.is_abelian:
        raise CapabilityError("the dual polymatroid has a realization over Γ only when Γ is abelian")
    mods, comp = _cyclic_components(G)
    L = math.lcm(*mods)
    # pairing[a, g] in Z/L
    pairing = np.zeros((G.order, G.order), dtype=np.int64)
    for i, m in enumerate(mods):
        pairing += np.outer(comp[:, i], comp[:, i]) * (L // m)
    pairing %= L
    parent = H.parent
    allg = parent.all_elements()
    gens = np.array(H.generators if H.generators else H.tuples(), dtype=np.int64).reshape(-1, parent.n)
    keep = np.ones(len(allg), dtype=bool)
    for h in gens:
        s = np.zeros(len(allg), dtype=np.int64)
        for x in range(parent.n):
            s += pairing[allg[:, x], h[x]]
        keep &= (s % L) == 0
    return Subgroup(parent, allg[keep], check=True)

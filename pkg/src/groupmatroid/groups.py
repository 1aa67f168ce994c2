"""Finite groups given by multiplication tables, their direct products, and
subgroups of those products.

Group elements are dense integer indices into a Cayley table.  An element of
a product ``G = Γ_1 × ... × Γ_n`` is a length-``n`` tuple of such indices; a
set of them is stored as an ``(m, n)`` integer array with rows in
lexicographic order.

Coordinate subsets are passed either as an ``int`` bitmask (bit ``i`` set
means coordinate ``i`` is in the set) or as an iterable of 0-based
coordinate indices.
"""
from __future__ import annotations

import itertools
import math
import re
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .exceptions import DomainError, ScaleError, ValidationError

CLOSURE_CAP = 10**6
ENUMERATION_CAP = 256
AUTOMORPHISM_CAP = 24
ASSOCIATIVITY_FULL_CHECK = 512

__all__ = [
    "FiniteGroup",
    "GroupProduct",
    "Subgroup",
    "RawSubset",
    "as_mask",
    "mask_to_coords",
    "cyclic",
    "symmetric",
    "dihedral",
    "quaternion8",
    "product_group",
    "construct_group",
    "parse_product_spec",
    "read_cayley_table",
    "direct_product",
    "subgroup_closure",
    "project",
    "kernel_contract",
    "conjugacy_classes",
    "automorphisms",
    "enumerate_subgroups",
    "random_subgroup",
]


def as_mask(S, n: int | None = None) -> int:
    """Normalise a coordinate subset to a bitmask."""
    if isinstance(S, (int, np.integer)):
        mask = int(S)
    else:
        mask = 0
        for i in S:
            mask |= 1 << int(i)
    if mask < 0 or (n is not None and mask >> n):
        raise DomainError(f"subset {S!r} is not contained in a ground set of size {n}")
    return mask


def mask_to_coords(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


# ---------------------------------------------------------------------------
# single groups
# ---------------------------------------------------------------------------


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``mul[g, h]`` is the index of ``g·h``.  The table is validated on
    construction: identity, inverses and (for order up to 512, sampled above)
    associativity.
    """

    def __init__(self, mul, names: Sequence[str] | None = None, family=None,
                 check: bool = True, label: str | None = None):
        mul = np.array(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] < 1:
            raise ValidationError("multiplication table must be a non-empty square array")
        order = mul.shape[0]
        if mul.min() < 0 or mul.max() >= order:
            raise ValidationError("multiplication table has entries outside 0..order-1")
        mul.setflags(write=False)
        self.mul = mul
        self.order = order
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(order))
        if len(self.names) != order:
            raise ValidationError(f"expected {order} element names, got {len(self.names)}")
        self.family = family
        self.label = label or f"table:{order}"
        self.identity = self._find_identity()
        self.inv = self._inverses()
        if check:
            self._check_associative()
        self._name_index = {name: i for i, name in enumerate(self.names)}

    # -- validation ---------------------------------------------------------
    def _find_identity(self) -> int:
        ar = np.arange(self.order)
        for e in range(self.order):
            if np.array_equal(self.mul[e], ar) and np.array_equal(self.mul[:, e], ar):
                return e
        raise ValidationError("table has no two-sided identity element")

    def _inverses(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        for g in range(self.order):
            hits = np.flatnonzero(self.mul[g] == self.identity)
            if len(hits) != 1 or self.mul[hits[0], g] != self.identity:
                raise ValidationError(f"element {g} ({self.names[g]}) has no two-sided inverse")
            inv[g] = hits[0]
        inv.setflags(write=False)
        return inv

    def _check_associative(self, rng=None):
        n = self.order
        mul = self.mul
        if n <= ASSOCIATIVITY_FULL_CHECK:
            rows = range(n)
        else:
            rng = np.random.default_rng(0) if rng is None else rng
            rows = rng.choice(n, size=64, replace=False)
        for a in rows:
            # (a·b)·c versus a·(b·c) for all b, c
            left = mul[mul[a]]            # left[b, c] = (a b) c
            right = mul[a][mul]           # right[b, c] = a (b c)
            bad = np.argwhere(left != right)
            if len(bad):
                b, c = bad[0]
                raise ValidationError(f"table is not associative at ({a}, {b}, {c})")

    # -- basic structure ----------------------------------------------------
    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroup({self.label}, order={self.order})"

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and np.array_equal(self.mul, other.mul)

    def __hash__(self):
        return hash((self.order, self.mul.tobytes()))

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = np.zeros(self.order, dtype=np.int64)
        ar = np.arange(self.order)
        cur = ar.copy()
        k = 1
        while (orders == 0).any():
            hit = (cur == self.identity) & (orders == 0)
            orders[hit] = k
            cur = self.mul[cur, ar]
            k += 1
        return orders

    @cached_property
    def exponent(self) -> int:
        return reduce(math.lcm, (int(o) for o in self.element_orders), 1)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = int(self.inv[g]), -k
        result = self.identity
        for _ in range(k % int(self.element_orders[g])):
            result = int(self.mul[result, g])
        return result

    def element(self, token: str) -> int:
        """Parse an element from its display name (or a family-specific syntax)."""
        token = token.strip()
        if token in self._name_index:
            return self._name_index[token]
        if self.family and self.family[0] == "cyclic":
            try:
                return int(token) % self.order
            except ValueError:
                pass
        if self.family and self.family[0] == "symmetric":
            return _parse_cycles(token, self.family[1], self)
        if re.fullmatch(r"#\d+", token):
            i = int(token[1:])
            if i < self.order:
                return i
        raise ValidationError(f"cannot parse {token!r} as an element of {self.label}")

    def subgroup_generated(self, gens: Iterable[int]) -> np.ndarray:
        """Boolean membership mask of the subgroup generated by ``gens``."""
        return _close_flat(self.mul, self.identity, list(gens))


def _close_flat(mul: np.ndarray, identity: int, gens: list[int],
                start: np.ndarray | None = None) -> np.ndarray:
    mask = np.zeros(mul.shape[0], dtype=bool) if start is None else start.copy()
    mask[identity] = True
    frontier = np.flatnonzero(mask)
    gens = np.asarray(sorted(set(gens)), dtype=np.int64)
    if len(gens) == 0:
        return mask
    while len(frontier):
        prods = np.unique(mul[np.ix_(frontier, gens)].ravel())
        new = prods[~mask[prods]]
        mask[new] = True
        frontier = new
    return mask


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise DomainError("cyclic group needs n >= 1")
    ar = np.arange(n)
    return FiniteGroup((ar[:, None] + ar[None, :]) % n, family=("cyclic", n),
                       label=f"cyclic:{n}")


def symmetric(n: int) -> FiniteGroup:
    """S_n acting on {1..n}; products compose right to left, (στ)(i) = σ(τ(i)).

    Elements are named by one-line notation, e.g. ``"213"`` for the
    transposition (12).  Cycle notation such as ``"(12)"`` is also accepted
    by :meth:`FiniteGroup.element`.
    """
    if not 1 <= n <= 6:
        raise DomainError("symmetric groups are supported for 1 <= n <= 6")
    perms = list(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(s[t[i]] for i in range(n))] for t in perms] for s in perms]
    names = ["".join(str(x + 1) for x in p) for p in perms]
    return FiniteGroup(mul, names=names, family=("symmetric", n), label=f"symmetric:{n}")


def _parse_cycles(token: str, n: int, G: FiniteGroup) -> int:
    if token in ("e", "()", "1", "id"):
        return G.identity
    if not re.fullmatch(r"(\(\d+\))+", token.replace(" ", "")):
        raise ValidationError(f"cannot parse {token!r} as a permutation of 1..{n}")
    image = list(range(n))
    # cycles compose right to left like the group product
    for cyc in reversed(re.findall(r"\((\d+)\)", token.replace(" ", ""))):
        pts = [int(c) - 1 for c in cyc]
        if any(p >= n for p in pts) or len(set(pts)) != len(pts):
            raise ValidationError(f"bad cycle ({cyc}) for S_{n}")
        step = list(range(n))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            step[a] = b
        image = [step[image[i]] for i in range(n)]
    return G.element("".join(str(x + 1) for x in image))


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n: indices 0..n-1 are r^k, n..2n-1 are s·r^k."""
    if n < 2:
        raise DomainError("dihedral group needs n >= 2")

    # s r^a · s r^b = r^(b-a);  r^a · s r^b = s r^(b-a);  s r^a · r^b = s r^(a+b)
    def fixed(a, b):
        fa, ka = divmod(a, n)
        fb, kb = divmod(b, n)
        if fa == 0 and fb == 0:
            return (ka + kb) % n
        if fa == 0 and fb == 1:
            return n + (kb - ka) % n
        if fa == 1 and fb == 0:
            return n + (ka + kb) % n
        return (kb - ka) % n

    table = [[fixed(a, b) for b in range(2 * n)] for a in range(2 * n)]
    names = ["e" if k == 0 else ("r" if k == 1 else f"r^{k}") for k in range(n)]
    names += ["s" if k == 0 else ("sr" if k == 1 else f"sr^{k}") for k in range(n)]
    return FiniteGroup(table, names=names, family=("dihedral", n), label=f"dihedral:{n}")


def quaternion8() -> FiniteGroup:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    # unit products: (sign, unit) with units 0=1, 1=i, 2=j, 3=k
    unit = {(0, u): (1, u) for u in range(4)}
    unit.update({(u, 0): (1, u) for u in range(4)})
    for u in (1, 2, 3):
        unit[(u, u)] = (-1, 0)
    for a, b, c in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
        unit[(a, b)] = (1, c)
        unit[(b, a)] = (-1, c)

    def idx(sign, u):
        return 2 * u + (0 if sign > 0 else 1)

    table = []
    for a in range(8):
        row = []
        for b in range(8):
            sa = 1 if a % 2 == 0 else -1
            sb = 1 if b % 2 == 0 else -1
            s, u = unit[(a // 2, b // 2)]
            row.append(idx(sa * sb * s, u))
        table.append(row)
    return FiniteGroup(table, names=names, family=("quaternion", 8), label="quaternion:8")


def product_group(groups: Sequence[FiniteGroup]) -> FiniteGroup:
    """Direct product flattened into a single Cayley table (mixed radix, first factor slowest)."""
    groups = tuple(groups)
    if not groups:
        raise DomainError("product of no groups")
    prod = GroupProduct(groups)
    if prod.order > 4096:
        raise ScaleError("product order", prod.order, 4096)
    elems = prod.all_elements()
    codes = prod.encode(prod.mul_arrays(elems[:, None, :].repeat(len(elems), 1).reshape(-1, prod.n),
                                        np.tile(elems, (len(elems), 1))))
    table = codes.reshape(len(elems), len(elems))
    names = ["(" + ",".join(g.names[c] for g, c in zip(groups, row)) + ")" for row in elems]
    label = "x".join(g.label for g in groups)
    return FiniteGroup(table, names=names, family=("product", groups), label=label, check=False)


def read_cayley_table(path) -> FiniteGroup:
    """Read a Cayley table file.

    Format: a line ``order N``; ``N`` lines of ``N`` whitespace-separated
    indices (row ``g``, column ``h`` holds ``g·h``); optionally a line
    ``names`` followed by ``N`` whitespace-separated names.
    """
    text = Path(path).read_text()
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("order"):
        raise ValidationError(f"{path}: first line must be 'order N'")
    try:
        n = int(lines[0].split()[1])
    except (IndexError, ValueError):
        raise ValidationError(f"{path}: malformed order line {lines[0]!r}") from None
    rows = lines[1:1 + n]
    if len(rows) != n:
        raise ValidationError(f"{path}: expected {n} table rows, found {len(rows)}")
    try:
        table = [[int(tok) for tok in row.split()] for row in rows]
    except ValueError as exc:
        raise ValidationError(f"{path}: non-integer table entry ({exc})") from None
    if any(len(r) != n for r in table):
        raise ValidationError(f"{path}: every table row must have {n} entries")
    names = None
    rest = lines[1 + n:]
    if rest:
        if rest[0] != "names":
            raise ValidationError(f"{path}: unexpected line {rest[0]!r}")
        names = " ".join(rest[1:]).split()
    return FiniteGroup(table, names=names, family=("table", str(path)), label=f"table:{path}")


def construct_group(spec: str) -> FiniteGroup:
    """Build a group from a spec string such as ``"cyclic:6"`` or ``"symmetric:3"``.

    Supported kinds: ``cyclic:n``, ``symmetric:n``, ``dihedral:n``,
    ``quaternion:8``, ``abelian:2x2`` (product of cyclic groups) and
    ``table:<path>``.
    """
    kind, _, arg = spec.strip().partition(":")
    kind = kind.lower()
    try:
        if kind == "cyclic":
            return cyclic(int(arg))
        if kind == "symmetric":
            return symmetric(int(arg))
        if kind == "dihedral":
            return dihedral(int(arg))
        if kind == "quaternion":
            if arg not in ("", "8"):
                raise DomainError("only the quaternion group of order 8 is built in")
            return quaternion8()
        if kind == "abelian":
            return product_group([cyclic(int(m)) for m in arg.split("x")])
        if kind == "table":
            return read_cayley_table(arg)
    except ValueError as exc:
        if isinstance(exc, (ValidationError, DomainError)):
            raise
        raise ValidationError(f"bad group spec {spec!r}") from None
    raise ValidationError(f"unknown group kind in spec {spec!r}")


def parse_product_spec(spec: str) -> "GroupProduct":
    """``"symmetric:3,symmetric:3"`` -> GroupProduct."""
    return GroupProduct([construct_group(s) for s in spec.split(",") if s.strip()])


# ---------------------------------------------------------------------------
# products and subgroups
# ---------------------------------------------------------------------------


class GroupProduct:
    """The product ``Γ_1 × ... × Γ_n`` with coordinatewise operation."""

    def __init__(self, factors: Sequence[FiniteGroup]):
        factors = tuple(factors)
        if not factors:
            raise DomainError("a product needs at least one factor")
        self.factors = factors
        self.n = len(factors)
        self.orders = tuple(g.order for g in factors)
        self.order = math.prod(self.orders)
        self.identity = tuple(g.identity for g in factors)
        # mixed radix, first coordinate most significant (matches lexicographic order)
        radix = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            radix[i] = radix[i + 1] * self.orders[i + 1]
        self._radix = np.array(radix, dtype=np.int64) if self.order < 2**62 else None
        self._radix_py = radix

    def __repr__(self):
        return "GroupProduct(" + " x ".join(g.label for g in self.factors) + ")"

    def __eq__(self, other):
        return isinstance(other, GroupProduct) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def sub(self, S) -> "GroupProduct | None":
        """The product over the coordinates in ``S`` (``None`` for the empty set)."""
        coords = mask_to_coords(as_mask(S, self.n))
        if not coords:
            return None
        return GroupProduct([self.factors[i] for i in coords])

    def order_of(self, S) -> int:
        return math.prod(self.orders[i] for i in mask_to_coords(as_mask(S, self.n)))

    # -- element arithmetic --------------------------------------------------
    def mul(self, a, b) -> tuple:
        return tuple(int(g.mul[x, y]) for g, x, y in zip(self.factors, a, b))

    def inv(self, a) -> tuple:
        return tuple(int(g.inv[x]) for g, x in zip(self.factors, a))

    def mul_arrays(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        A = np.asarray(A)
        B = np.asarray(B)
        A, B = np.broadcast_arrays(A, B)
        out = np.empty(A.shape, dtype=np.int64)
        for i, g in enumerate(self.factors):
            out[..., i] = g.mul[A[..., i], B[..., i]]
        return out

    def inv_arrays(self, A: np.ndarray) -> np.ndarray:
        A = np.asarray(A)
        out = np.empty(A.shape, dtype=np.int64)
        for i, g in enumerate(self.factors):
            out[..., i] = g.inv[A[..., i]]
        return out

    def encode(self, A: np.ndarray) -> np.ndarray:
        A = np.asarray(A, dtype=np.int64)
        if self._radix is None:
            raise ScaleError("product order", self.order, 2**62)
        return A @ self._radix

    def decode(self, codes) -> np.ndarray:
        codes = np.asarray(codes, dtype=np.int64)
        out = np.empty(codes.shape + (self.n,), dtype=np.int64)
        rem = codes.copy()
        for i in range(self.n):
            out[..., i], rem = np.divmod(rem, self._radix[i])
        return out

    def all_elements(self) -> np.ndarray:
        if self.order > CLOSURE_CAP:
            raise ScaleError("product order", self.order, CLOSURE_CAP)
        return self.decode(np.arange(self.order))

    def check_element(self, t) -> tuple:
        t = tuple(int(x) for x in t)
        if len(t) != self.n or any(not 0 <= x < o for x, o in zip(t, self.orders)):
            raise DomainError(f"{t} is not an element of {self!r}")
        return t

    def parse_element(self, text: str) -> tuple:
        """Parse ``"a|b|c"`` with each coordinate in its factor's element syntax."""
        parts = text.split("|")
        if len(parts) != self.n:
            raise ValidationError(f"{text!r}: expected {self.n} '|'-separated coordinates")
        return tuple(g.element(p) for g, p in zip(self.factors, parts))

    def format_element(self, t) -> str:
        return "|".join(g.names[x] for g, x in zip(self.factors, t))

    def as_finite_group(self, cap: int = 4096) -> FiniteGroup:
        if self.order > cap:
            raise ScaleError("product order", self.order, cap)
        return product_group(self.factors)


def direct_product(factors: Sequence[FiniteGroup]) -> GroupProduct:
    return GroupProduct(factors)


class _ElementSet:
    """Shared behaviour of :class:`Subgroup` and :class:`RawSubset`."""

    parent: GroupProduct
    elements: np.ndarray

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return (tuple(int(x) for x in row) for row in self.elements)

    def __contains__(self, t):
        code = int(self.parent.encode(np.asarray(t)))
        i = np.searchsorted(self.codes, code)
        return bool(i < len(self.codes) and self.codes[i] == code)

    @cached_property
    def codes(self) -> np.ndarray:
        c = self.parent.encode(self.elements)
        c.setflags(write=False)
        return c

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n(self) -> int:
        return self.parent.n

    def tuples(self) -> list[tuple]:
        return list(self)

    def projection_size(self, S) -> int:
        """``|π_S(X)|``; 1 for the empty set."""
        coords = mask_to_coords(as_mask(S, self.n))
        if not coords:
            return 1
        sub = self.elements[:, coords]
        if len(coords) == self.n:
            return len(np.unique(self.codes))
        radix = np.cumprod([1] + [self.parent.orders[i] for i in coords[:0:-1]])[::-1]
        return len(np.unique(sub @ radix))


class Subgroup(_ElementSet):
    """A subgroup of a :class:`GroupProduct`, stored as its full sorted element list."""

    def __init__(self, parent: GroupProduct, elements, generators=None, check: bool = True):
        self.parent = parent
        arr = np.asarray(elements, dtype=np.int64).reshape(-1, parent.n)
        codes = parent.encode(arr)
        order = np.argsort(codes, kind="stable")
        arr = arr[order]
        if len(np.unique(codes)) != len(codes):
            raise ValidationError("subgroup element list has duplicates")
        arr.setflags(write=False)
        self.elements = arr
        self.generators = None if generators is None else tuple(tuple(int(x) for x in g) for g in generators)
        if check:
            self.check()

    def __repr__(self):
        return f"Subgroup(order={self.order}, in {self.parent!r})"

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.parent == other.parent
                and np.array_equal(self.codes, other.codes))

    def __hash__(self):
        return hash((self.parent, self.codes.tobytes()))

    def check(self):
        P = self.parent
        if self.parent.identity not in self:
            raise ValidationError("subgroup does not contain the identity")
        if P.order % self.order:
            raise ValidationError(f"|H| = {self.order} does not divide |G| = {P.order}")
        # closure under products a·b^{-1} (tested against every element for small H)
        if self.order <= 2048:
            inv = P.inv_arrays(self.elements)
            prods = P.mul_arrays(self.elements[:, None, :], inv[None, :, :]).reshape(-1, P.n)
            if not np.isin(P.encode(prods), self.codes).all():
                raise ValidationError("element list is not closed under a·b^-1")
        else:
            gens = self.elements[:: max(1, self.order // 64)]
            prods = P.mul_arrays(self.elements[:, None, :], P.inv_arrays(gens)[None]).reshape(-1, P.n)
            if not np.isin(P.encode(prods), self.codes).all():
                raise ValidationError("element list is not closed under products")

    def is_normal(self) -> bool:
        P = self.parent
        gens = P.all_elements() if P.order <= 4096 else None
        if gens is None:
            raise ScaleError("product order", P.order, 4096)
        conj = P.mul_arrays(P.mul_arrays(gens[:, None, :], self.elements[None]), P.inv_arrays(gens)[:, None, :])
        return bool(np.isin(P.encode(conj.reshape(-1, P.n)), self.codes).all())


class RawSubset(_ElementSet):
    """A subset of a product with no closure requirement."""

    def __init__(self, parent: GroupProduct, elements):
        self.parent = parent
        arr = np.asarray([parent.check_element(t) for t in elements], dtype=np.int64).reshape(-1, parent.n)
        if len(arr) == 0:
            raise ValidationError("a raw subset must be non-empty")
        codes = parent.encode(arr)
        if len(np.unique(codes)) != len(codes):
            raise ValidationError("raw subset elements must be distinct")
        order = np.argsort(codes, kind="stable")
        self.elements = arr[order]
        self.elements.setflags(write=False)

    def __repr__(self):
        return f"RawSubset(size={len(self)}, in {self.parent!r})"


def subgroup_closure(parent: GroupProduct, generators, cap: int = CLOSURE_CAP) -> Subgroup:
    """Smallest subgroup of ``parent`` containing the generator tuples (BFS closure)."""
    gens = [parent.check_element(g) for g in generators]
    ident = np.array([parent.identity], dtype=np.int64)
    known = parent.encode(ident)
    frontier = ident
    gen_arr = np.array(gens, dtype=np.int64).reshape(-1, parent.n)
    while len(frontier) and len(gen_arr):
        prods = parent.mul_arrays(frontier[:, None, :], gen_arr[None, :, :]).reshape(-1, parent.n)
        codes = np.unique(parent.encode(prods))
        new = codes[~np.isin(codes, known, assume_unique=True)]
        if len(new) == 0:
            break
        known = np.union1d(known, new)
        if len(known) > cap:
            raise ScaleError("subgroup closure size", len(known), cap)
        frontier = parent.decode(new)
    return Subgroup(parent, parent.decode(known), generators=gens, check=False)


def project(H: _ElementSet, S) -> Subgroup:
    """``π_S(H)`` as a subgroup of the product over ``S``.

    The empty projection is the trivial group; it is returned as the trivial
    subgroup of a one-coordinate product ``C_1`` so that callers always get a
    :class:`Subgroup`.
    """
    mask = as_mask(S, H.n)
    coords = mask_to_coords(mask)
    if not coords:
        return Subgroup(GroupProduct([cyclic(1)]), [[0]], check=False)
    sub = H.parent.sub(mask)
    codes = np.unique(sub.encode(H.elements[:, coords]))
    return Subgroup(sub, sub.decode(codes), check=False)


def kernel_contract(H: Subgroup, S) -> Subgroup:
    """``π_{E-S}(ker π_S)`` -- realizes the contraction ``P(H)/S``."""
    mask = as_mask(S, H.n)
    if mask == H.parent.full_mask:
        raise DomainError("cannot contract the whole ground set")
    coords = mask_to_coords(mask)
    ident = np.array(H.parent.identity)
    keep = np.all(H.elements[:, coords] == ident[list(coords)], axis=1) if coords else np.ones(len(H), bool)
    rest = mask_to_coords(H.parent.full_mask & ~mask)
    sub = H.parent.sub(H.parent.full_mask & ~mask)
    kernel = H.elements[keep][:, rest]
    codes = np.unique(sub.encode(kernel))
    return Subgroup(sub, sub.decode(codes), check=False)


# ---------------------------------------------------------------------------
# structure of a single group
# ---------------------------------------------------------------------------


def conjugacy_classes(G: FiniteGroup) -> list[tuple[int, ...]]:
    """Conjugacy classes as sorted index tuples, ordered by their least element."""
    seen = np.zeros(G.order, dtype=bool)
    ar = np.arange(G.order)
    classes = []
    for g in range(G.order):
        if seen[g]:
            continue
        cls = np.unique(G.mul[G.mul[ar, g], G.inv[ar]])
        seen[cls] = True
        classes.append(tuple(int(c) for c in cls))
    return classes


def _generating_set(G: FiniteGroup) -> list[int]:
    gens: list[int] = []
    mask = G.subgroup_generated([])
    for g in sorted(range(G.order), key=lambda x: (-int(G.element_orders[x]), x)):
        if not mask[g]:
            gens.append(g)
            mask = G.subgroup_generated(gens)
            if mask.all():
                break
    return gens


def automorphisms(G: FiniteGroup, cap: int = AUTOMORPHISM_CAP) -> list[tuple[int, ...]]:
    """All automorphisms of ``G`` as image tuples ``θ[g]``, identity map first.

    Generator images are chosen among elements of the same order and each
    partial assignment is extended to the subgroup it generates, pruning on
    the first inconsistency.
    """
    if G.order > cap:
        raise ScaleError("group order", G.order, cap)
    gens = _generating_set(G)
    orders = G.element_orders
    candidates = [[h for h in range(G.order) if orders[h] == orders[g]] for g in gens]
    found = []

    def extend(images: list[int]):
        # BFS over words in the assigned generators
        phi = {G.identity: G.identity}
        frontier = [G.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s, t in zip(gens, images):
                    y = int(G.mul[x, s])
                    fy = int(G.mul[phi[x], t])
                    if y in phi:
                        if phi[y] != fy:
                            return None
                    else:
                        phi[y] = fy
                        nxt.append(y)
            frontier = nxt
        return phi

    def search(images):
        phi = extend(images)
        if phi is None:
            return
        if len(images) == len(gens):
            if len(set(phi.values())) == G.order:
                found.append(tuple(phi[g] for g in range(G.order)))
            return
        for h in candidates[len(images)]:
            search(images + [h])

    search([])
    found.sort(key=lambda t: t != tuple(range(G.order)))
    return found


def enumerate_subgroups(G, cap: int = ENUMERATION_CAP, order: int | None = None) -> list[Subgroup]:
    """Every subgroup of ``G`` (a FiniteGroup or GroupProduct), deduplicated.

    Starts from the cyclic subgroups and closes under joins with cyclic
    subgroups until no new subgroup appears.  ``order`` optionally filters
    the returned list (the lattice is still built in full).
    """
    prod = G if isinstance(G, GroupProduct) else GroupProduct([G])
    if prod.order > cap:
        raise ScaleError("group order", prod.order, cap)
    flat = prod.as_finite_group(cap=max(cap, 4096))
    mul, e = flat.mul, flat.identity
    cyc = {}
    for g in range(flat.order):
        m = _close_flat(mul, e, [g])
        cyc.setdefault(m.tobytes(), (g, m))
    cyclic_list = list(cyc.values())
    subs = {}
    queue = []
    for key, (g, m) in cyc.items():
        subs[key] = ([g] if g != e else [], m)
        queue.append(key)
    while queue:
        key = queue.pop()
        gens, m = subs[key]
        for g, cm in cyclic_list:
            if m[g]:
                continue
            j = _close_flat(mul, e, gens + [g], start=m)
            k = j.tobytes()
            if k not in subs:
                subs[k] = (gens + [g], j)
                queue.append(k)
    elements = prod.all_elements()
    out = []
    for gens, m in subs.values():
        if order is not None and int(m.sum()) != order:
            continue
        out.append(Subgroup(prod, elements[m], generators=[tuple(elements[g]) for g in gens], check=False))
    out.sort(key=lambda H: (H.order, H.codes.tobytes()))
    return out


def random_subgroup(rng: np.random.Generator, parent: GroupProduct, max_gens: int = 3) -> Subgroup:
    """Subgroup generated by 0..max_gens uniformly random elements."""
    k = int(rng.integers(0, max_gens + 1))
    gens = [tuple(int(rng.integers(0, o)) for o in parent.orders) for _ in range(k)]
    return subgroup_closure(parent, gens)

"""Rank tables of polymatroids ``P(H, b)`` and the objects derived from them.

A rank table stores, for every subset ``S`` of the ground set, the positive
rational ``card(S)`` with ``r(S) = log_b card(S)``.  For a subgroup ``H`` of
a product, ``card(S) = |H_S|``.  Every identity used in this package is then
exact rational arithmetic once the variable is specialised to ``t = b**k``.

Subsets are bitmasks; mask ``m`` indexes ``card[m]``.  Iterating masks in
increasing integer order is colex order.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exceptions import CapabilityError, DomainError, ScaleError, ValidationError
from .groups import (
    FiniteGroup,
    GroupProduct,
    RawSubset,
    Subgroup,
    _popcount,
    as_mask,
    automorphisms,
    enumerate_subgroups,
    mask_to_coords,
)

MAX_GROUND_SET = 20
MAX_ISOMORPHISM_N = 8

__all__ = [
    "RankTable",
    "LogPolynomial",
    "TuttePoly",
    "AxiomReport",
    "rank_table",
    "rank_table_from_subset",
    "default_base",
    "check_axioms",
    "flats",
    "closure",
    "mobius",
    "char_poly",
    "char_poly_mobius",
    "eval_at_power",
    "delete",
    "contract",
    "a_dual",
    "group_orders_alpha",
    "tutte",
    "tutte_recursive_rhs",
    "tutte_eval_exact",
    "tutte_eval_float",
    "gamma_possible",
    "isomorphism",
    "equivalent_realizations",
    "representability_search",
    "uniform_matroid",
    "u23_kernel_search",
    "nonabelian_u23_contradiction",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return Fraction(x)
    raise DomainError(f"expected an exact rational, got {x!r}")


def _fmt_subset(mask: int) -> str:
    return "{" + ",".join(str(i + 1) for i in mask_to_coords(mask)) + "}"


def _log_exponent(m: Fraction, b: Fraction) -> Fraction | None:
    """Rational ``e`` with ``b**e == m`` when ``e`` is an integer, else ``None``."""
    if m == 1:
        return Fraction(0)
    if b == 1 or m <= 0:
        return None
    e = round(math.log(m) / math.log(b))
    if e != 0 and b**e == m:
        return Fraction(e)
    return None


# ---------------------------------------------------------------------------
# rank tables
# ---------------------------------------------------------------------------


class RankTable:
    """``card[mask]`` for all ``2**n`` subsets, plus the base ``b``.

    ``b_kind`` is ``"group_order"`` when ``b`` is the order of the factor
    group and ``"rational"`` otherwise.  ``validated`` is false for tables
    built from raw subsets, which carry no axiom guarantee.
    """

    def __init__(self, n: int, card: Sequence, base=2, b_kind: str = "rational",
                 provenance=None, validated: bool = True):
        if n < 0:
            raise DomainError("ground set size must be nonnegative")
        if n > MAX_GROUND_SET:
            raise ScaleError("ground set size", n, MAX_GROUND_SET)
        card = tuple(_frac(c) for c in card)
        if len(card) != 1 << n:
            raise ValidationError(f"expected {1 << n} card entries, got {len(card)}")
        if any(c <= 0 for c in card):
            raise ValidationError("card values must be positive")
        base = _frac(base)
        if base <= 0 or base == 1:
            raise DomainError("the base b must be positive and different from 1")
        if b_kind not in ("group_order", "rational"):
            raise ValidationError(f"unknown base kind {b_kind!r}")
        self.n = n
        self.card = card
        self.base = base
        self.b_kind = b_kind
        self.provenance = provenance
        self.validated = validated

    # -- basic access -------------------------------------------------------
    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def __getitem__(self, S) -> Fraction:
        return self.card[as_mask(S, self.n)]

    def rank(self, S) -> float:
        return math.log(self[S]) / math.log(self.base)

    def __eq__(self, other):
        return (isinstance(other, RankTable) and self.n == other.n and self.card == other.card
                and self.base == other.base)

    def __hash__(self):
        return hash((self.n, self.card, self.base))

    def __repr__(self):
        body = ", ".join(f"{_fmt_subset(m)}:{c}" for m, c in enumerate(self.card))
        return f"RankTable(n={self.n}, b={self.base}, card={{{body}}})"

    def same_card(self, other: "RankTable") -> bool:
        return self.n == other.n and self.card == other.card

    @cached_property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.card)

    def loops(self) -> list[int]:
        return [i for i in range(self.n) if self.card[1 << i] == 1]

    def coloops(self, A: Sequence | None = None) -> list[int]:
        """Elements ``x`` with ``card(E) = card(E−x)·A_x`` and ``A_x > 1``.

        ``A`` defaults to the subcardinal capacities ``b`` (matroid case),
        or the factor orders for subgroup-sourced tables.
        """
        A = self._default_alpha() if A is None else [_frac(a) for a in A]
        E = self.full
        return [i for i in range(self.n)
                if A[i] > 1 and self.card[E] == self.card[E & ~(1 << i)] * A[i]]

    def _default_alpha(self) -> list[Fraction]:
        if isinstance(self.provenance, (Subgroup, RawSubset)):
            return [Fraction(o) for o in self.provenance.parent.orders]
        return [self.base] * self.n

    # -- subset re-indexing ---------------------------------------------------
    def _embed(self, coords: Sequence[int]) -> np.ndarray:
        """Original masks of all subsets of ``coords`` (sub-mask order)."""
        k = len(coords)
        sub = np.arange(1 << k, dtype=np.int64)
        out = np.zeros(1 << k, dtype=np.int64)
        for j, c in enumerate(coords):
            out |= ((sub >> j) & 1) << c
        return out

    # -- serialization --------------------------------------------------------
    def to_json(self) -> dict:
        value = str(self.base) if self.base.denominator != 1 else int(self.base)
        return {
            "n": self.n,
            "b": {"kind": self.b_kind, "value": value},
            "card": {str(m): str(c) for m, c in enumerate(self.card)},
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "RankTable":
        try:
            n = int(data["n"])
            b = data["b"]
            card_map = data["card"]
            card = [Fraction(str(card_map[str(m)])) for m in range(1 << n)]
            return cls(n, card, base=Fraction(str(b["value"])), b_kind=b["kind"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ValidationError(f"malformed rank table JSON ({exc})") from None


def default_base(parent: GroupProduct) -> tuple[Fraction, str]:
    """``b = |Γ|`` when all factors have the same order; otherwise the lcm of the orders."""
    orders = set(parent.orders)
    if len(orders) == 1:
        return Fraction(parent.orders[0]), "group_order"
    return Fraction(math.lcm(*parent.orders)), "group_order"


def _resolve_base(parent: GroupProduct, b) -> tuple[Fraction, str]:
    if b is None or b == "group":
        return default_base(parent)
    return _frac(b), "rational"


def _projection_cards(X, n: int) -> list[int]:
    if n > MAX_GROUND_SET:
        raise ScaleError("ground set size", n, MAX_GROUND_SET)
    return [X.projection_size(m) for m in range(1 << n)]


def rank_table(H: Subgroup, b=None) -> RankTable:
    """``card(S) = |π_S(H)|`` for all subsets."""
    base, kind = _resolve_base(H.parent, b)
    return RankTable(H.n, _projection_cards(H, H.n), base=base, b_kind=kind, provenance=H)


def rank_table_from_subset(L: RawSubset, b=None) -> RankTable:
    """Same counting for an arbitrary subset; flagged as unvalidated."""
    base, kind = _resolve_base(L.parent, b)
    return RankTable(L.n, _projection_cards(L, L.n), base=base, b_kind=kind, provenance=L,
                     validated=False)


def uniform_matroid(r: int, n: int, b=2) -> RankTable:
    """``U_{r,n}`` with ``card(S) = b**min(r, |S|)``."""
    b = _frac(b)
    return RankTable(n, [b ** min(r, _popcount(m)) for m in range(1 << n)], base=b)


# ---------------------------------------------------------------------------
# axioms
# ---------------------------------------------------------------------------


@dataclass
class AxiomReport:
    P1: bool
    P2: bool
    P3: bool
    P3_prime: bool
    subcardinal: bool
    integer_valued: bool
    counterexamples: dict = field(default_factory=dict)
    p3_violations: list = field(default_factory=list)

    @property
    def polymatroid(self) -> bool:
        return self.P1 and self.P2 and self.P3

    @property
    def matroid(self) -> bool:
        return self.polymatroid and self.subcardinal and self.integer_valued

    def to_json(self) -> dict:
        return {
            "P1": self.P1, "P2": self.P2, "P3": self.P3, "P3_prime": self.P3_prime,
            "subcardinal": self.subcardinal, "integer_valued": self.integer_valued,
            "matroid": self.matroid,
            "counterexamples": {k: [sorted(i + 1 for i in mask_to_coords(m)) for m in v]
                                for k, v in self.counterexamples.items()},
        }


def _scaled_numerators(P: RankTable) -> list[int]:
    den = math.lcm(*(c.denominator for c in P.card))
    return [int(c * den) for c in P.card]


def check_axioms(P: RankTable) -> AxiomReport:
    """Check P1, P2, P3 and the diminishing-returns form P3' exactly.

    Each failed axiom records its first counterexample in colex order of
    ``(S, T)``; ``p3_violations`` lists every unordered incomparable pair
    violating submodularity.
    """
    n, full = P.n, P.full
    num = _scaled_numerators(P)
    cex: dict[str, tuple] = {}

    P1 = P.card[0] == 1
    if not P1:
        cex["P1"] = (0,)

    P2 = True
    for S in range(1 << n):
        for i in range(n):
            if not S >> i & 1 and num[S | 1 << i] < num[S]:
                P2 = False
                cex["P2"] = (S, S | 1 << i)
                break
        if not P2:
            break

    violations = []
    for T in range(1 << n):
        for S in range(T):
            if S & T in (S, T):
                continue
            if num[S] * num[T] < num[S | T] * num[S & T]:
                violations.append((S, T))
    violations.sort()
    P3 = not violations
    if violations:
        cex["P3"] = violations[0]

    P3p = True
    for T in range(1 << n):
        rest = full & ~T
        sub = T
        while True:
            S = sub
            for x in mask_to_coords(rest):
                bit = 1 << x
                # card(S∪x)/card(S) >= card(T∪x)/card(T)
                if num[S | bit] * num[T] < num[T | bit] * num[S]:
                    if P3p:
                        cex["P3'"] = (S, T, bit)
                    P3p = False
            if sub == 0:
                break
            sub = (sub - 1) & T

    subcardinal = all(P.card[m] <= P.base ** _popcount(m) for m in range(1 << n))
    if not subcardinal:
        cex["subcardinal"] = (next(m for m in range(1 << n) if P.card[m] > P.base ** _popcount(m)),)
    integer_valued = all(_log_exponent(c, P.base) is not None for c in P.card)
    return AxiomReport(P1, P2, P3, P3p, subcardinal, integer_valued, cex, violations)


# ---------------------------------------------------------------------------
# flats and Möbius function
# ---------------------------------------------------------------------------


def closure(P: RankTable, S) -> int:
    S = as_mask(S, P.n)
    c = P.card[S]
    out = S
    for x in range(P.n):
        if P.card[S | 1 << x] == c:
            out |= 1 << x
    return out


def flats(P: RankTable) -> list[int]:
    """Subsets ``S`` with ``card(S ∪ x) > card(S)`` for every ``x ∉ S``, colex order."""
    return [S for S in range(1 << P.n) if closure(P, S) == S]


def mobius(P: RankTable) -> dict[tuple[int, int], int]:
    """``μ(F, F')`` for all pairs of flats ``F ⊆ F'``."""
    F = flats(P)
    mu: dict[tuple[int, int], int] = {}
    for lo in F:
        above = [G for G in F if G & lo == lo]
        for G in above:  # colex order is a linear extension of inclusion
            if G == lo:
                mu[(lo, G)] = 1
            else:
                mu[(lo, G)] = -sum(mu[(lo, K)] for K in above if K != G and K & G == K and (lo, K) in mu)
    return mu


# ---------------------------------------------------------------------------
# log-polynomials
# ---------------------------------------------------------------------------


class LogPolynomial:
    """``Σ c · t**(log_b m)`` with integer ``c`` and positive rational ``m``."""

    def __init__(self, terms: Mapping | Iterable = (), base=2):
        acc: dict[Fraction, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((m, c) for c, m in terms)
        for m, c in items:
            m = _frac(m)
            if m <= 0:
                raise DomainError("log-polynomial exponents need positive m")
            acc[m] = acc.get(m, 0) + int(c)
        self.terms = {m: c for m, c in sorted(acc.items(), reverse=True) if c}
        self.base = _frac(base)

    @classmethod
    def zero(cls, base=2) -> "LogPolynomial":
        return cls({}, base)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, LogPolynomial) and self.terms == other.terms and self.base == other.base

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.base))

    def eval_at_power(self, k: int) -> Fraction:
        return sum((c * Fraction(m) ** int(k) for m, c in self.terms.items()), Fraction(0))

    def eval_float(self, t: float) -> float:
        lb = math.log(self.base)
        return float(sum(c * t ** (math.log(m) / lb) for m, c in self.terms.items()))

    def degree_terms(self) -> list[tuple[int, Fraction]]:
        return [(c, m) for m, c in self.terms.items()]

    def to_json(self) -> list:
        return [[c, m.numerator, m.denominator] for m, c in self.terms.items()]

    @classmethod
    def from_json(cls, data, base=2) -> "LogPolynomial":
        return cls([(c, Fraction(num, den)) for c, num, den in data], base)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        b = self.base
        bs = str(b)
        for m, c in self.terms.items():
            e = _log_exponent(m, b)
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "t"
            elif e is not None:
                mono = f"t^{e}"
            else:
                mono = f"t^(log_{bs} {m})"
            mag = abs(c)
            coef = "" if (mag == 1 and mono) else str(mag)
            body = coef + ("*" if coef and mono else "") + mono
            parts.append(("-" if c < 0 else "+", body))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return s

    __repr__ = __str__


def eval_at_power(f: LogPolynomial, k: int) -> Fraction:
    return f.eval_at_power(k)


def char_poly(P: RankTable) -> LogPolynomial:
    """``Σ_S (−1)^{|S|} t^{r(E) − r(S)}``; the zero polynomial when ``P`` has a loop."""
    if P.loops():
        return LogPolynomial.zero(P.base)
    cE = P.card[P.full]
    return LogPolynomial({}, P.base) if P.n < 0 else LogPolynomial(
        [((-1) ** _popcount(S), cE / P.card[S]) for S in range(1 << P.n)], P.base)


def char_poly_mobius(P: RankTable) -> LogPolynomial:
    """``Σ_F μ(∅, F) t^{r(E) − r(F)}`` over flats; zero when ``∅`` is not a flat."""
    if closure(P, 0) != 0:
        return LogPolynomial.zero(P.base)
    mu = mobius(P)
    cE = P.card[P.full]
    return LogPolynomial([(mu[(0, F)], cE / P.card[F]) for F in flats(P)], P.base)


# ---------------------------------------------------------------------------
# minors and duality
# ---------------------------------------------------------------------------


def delete(P: RankTable, S) -> RankTable:
    """``P ∖ S``: the restriction to ``E − S`` (remaining coordinates re-indexed in order)."""
    S = as_mask(S, P.n)
    keep = mask_to_coords(P.full & ~S)
    emb = P._embed(keep)
    return RankTable(len(keep), [P.card[m] for m in emb], base=P.base, b_kind=P.b_kind)


def contract(P: RankTable, S) -> RankTable:
    """``P / S``: ``card'(T) = card(S ∪ T) / card(S)`` on ``E − S``."""
    S = as_mask(S, P.n)
    keep = mask_to_coords(P.full & ~S)
    emb = P._embed(keep)
    cS = P.card[S]
    return RankTable(len(keep), [P.card[S | int(m)] / cS for m in emb], base=P.base, b_kind=P.b_kind)


def group_orders_alpha(P: RankTable) -> list[int]:
    """Capacities ``A_x = |Γ_x|`` for a subgroup-sourced table."""
    if not isinstance(P.provenance, (Subgroup, RawSubset)):
        raise DomainError("capacities default to factor orders only for subgroup-sourced tables")
    return list(P.provenance.parent.orders)


def a_dual(P: RankTable, A: Sequence | None = None) -> RankTable:
    """The ``a``-dual: ``card*(S) = card(E−S) · Π_{x∈S} A_x / card(E)``.

    ``A[x] = b**a_x``.  ``A`` defaults to the factor orders of the source
    subgroup.
    """
    A = group_orders_alpha(P) if A is None else [_frac(a) for a in A]
    if len(A) != P.n:
        raise DomainError(f"need {P.n} capacities, got {len(A)}")
    for x in range(P.n):
        if P.card[1 << x] > A[x]:
            raise DomainError(f"element {x + 1}: card({{{x + 1}}}) = {P.card[1 << x]} exceeds A_x = {A[x]}")
    full = P.full
    cE = P.card[full]
    out = []
    for S in range(1 << P.n):
        prodA = math.prod((A[x] for x in mask_to_coords(S)), start=Fraction(1))
        out.append(P.card[full & ~S] * prodA / cE)
    return RankTable(P.n, out, base=P.base, b_kind=P.b_kind)


# ---------------------------------------------------------------------------
# Tutte polynomial
# ---------------------------------------------------------------------------


class TuttePoly:
    """``Σ c · (u−1)^{log_b m1} (v−1)^{log_b m2}``."""

    def __init__(self, terms: Mapping | Iterable, base):
        acc: dict[tuple[Fraction, Fraction], int] = {}
        items = terms.items() if isinstance(terms, Mapping) else (((m1, m2), c) for c, m1, m2 in terms)
        for (m1, m2), c in items:
            key = (_frac(m1), _frac(m2))
            acc[key] = acc.get(key, 0) + int(c)
        self.terms = {k: c for k, c in sorted(acc.items(), reverse=True) if c}
        self.base = _frac(base)

    def __eq__(self, other):
        return isinstance(other, TuttePoly) and self.terms == other.terms and self.base == other.base

    def __hash__(self):
        return hash((tuple(self.terms.items()), self.base))

    def __repr__(self):
        return f"TuttePoly({len(self.terms)} terms, b={self.base})"

    def to_json(self) -> list:
        return [[c, m1.numerator, m1.denominator, m2.numerator, m2.denominator]
                for (m1, m2), c in self.terms.items()]


def tutte(P: RankTable) -> TuttePoly:
    """``Σ_S (u−1)^{r(E)−r(S)} (v−1)^{|S|−r(S)}`` as a :class:`TuttePoly`."""
    cE = P.card[P.full]
    return TuttePoly([(1, cE / P.card[S], P.base ** _popcount(S) / P.card[S]) for S in range(1 << P.n)],
                     P.base)


def tutte_eval_exact(T: TuttePoly, alpha: int, beta: int) -> Fraction:
    """Value at ``u − 1 = b**alpha``, ``v − 1 = b**beta`` (integers), i.e. ``Σ c m1^α m2^β``."""
    if int(alpha) != alpha or int(beta) != beta:
        raise DomainError("exact Tutte evaluation needs integer exponents")
    return sum((c * m1 ** int(alpha) * m2 ** int(beta) for (m1, m2), c in T.terms.items()), Fraction(0))


def tutte_eval_float(T: TuttePoly, u: float, v: float) -> float:
    if u <= 1 or v <= 1:
        raise DomainError("float Tutte evaluation needs u > 1 and v > 1 (real powers)")
    lb = math.log(T.base)
    lu, lv = math.log(u - 1) / lb, math.log(v - 1) / lb
    return math.fsum(c * math.exp(lu * math.log(m1) + lv * math.log(m2)) for (m1, m2), c in T.terms.items())


def tutte_recursive_rhs(P: RankTable, x: int, alpha: int, beta: int) -> Fraction:
    """Deletion–contraction at ``x`` evaluated at ``u−1 = b^α``, ``v−1 = b^β``:
    ``(card(E)/card(E−x))^α T_{P∖x} + (b/card(x))^β T_{P/x}``."""
    bit = 1 << x
    cE, cEx, cx = P.card[P.full], P.card[P.full & ~bit], P.card[bit]
    t_del = tutte_eval_exact(tutte(delete(P, bit)), alpha, beta)
    t_con = tutte_eval_exact(tutte(contract(P, bit)), alpha, beta)
    return (cE / cEx) ** alpha * t_del + (P.base / cx) ** beta * t_con


# ---------------------------------------------------------------------------
# Γ-possible, isomorphism, equivalence, representability
# ---------------------------------------------------------------------------


def gamma_possible(P: RankTable, G: FiniteGroup, strong: bool = False) -> tuple[bool, int | tuple | None]:
    """Divisibility test: every ``card(S)`` is an integer dividing ``|Γ|^{|S|}``.

    ``strong=True`` additionally requires, for all ``S ⊆ T``, that
    ``card(T)/card(S)`` is an integer dividing ``|Γ|^{|T−S|}``.  Returns
    ``(ok, first failing subset or pair)``.
    """
    if P.base != G.order:
        raise DomainError(f"Γ-possible is defined for b = |Γ| = {G.order}, table has b = {P.base}")
    q = G.order
    for S in range(1 << P.n):
        c = P.card[S]
        if c.denominator != 1 or (q ** _popcount(S)) % c.numerator:
            return False, S
    if strong:
        for T in range(1 << P.n):
            sub = T
            while True:
                ratio = P.card[T] / P.card[sub]
                if ratio.denominator != 1 or (q ** _popcount(T & ~sub)) % ratio.numerator:
                    return False, (sub, T)
                if sub == 0:
                    break
                sub = (sub - 1) & T
    return True, None


def _permute_masks(perm: Sequence[int], n: int) -> np.ndarray:
    """``out[m]`` = image of mask ``m`` under coordinate map ``i -> perm[i]``."""
    m = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(m)
    for i, p in enumerate(perm):
        out |= ((m >> i) & 1) << p
    return out


def isomorphism(P: RankTable, Q: RankTable) -> tuple[int, ...] | None:
    """Ground-set bijection ``σ`` with ``card_Q(σ(S)) = card_P(S)`` for all ``S``, or ``None``."""
    if P.n != Q.n:
        return None
    if P.n > MAX_ISOMORPHISM_N:
        raise ScaleError("ground set size for isomorphism search", P.n, MAX_ISOMORPHISM_N)
    if sorted(P.card) != sorted(Q.card):
        return None
    n = P.n
    single_p = [P.card[1 << i] for i in range(n)]
    single_q = [Q.card[1 << i] for i in range(n)]

    def extend(prefix: list[int]):
        i = len(prefix)
        if i == n:
            return tuple(prefix)
        for j in range(n):
            if j in prefix or single_q[j] != single_p[i]:
                continue
            cand = prefix + [j]
            # every subset of the first i+1 elements containing i must match
            ok = True
            for sub in range(1 << i):
                src = sub | 1 << i
                dst = (1 << j) | sum(1 << cand[t] for t in mask_to_coords(sub))
                if P.card[src] != Q.card[dst]:
                    ok = False
                    break
            if ok:
                found = extend(cand)
                if found is not None:
                    return found
        return None

    return extend([])


def equivalent_realizations(H: Subgroup, H2: Subgroup, max_group: int = 24, max_n: int = 5):
    """Search coordinate permutations and per-coordinate automorphisms carrying ``H`` onto ``H2``.

    Both must be subgroups of the same ``Γ^n``.  Returns ``(True, (perm, auts))``
    where coordinate ``i`` of the image is ``auts[i][h[perm[i]]]``, or
    ``(False, reason)``.
    """
    P, Q = H.parent, H2.parent
    if P.n != Q.n or len(set(P.factors + Q.factors)) != 1:
        raise DomainError("equivalence is tested for subgroups of the same power Γ^n")
    n = P.n
    G = P.factors[0]
    if G.order > max_group:
        raise ScaleError("group order", G.order, max_group)
    if n > max_n:
        raise ScaleError("number of coordinates", n, max_n)
    if H.order != H2.order:
        return False, "orders differ"
    if isomorphism(rank_table(H), rank_table(H2)) is None:
        return False, "rank tables are not isomorphic"
    auts = [np.array(a, dtype=np.int64) for a in automorphisms(G, cap=max_group)]
    target = H2.elements
    q = G.order

    def prefix_codes(arr: np.ndarray, k: int) -> np.ndarray:
        radix = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
        return np.unique(arr[:, :k] @ radix)

    target_prefix = [prefix_codes(target, k) for k in range(n + 1)]
    src = H.elements

    def search(perm: list[int], chosen: list[int], image: np.ndarray):
        k = len(perm)
        if k == n:
            return tuple(perm), tuple(tuple(int(v) for v in auts[a]) for a in chosen)
        for j in range(n):
            if j in perm:
                continue
            for ai, theta in enumerate(auts):
                col = theta[src[:, j]]
                img = np.column_stack([image, col]) if k else col[:, None]
                if np.array_equal(prefix_codes(img, k + 1), target_prefix[k + 1]):
                    res = search(perm + [j], chosen + [ai], img)
                    if res is not None:
                        return res
        return None

    res = search([], [], np.empty((len(src), 0), dtype=np.int64))
    if res is None:
        return False, "no permutation and automorphism tuple maps H onto H2"
    return True, res


def _rescale_to_group(P: RankTable, G: FiniteGroup) -> RankTable | None:
    """Re-express ``P`` with base ``|Γ|``; ``None`` when a value is not an integer."""
    if P.base == G.order:
        return P
    out = []
    lb = math.log(P.base)
    for c in P.card:
        e = _log_exponent(c, P.base)
        if e is None:
            exp = math.log(c) / lb
            val = G.order ** exp
            r = round(val)
            if abs(val - r) > 1e-9 * max(1, r):
                return None
            out.append(Fraction(r))
        else:
            v = Fraction(G.order) ** int(e)
            out.append(v)
    return RankTable(P.n, out, base=G.order, b_kind="group_order")


def representability_search(P: RankTable, G: FiniteGroup, n_max: int, cap: int = 256) -> Subgroup | None:
    """Exhaustively look for ``H ≤ Γ^n`` whose rank table is isomorphic to ``P``.

    The ranks of ``P`` are interpreted as ``r(S) = log_b card(S)``; the
    candidate must satisfy ``|H_S| = |Γ|^{r(S)}``.  Only ``n = |E|``
    coordinates can match, so ``n_max`` bounds that size.
    """
    if P.n > n_max:
        return None
    target = _rescale_to_group(P, G)
    if target is None:
        return None
    parent = GroupProduct([G] * P.n)
    if parent.order > cap:
        raise ScaleError("group order", parent.order, cap)
    for H in enumerate_subgroups(parent, cap=cap, order=int(target.card[target.full])
                                 if target.card[target.full].denominator == 1 else -1):
        if isomorphism(rank_table(H, b=G.order), target) is not None:
            return H
    return None


# ---------------------------------------------------------------------------
# U_{2,3} over nonabelian groups
# ---------------------------------------------------------------------------


def u23_kernel_search(G: FiniteGroup, cap: int = 256) -> list[Subgroup]:
    """Subgroups ``N ≤ Γ²`` that could be the kernel of the third projection of
    a realization of ``U_{2,3}`` over ``Γ``.

    A realization ``H ≤ Γ³`` has ``|H| = |Γ|²`` and bijective projections
    onto every pair of coordinates.  Then ``N = π_{12}(ker π_3)`` is normal in
    ``H_{12} = Γ²``, has order ``|Γ|`` and meets both coordinate axes
    trivially.  Any realization therefore needs such an ``N``; the list
    returned is empty when none exists.
    """
    prod = GroupProduct([G, G])
    out = []
    for N in enumerate_subgroups(prod, cap=cap, order=G.order):
        if not N.is_normal():
            continue
        axis1 = [(g, G.identity) for g in range(G.order) if g != G.identity]
        axis2 = [(G.identity, g) for g in range(G.order) if g != G.identity]
        if any(t in N for t in axis1 + axis2):
            continue
        out.append(N)
    return out


def nonabelian_u23_contradiction(G: FiniteGroup) -> dict:
    """Exhibit two products in ``Γ³`` that agree on coordinates 1, 2 but not on 3.

    In a realization of ``U_{2,3}`` the projections onto coordinates {1,3}
    and {2,3} are onto, so ``H`` contains some ``(1, γ_y, γ)`` and some
    ``(γ_x, 1, γ')``.  Their two products agree on coordinates 1, 2 for any
    ``γ_x, γ_y``, but the third coordinates ``γγ'`` and ``γ'γ`` differ when
    ``γ, γ'`` do not commute, so the projection onto {1,2} is not injective.
    """
    pair = next(((g, h) for g in range(G.order) for h in range(G.order)
                 if G.mul[g, h] != G.mul[h, g]), None)
    if pair is None:
        raise CapabilityError("the contradiction needs a nonabelian group")
    g, h = pair
    e = G.identity
    prod = GroupProduct([G, G, G])
    gy, gx = g, h
    a = (e, gy, g)
    b = (gx, e, h)
    ab = prod.mul(a, b)
    ba = prod.mul(b, a)
    return {
        "a": a, "b": b, "ab": ab, "ba": ba,
        "same_xy": ab[:2] == ba[:2],
        "different_z": ab[2] != ba[2],
    }

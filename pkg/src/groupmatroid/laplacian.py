"""The quotient complex ``X/H`` of the join ``X = Γ_1 ⋆ ⋯ ⋆ Γ_n`` by ``H``, its
boundary matrices, Laplacian spectra and top homology.

A face with coordinate set ``S`` is a coset ``g H_S`` in ``G_S``; its
representative is the lexicographically least tuple of the coset.  Faces of
dimension ``j`` have ``|S| = j + 1``; the empty set gives the single face of
dimension ``−1``.  In the augmented complex ``∂_0`` maps every vertex to
that face.  Laplacians include that augmentation by default only when ``0``
is the top dimension (``n = 1``); below the top, ``Δ_0`` is the graph
Laplacian of the 1-skeleton.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exactlinalg import charpoly, integer_roots, poly_str, rank_q
from .exceptions import CapabilityError, DomainError, ScaleError
from .groups import GroupProduct, Subgroup, _popcount, mask_to_coords, project
from .polymatroid import a_dual, char_poly, rank_table
from .reports import Report
from .reptheory import exact_triv_distribution

FACE_CAP = 10**6
LAPLACIAN_CAP = 300
RANK_CAP = 4000

__all__ = [
    "QuotientComplex",
    "SpectrumReport",
    "build_quotient",
    "laplacian_matrix",
    "laplacian_spectrum",
    "predicted_top_spectrum",
    "coloop_cone_check",
    "top_betti",
    "verify_top_homology",
    "euler_check",
    "edge_counts",
]


class _CosetSpace:
    """Left cosets ``g H_S`` of one projected subgroup inside ``G_S``."""

    def __init__(self, parent: GroupProduct, H: Subgroup, mask: int):
        self.mask = mask
        self.coords = mask_to_coords(mask)
        if not self.coords:
            self.sub = None
            self.reps = np.zeros((1, 0), dtype=np.int64)
            self.index = {0: 0}
            return
        self.sub = parent.sub(mask)
        self.HS = project(H, mask).elements
        if self.sub.order * len(self.HS) > 5 * 10**7:
            raise ScaleError("|G_S|·|H_S|", self.sub.order * len(self.HS), 5 * 10**7)
        reps = np.unique(self.canonical_codes(self.sub.all_elements()))
        self.reps = self.sub.decode(reps)
        self.index = {int(c): i for i, c in enumerate(reps)}

    def canonical_codes(self, T: np.ndarray) -> np.ndarray:
        """Code of the least tuple in ``t·H_S`` for each row ``t`` of ``T``."""
        if self.sub is None:
            return np.zeros(len(T), dtype=np.int64)
        prods = self.sub.mul_arrays(T[:, None, :], self.HS[None, :, :])
        return self.sub.encode(prods).min(axis=1)

    def locate(self, T: np.ndarray) -> np.ndarray:
        codes = self.canonical_codes(T)
        return np.array([self.index[int(c)] for c in codes], dtype=np.int64)

    def __len__(self):
        return len(self.reps)


class QuotientComplex:
    """Faces of ``X/H`` grouped by coordinate set, with signed boundary maps."""

    def __init__(self, H: Subgroup, cap: int = FACE_CAP):
        self.subgroup = H
        self.product = H.parent
        self.n = H.n
        total = sum(self.product.order_of(S) // H.projection_size(S) for S in range(1 << self.n))
        if total > cap:
            raise ScaleError("number of faces", total, cap)
        self.spaces = {S: _CosetSpace(self.product, H, S) for S in range(1 << self.n)}
        # faces of dimension j, ordered by (S colex, representative)
        self.offsets: dict[int, int] = {}
        self.sizes = Counter()
        for S in range(1 << self.n):
            j = _popcount(S) - 1
            self.offsets[S] = self.sizes[j]
            self.sizes[j] += len(self.spaces[S])
        self._boundary_cache: dict[tuple, np.ndarray] = {}

    def num_faces(self, j: int) -> int:
        return self.sizes.get(j, 0)

    def faces(self, j: int) -> list[tuple[int, tuple]]:
        out = []
        for S in range(1 << self.n):
            if _popcount(S) - 1 == j:
                out.extend((S, tuple(int(v) for v in r)) for r in self.spaces[S].reps)
        return out

    def boundary(self, j: int, augmented: bool = True, rng: np.random.Generator | None = None) -> np.ndarray:
        """``∂_j`` as a dense ``(|F_{j−1}|, |F_j|)`` integer matrix.

        The facet of ``g H_S`` at the ``i``-th coordinate ``x_i`` of ``S`` is the
        coset of the projection of ``g`` with sign ``(−1)^{i−1}``.  With ``rng``
        each face uses a random member of its coset as representative, which
        must give the same matrix.
        """
        key = (j, augmented)
        if rng is None and key in self._boundary_cache:
            return self._boundary_cache[key]
        rows, cols = self.num_faces(j - 1), self.num_faces(j)
        if j == 0 and not augmented:
            rows = 0
        M = np.zeros((rows, cols), dtype=np.int64)
        if rows == 0 or cols == 0:
            return M
        for S in range(1 << self.n):
            if _popcount(S) - 1 != j:
                continue
            space = self.spaces[S]
            reps = space.reps
            if rng is not None:
                pick = rng.integers(0, len(space.HS), size=len(reps))
                reps = space.sub.mul_arrays(reps, space.HS[pick])
            col0 = self.offsets[S]
            for i, x in enumerate(space.coords):
                T = S & ~(1 << x)
                keep = [t for t, c in enumerate(space.coords) if c != x]
                target = self.spaces[T]
                idx = target.locate(reps[:, keep]) + self.offsets[T]
                sign = 1 if i % 2 == 0 else -1
                np.add.at(M, (idx, col0 + np.arange(len(reps))), sign)
        if rng is None:
            M.setflags(write=False)
            self._boundary_cache[key] = M
        return M

    def to_json(self) -> dict:
        dims = {}
        for j in range(-1, self.n):
            dims[str(j)] = [{"S": S, "rep": list(rep)} for S, rep in self.faces(j)]
        bnd = {}
        for j in range(0, self.n):
            M = self.boundary(j)
            r, c = np.nonzero(M)
            bnd[str(j)] = [[int(a), int(b), int(M[a, b])] for a, b in zip(r, c)]
        return {"faces": dims, "boundary": bnd}


def build_quotient(H: Subgroup, cap: int = FACE_CAP) -> QuotientComplex:
    return QuotientComplex(H, cap)


def edge_counts(C: QuotientComplex) -> dict[tuple[int, int], int]:
    """Number of 1-faces between each pair of vertices (vertices labelled ``(x, coset index)``)."""
    out: Counter = Counter()
    B = C.boundary(1)
    verts = C.faces(0)
    for col in range(B.shape[1]):
        ends = sorted(verts[r] for r in np.flatnonzero(B[:, col]))
        key = tuple((mask_to_coords(S)[0], C.spaces[S].index[int(C.spaces[S].sub.encode(np.array(rep)))])
                    for S, rep in ends)
        out[key] += 1
    return dict(out)


# ---------------------------------------------------------------------------
# Laplacians and spectra
# ---------------------------------------------------------------------------


def _default_augmented(C: QuotientComplex, j: int, augmented: bool | None) -> bool:
    return j == C.n - 1 if augmented is None else augmented


def laplacian_matrix(C: QuotientComplex, j: int, augmented: bool | None = None) -> np.ndarray:
    """``Δ_j = ∂_jᵀ ∂_j + ∂_{j+1} ∂_{j+1}ᵀ``."""
    if not -1 <= j <= C.n - 1:
        raise DomainError(f"dimension {j} outside −1..{C.n - 1}")
    augmented = _default_augmented(C, j, augmented)
    size = C.num_faces(j)
    L = np.zeros((size, size), dtype=np.int64)
    if j >= 0:
        B = C.boundary(j, augmented)
        L += B.T @ B
    if j + 1 <= C.n - 1 and (j + 1 > 0 or augmented):
        B1 = C.boundary(j + 1, augmented)
        L += B1 @ B1.T
    return L


@dataclass
class SpectrumReport:
    dimension: int
    char_poly: list[int]
    integer_roots: Counter
    residual_factor: list[int]
    psd: bool
    augmented: bool = True
    notes: list = field(default_factory=list)

    def spectrum(self) -> list[int]:
        """Integer eigenvalues with multiplicity, descending."""
        return sorted(self.integer_roots.elements(), reverse=True)

    @property
    def splits(self) -> bool:
        return len(self.residual_factor) == 1

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "augmented": self.augmented,
            "char_poly": list(self.char_poly),
            "char_poly_str": poly_str(self.char_poly),
            "integer_roots": {str(k): v for k, v in sorted(self.integer_roots.items())},
            "residual_factor": list(self.residual_factor),
            "residual_factor_str": poly_str(self.residual_factor),
            "psd": self.psd,
        }


def _alternating(coeffs) -> bool:
    """Coefficients of a real-rooted monic polynomial alternate in sign iff no root is negative."""
    n = len(coeffs) - 1
    return all(c == 0 or (c > 0) == ((n - k) % 2 == 0) for k, c in enumerate(coeffs))


def laplacian_spectrum(C: QuotientComplex, j: int, augmented: bool | None = None,
                       cap: int = LAPLACIAN_CAP) -> SpectrumReport:
    """Exact characteristic polynomial of ``Δ_j`` and its integer roots."""
    size = C.num_faces(j)
    if size > cap:
        raise ScaleError(f"|F_{j}|", size, cap)
    augmented = _default_augmented(C, j, augmented)
    L = laplacian_matrix(C, j, augmented)
    cp = charpoly(L)
    bound = int(np.abs(L).sum(axis=1).max()) if size else 0
    roots, residual = integer_roots(cp, bound=bound)
    psd = _alternating(cp) and all(r >= 0 for r in roots)
    return SpectrumReport(j, cp, roots, residual, psd, augmented)


def _hypothesis_holds(P) -> bool:
    E = P.full
    return all(P.card[E & ~(1 << x)] == P.card[E] for x in range(P.n))


def predicted_top_spectrum(H: Subgroup) -> Counter:
    """Eigenvalue ``Σ_{x∈S} |Γ_x|`` with multiplicity ``Σ_{triv ρ = S} mult·dim``.

    Requires ``|H_{E−x}| = |H|`` for every coordinate ``x``.
    """
    P = rank_table(H)
    if not _hypothesis_holds(P):
        bad = [x + 1 for x in range(P.n) if P.card[P.full & ~(1 << x)] != P.card[P.full]]
        raise CapabilityError(f"the top-spectrum formula needs r(E−x) = r(E) for every x; fails at {bad}")
    orders = H.parent.orders
    out: Counter = Counter()
    for S, m in exact_triv_distribution(H).items():
        out[sum(orders[x] for x in mask_to_coords(S))] += m
    return out


def _taylor_shift(coeffs, s: int) -> list[int]:
    """Coefficients of ``p(λ − s)``."""
    out = [0] * len(coeffs)
    for k, c in enumerate(coeffs):
        for i in range(k + 1):
            out[i] += c * math.comb(k, i) * (-s) ** (k - i)
    return out


def coloop_cone_check(H: Subgroup, x: int) -> Report:
    """Compare ``Δ_{n−1}(X/H)`` with ``Δ_{n−2}(X'/H')``, ``H' = π_{E−x}(H)``.

    Asserted (``match``) only when ``|Γ_x| = 2``, where the eigenvalues shift
    by exactly 1; otherwise the observed shift is reported.
    """
    P = rank_table(H)
    q = H.parent.orders[x]
    E = P.full
    if not P.card[E] == P.card[E & ~(1 << x)] * q:
        raise DomainError(f"coordinate {x + 1} is not a coloop")
    n = H.n
    top = laplacian_spectrum(build_quotient(H), n - 1)
    if n == 1:
        small = [0, 1]  # Δ_{−1} of the empty complex is the zero map on C[∅]
    else:
        Hp = project(H, E & ~(1 << x))
        small = laplacian_spectrum(build_quotient(Hp), n - 2).char_poly
    observed = [s for s in range(0, 2 * q + 1) if _taylor_shift(small, s) == top.char_poly]
    details = {"q": q, "observed_shifts": observed}
    if q == 2:
        return Report("coloop-cone", top.char_poly, _taylor_shift(small, 1), 1 in observed, details=details)
    return Report("coloop-cone", top.char_poly, small, True, details=details,
                  warnings=["shift observed only; the statement is asserted for |Γ_x| = 2"])


# ---------------------------------------------------------------------------
# homology
# ---------------------------------------------------------------------------


def top_betti(C: QuotientComplex) -> int:
    """``dim ker ∂_{n−1}`` over Q (there are no ``n``-faces)."""
    B = C.boundary(C.n - 1)
    if B.shape[1] > RANK_CAP:
        raise ScaleError(f"|F_{C.n - 1}|", B.shape[1], RANK_CAP)
    return B.shape[1] - rank_q(B)


def _euler_sum(H: Subgroup) -> int:
    return sum((1 if _popcount(S) % 2 else -1) * (H.parent.order_of(S) // H.projection_size(S))
               for S in range(1 << H.n))


def verify_top_homology(H: Subgroup, C: QuotientComplex | None = None) -> Report:
    """``β_{n−1}`` by exact elimination against the triv-distribution at ``∅``,
    the alternating coset count and, for equal factor orders, ``χ_{P*}(|Γ|)``."""
    C = build_quotient(H) if C is None else C
    beta = top_betti(C)
    f0 = exact_triv_distribution(H).get(0, 0)
    n = H.n
    euler = _euler_sum(H)
    details = {"beta": beta, "triv_at_empty": f0, "euler_sum": euler,
               "euler_predicts": (-1) ** (n - 1) * euler}
    checks = [beta == f0, (-1) ** (n - 1) * euler == beta]
    notes = []
    if len(set(H.parent.orders)) == 1:
        chi = char_poly(a_dual(rank_table(H))).eval_at_power(1)
        details["chi_dual_at_q"] = chi
        checks.append(Fraction(beta) == chi)
    else:
        notes.append("factor orders differ; the χ_{P*}(|Γ|) comparison was skipped")
    if C.num_faces(n - 1) <= LAPLACIAN_CAP:
        zero_mult = laplacian_spectrum(C, n - 1).integer_roots.get(0, 0)
        details["zero_eigenvalue_multiplicity"] = zero_mult
        checks.append(zero_mult == beta)
    return Report("top-homology", beta, f0, all(checks), details=details, warnings=notes)


def euler_check(C: QuotientComplex) -> Report:
    """Reduced Euler characteristic from face counts against ``(−1)^{n−1} β_{n−1}``,
    plus vanishing of every lower reduced Betti number."""
    n = C.n
    chi = sum((1 if j % 2 == 0 else -1) * C.num_faces(j) for j in range(-1, n))
    ranks = {}
    for j in range(0, n):
        B = C.boundary(j)
        if max(B.shape) > RANK_CAP:
            raise ScaleError(f"|F_{j}|", max(B.shape), RANK_CAP)
        ranks[j] = rank_q(B)
    ranks[n] = 0
    betti = {j: C.num_faces(j) - ranks.get(j, 0) - ranks[j + 1] for j in range(-1, n)}
    beta_top = betti[n - 1]
    lower_zero = all(betti[j] == 0 for j in range(-1, n - 1))
    return Report("euler", chi, (-1) ** (n - 1) * beta_top,
                  chi == (-1) ** (n - 1) * beta_top and lower_zero,
                  details={"reduced_betti": {str(j): b for j, b in betti.items()},
                           "lower_vanish": lower_zero})

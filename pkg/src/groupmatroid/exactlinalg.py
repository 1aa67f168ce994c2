"""Exact integer linear algebra: rank over Q, characteristic polynomials and
integer root extraction.

The characteristic polynomial is computed modulo many primes below ``2**21``
by Hessenberg reduction, then lifted by Chinese remaindering.  The number of
primes is fixed in advance from the bound ``|c_k| <= C(n,k) R^k <= (1+R)^n``
with ``R`` the largest absolute row sum, so the lift is exact.
"""
from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .exceptions import ScaleError

MAX_CHARPOLY_DIM = 300

__all__ = ["rank_q", "charpoly", "integer_roots", "root_bound", "poly_eval", "poly_str", "deflate"]


def rank_q(M) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination."""
    A = np.array(M, dtype=object)
    if A.ndim != 2 or 0 in A.shape:
        return 0
    rows, cols = A.shape
    rank = 0
    prev = 1
    for c in range(cols):
        if rank == rows:
            break
        piv = next((r for r in range(rank, rows) if A[r, c] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            A[[rank, piv]] = A[[piv, rank]]
        p = A[rank, c]
        below = A[rank + 1:, :]
        if below.shape[0]:
            factor = below[:, c:c + 1].copy()
            A[rank + 1:, :] = (p * below - factor * A[rank, :]) // prev
        prev = p
        rank += 1
    return rank


@lru_cache(maxsize=None)
def _primes_below(limit: int, count: int) -> tuple[int, ...]:
    out = []
    cand = limit - 1
    while len(out) < count:
        if cand % 2 and all(cand % d for d in range(3, math.isqrt(cand) + 1, 2)):
            out.append(cand)
        cand -= 1
    return tuple(out)


def _charpoly_mod(A: np.ndarray, p: int) -> np.ndarray:
    """Coefficients (low degree first) of ``det(λI − A)`` mod ``p``."""
    n = A.shape[0]
    H = A % p
    for k in range(n - 2):
        col = H[k + 1:, k]
        nz = np.flatnonzero(col)
        if len(nz) == 0:
            continue
        i = k + 1 + nz[0]
        if i != k + 1:
            H[[i, k + 1]] = H[[k + 1, i]]
            H[:, [i, k + 1]] = H[:, [k + 1, i]]
        inv = pow(int(H[k + 1, k]), -1, p)
        u = (H[k + 2:, k] * inv) % p
        if not u.any():
            continue
        H[k + 2:, :] = (H[k + 2:, :] - u[:, None] * H[k + 1, :]) % p
        # entries < 2^21 and n <= 300 keep the dot products below 2^53, exact in float64
        dots = (H[:, k + 2:].astype(np.float64) @ u.astype(np.float64)).astype(np.int64)
        H[:, k + 1] = (H[:, k + 1] + dots) % p
    # Hessenberg recurrence: P[m] is the charpoly of the leading m×m block
    P = np.zeros((n + 1, n + 1), dtype=np.int64)
    P[0, 0] = 1
    # suf[i-1] = Π_{j=i+1}^{m} h_{j,j−1} (1-based), maintained incrementally
    suf = np.zeros(0, dtype=np.int64)
    for m in range(1, n + 1):
        cur = np.zeros(n + 1, dtype=np.int64)
        cur[1:] = P[m - 1, :-1]
        cur = (cur - H[m - 1, m - 1] * P[m - 1]) % p
        if m > 1:
            suf = (np.append(suf, 1) * H[m - 1, m - 2]) % p
            coef = (H[: m - 1, m - 1] * suf) % p
            if coef.any():
                dots = (coef.astype(np.float64) @ P[: m - 1].astype(np.float64)).astype(np.int64)
                cur = (cur - dots) % p
        P[m] = cur
    return P[n]


def charpoly(M) -> list[int]:
    """Exact ``det(λI − M)`` for an integer matrix, low degree first."""
    A = np.array(M, dtype=object)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("characteristic polynomial needs a square matrix")
    if n > MAX_CHARPOLY_DIM:
        raise ScaleError("matrix dimension", n, MAX_CHARPOLY_DIM)
    if n == 0:
        return [1]
    R = max(int(sum(abs(int(v)) for v in row)) for row in A)
    bits = n * math.log2(1 + R) + 2
    count = int(bits // 20) + 2
    primes = _primes_below(1 << 21, count)
    A64 = np.array([[int(v) for v in row] for row in A], dtype=np.int64)
    result = [0] * (n + 1)
    modulus = 1
    for p in primes:
        r = _charpoly_mod(A64, p)
        inv = pow(modulus % p, -1, p)
        for k in range(n + 1):
            # Garner step: x ≡ result[k] (mod modulus), x ≡ r[k] (mod p)
            t = (int(r[k]) - result[k]) * inv % p
            result[k] += modulus * t
        modulus *= p
    half = modulus // 2
    return [c - modulus if c > half else c for c in result]


def poly_eval(coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def deflate(coeffs, r: int) -> list[int]:
    """Divide by ``(λ − r)`` (exact; ``r`` must be a root)."""
    n = len(coeffs) - 1
    out = [0] * n
    carry = 0
    for k in range(n, 0, -1):
        carry = coeffs[k] + carry * r
        out[k - 1] = carry
    if coeffs[0] + carry * r != 0:
        raise ArithmeticError(f"{r} is not a root")
    return out


def root_bound(coeffs) -> int:
    """Fujiwara bound on the absolute value of every complex root (monic input)."""
    n = len(coeffs) - 1
    lead = coeffs[-1]
    best = 0
    for k in range(1, n + 1):
        c = abs(Fraction(coeffs[n - k], lead))
        if k == n:
            c /= 2
        if c:
            r = math.ceil(float(c) ** (1.0 / k)) + 1
            while Fraction(r) ** k < c:
                r += 1
            best = max(best, r)
    return 2 * best


def integer_roots(coeffs, bound: int | None = None) -> tuple[Counter, list[int]]:
    """Integer roots with multiplicity and the residual factor (low degree first).

    Candidates are divisors of the lowest coefficient of each successive
    deflation, up to ``bound`` (default: the Fujiwara root bound).
    """
    coeffs = list(coeffs)
    roots: Counter = Counter()
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
        roots[0] += 1
    while len(coeffs) > 1:
        c0 = abs(coeffs[0])
        lim = min(c0, root_bound(coeffs) if bound is None else bound)
        found = None
        for d in range(1, lim + 1):
            if c0 % d:
                continue
            for r in (d, -d):
                if poly_eval(coeffs, r) == 0:
                    found = r
                    break
            if found is not None:
                break
        if found is None:
            break
        coeffs = deflate(coeffs, found)
        roots[found] += 1
    return roots, coeffs


def poly_str(coeffs, var: str = "λ") -> str:
    """Human-readable polynomial, highest degree first."""
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mono = "" if k == 0 else var if k == 1 else f"{var}^{k}"
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mono else "") + mono
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s

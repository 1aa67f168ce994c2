"""Exact arithmetic in the cyclotomic integers ``Z[ζ_e]``.

Values are reduced modulo the ``e``-th cyclotomic polynomial, so the power
basis coefficients ``1, ζ, …, ζ^{φ(e)−1}`` form a canonical representation.
Bulk computations work in the group ring ``Z[x]/(x^e − 1)`` (length-``e``
integer arrays) and reduce only at the end.
"""
from __future__ import annotations

import cmath
import math
import re
from functools import lru_cache

import numpy as np

from .exceptions import ValidationError

__all__ = ["Cyclotomic", "cyclotomic_poly", "reduce_ring", "ring_mul", "ring_conj", "ring_lift"]


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (coefficient lists, low degree first)."""
    num = list(num)
    q = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(q) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        q[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """Coefficients of ``Φ_e`` (low degree first), by dividing ``x^e − 1`` by ``Φ_d`` for ``d | e``."""
    if e < 1:
        raise ValueError("cyclotomic order must be positive")
    poly = [-1] + [0] * (e - 1) + [1]
    for d in range(1, e):
        if e % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_poly(d)))
    return tuple(poly)


def reduce_ring(a, e: int) -> tuple[int, ...]:
    """Reduce an element of ``Z[x]/(x^e − 1)`` to its canonical form mod ``Φ_e``."""
    phi = cyclotomic_poly(e)
    deg = len(phi) - 1
    a = [int(v) for v in a]
    # Φ_e is monic, so long division stays integral
    for i in range(len(a) - 1, deg - 1, -1):
        c = a[i]
        if c:
            for j, p in enumerate(phi):
                a[i - deg + j] -= c * p
    out = a[:deg] + [0] * max(0, deg - len(a))
    return tuple(out)


def ring_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product in ``Z[x]/(x^e − 1)`` (cyclic convolution along the last axis)."""
    e = a.shape[-1]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for i in range(e):
        if np.any(a[..., i]):
            out += a[..., i, None] * np.roll(b, i, axis=-1)
    return out


def ring_conj(a: np.ndarray) -> np.ndarray:
    """Complex conjugation ``ζ ↦ ζ^{−1}``: ``a'[k] = a[−k mod e]``."""
    e = a.shape[-1]
    idx = (-np.arange(e)) % e
    return a[..., idx]


def ring_lift(a: np.ndarray, e: int, E: int) -> np.ndarray:
    """Embed ``Z[x]/(x^e−1)`` into ``Z[x]/(x^E−1)`` via ``ζ_e = ζ_E^{E/e}``."""
    if E % e:
        raise ValueError(f"{e} does not divide {E}")
    out = np.zeros(a.shape[:-1] + (E,), dtype=np.int64)
    out[..., :: E // e] = a
    return out


_TERM = re.compile(r"([+-]?)\s*(\d*)\s*(?:\*?\s*z(?:\^(\d+))?)?")


class Cyclotomic:
    """An element of ``Z[ζ_e]`` in canonical reduced form."""

    __slots__ = ("e", "coeffs")

    def __init__(self, e: int, coeffs=()):
        self.e = int(e)
        self.coeffs = reduce_ring(list(coeffs), self.e)

    # -- constructors -------------------------------------------------------
    @classmethod
    def integer(cls, e: int, v: int) -> "Cyclotomic":
        return cls(e, [v])

    @classmethod
    def zeta_power(cls, e: int, k: int) -> "Cyclotomic":
        a = [0] * e
        a[k % e] = 1
        return cls(e, a)

    @classmethod
    def from_ring(cls, a, e: int) -> "Cyclotomic":
        return cls(e, list(a))

    @classmethod
    def parse(cls, text: str, e: int) -> "Cyclotomic":
        """Parse ``"a0+a1*z^1+…"`` where ``z = ζ_e``."""
        s = text.replace(" ", "")
        if not s:
            raise ValidationError("empty cyclotomic value")
        a = [0] * e
        pos = 0
        while pos < len(s):
            m = _TERM.match(s, pos)
            if not m or m.end() == pos:
                raise ValidationError(f"cannot parse cyclotomic value {text!r}")
            sign, num, power = m.groups()
            has_z = "z" in m.group(0)
            if not num and not has_z:
                raise ValidationError(f"cannot parse cyclotomic value {text!r}")
            c = int(num) if num else 1
            c = -c if sign == "-" else c
            k = (int(power) if power else 1) if has_z else 0
            a[k % e] += c
            pos = m.end()
        return cls(e, a)

    # -- ring operations ------------------------------------------------------
    def ring(self, E: int | None = None) -> np.ndarray:
        a = np.zeros(self.e, dtype=np.int64)
        a[: len(self.coeffs)] = self.coeffs
        return a if E is None or E == self.e else ring_lift(a, self.e, E)

    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.e != self.e:
                raise ValueError("mixing cyclotomic orders; lift first")
            return other
        if isinstance(other, (int, np.integer)):
            return Cyclotomic.integer(self.e, int(other))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, [x + y for x, y in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.e, [-x for x in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Cyclotomic(self.e, ring_mul(self.ring(), o.ring()))

    __rmul__ = __mul__

    def conj(self) -> "Cyclotomic":
        return Cyclotomic(self.e, ring_conj(self.ring()))

    def lift(self, E: int) -> "Cyclotomic":
        return Cyclotomic(E, self.ring(E))

    def __eq__(self, other):
        if isinstance(other, (int, np.integer)):
            return self.is_rational_integer() and self.coeffs[0] == other
        return isinstance(other, Cyclotomic) and self.e == other.e and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.e, self.coeffs))

    def is_rational_integer(self) -> bool:
        return not any(self.coeffs[1:])

    def to_int(self) -> int:
        if not self.is_rational_integer():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0] if self.coeffs else 0

    def to_complex(self) -> complex:
        z = cmath.exp(2j * math.pi / self.e)
        return sum(c * z**k for k, c in enumerate(self.coeffs))

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = f"z^{k}"
                parts.append(mono if c == 1 else "-" + mono if c == -1 else f"{c}*{mono}")
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += p if p.startswith("-") else "+" + p
        return s

    def __repr__(self):
        return f"Cyclotomic({self.e}, {self})"

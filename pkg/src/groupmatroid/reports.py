"""Verification reports with exact values and a stable JSON form."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction


def exact_json(x):
    """Integers stay integers; other rationals become ``"p/q"`` strings."""
    if isinstance(x, Fraction):
        return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    if isinstance(x, dict):
        return {str(k): exact_json(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [exact_json(v) for v in x]
    if hasattr(x, "item") and not isinstance(x, (str, bytes)):
        return x.item()
    return x


@dataclass
class Report:
    """Outcome of comparing two independently computed sides of an identity."""

    name: str
    lhs: object
    rhs: object
    match: bool
    k: int | None = None
    details: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.match)

    def to_json(self) -> dict:
        rhs = Fraction(self.rhs) if isinstance(self.rhs, (int, Fraction)) else None
        out = {"name": self.name, "lhs": exact_json(self.lhs), "match": bool(self.match), "k": self.k}
        if rhs is not None:
            out["rhs_num"] = rhs.numerator
            out["rhs_den"] = rhs.denominator
        else:
            out["rhs"] = exact_json(self.rhs)
        if self.details:
            out["details"] = exact_json(self.details)
        if self.warnings:
            out["warnings"] = list(self.warnings)
        return out

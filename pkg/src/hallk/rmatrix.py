"""Degrees of renormalized r-matrices between generators.

Only pairs with a known degree are answered; everything else raises
``UnknownPair``.  Entries carry a provenance tag: ``"proved"`` for values
established for the exact index pattern, ``"assumed"`` where an index-free
statement is applied to one particular loop-index pattern.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import HallAlgebra
from .coeff import Laurent
from .quiver import Quiver
from .symbols import F, Symbol, _Unit


class UnknownPair(KeyError):
    """No degree is known for this pair; none is guessed."""

    def __str__(self) -> str:
        return self.args[0] if self.args else "unknown pair"


@dataclass(frozen=True)
class LambdaEntry:
    value: int
    source: str
    provenance: str

    def to_json(self) -> dict:
        return {"lambda": self.value, "source": self.source, "provenance": self.provenance}


@dataclass(frozen=True)
class DoubleCheck:
    sum: int
    r_squared_nonzero: bool


def _single(g) -> bool:
    return isinstance(g, F) and g.is_single


class LambdaTable:
    """Rule-based table over a quiver; lookups are computed, never stored."""

    def __init__(self, quiver: Quiver):
        self.quiver = quiver

    def entry(self, g1: Symbol, g2: Symbol) -> LambdaEntry:
        Q = self.quiver
        if isinstance(g1, _Unit) or isinstance(g2, _Unit):
            return LambdaEntry(0, "unit", "proved")
        if _single(g1) and _single(g2):
            if g1.i == g2.i and not Q.has_loop(g1.i):
                return LambdaEntry(max(2 * (g2.l - g1.l), -2), "same-vertex pair", "proved")
            lo, hi = sorted((g1.i, g2.i))
            if hi == lo + 1 and Q.is_oriented_chain(lo, hi):
                return LambdaEntry(1, "adjacent-vertex pair", "proved")
        for x, y, value in ((g1, g2, 1), (g2, g1, -1)):
            if (
                _single(x)
                and isinstance(y, F)
                and not y.is_single
                and y.i == x.i
                and y.j == x.i + 1
                and Q.is_oriented_chain(y.i, y.j)
                and y.loops[0] == x.l
            ):
                return LambdaEntry(value, "vertex and edge interval", "assumed")
        raise UnknownPair(f"no degree known for ({_name(g1)}, {_name(g2)})")

    def __call__(self, g1: Symbol, g2: Symbol) -> int:
        return self.entry(g1, g2).value


def _name(g) -> str:
    return g.text() if hasattr(g, "text") else repr(g)


def lambda_base(quiver: Quiver, g1: Symbol, g2: Symbol) -> int:
    return LambdaTable(quiver)(g1, g2)


def lambda_upper_bound(quiver: Quiver, m: Symbol, factors: Sequence[Symbol]) -> int:
    """Sum of the pairwise degrees; only an upper bound for the product."""
    table = LambdaTable(quiver)
    return sum(table(m, n) for n in factors)


def double_check(quiver: Quiver, g1: Symbol, g2: Symbol) -> DoubleCheck:
    table = LambdaTable(quiver)
    s = table(g1, g2) + table(g2, g1)
    return DoubleCheck(s, s == 0)


def real_flag(quiver: Quiver, g: Symbol) -> bool:
    """Single-vertex generators at loop-free vertices are real."""
    if _single(g) and not quiver.has_loop(g.i):
        if LambdaTable(quiver)(g, g) != 0:
            raise AssertionError("a real generator must have zero self-degree")
        return True
    raise UnknownPair(f"reality of {_name(g)} is not known")


def swap_identity(alg: HallAlgebra, kind: str, l: int, lp: int):
    """K-level shadow of an r-matrix as a pair (lhs, rhs) of algebra elements.

    ``lhs = x y - q^Lambda(x, y) y x`` and ``rhs`` is the difference of the
    kernel and cokernel classes that the rewrite rules must reproduce.

    kind "same-vertex": x = f_{1,l+1}, y = f_{1,lp} with l >= lp.
    kind "adjacent": x = f_{1,l}, y = f_{2,lp}.
    """
    table = LambdaTable(alg.quiver)
    qpow = lambda k: Laurent.monomial({"q": k})  # noqa: E731
    if kind == "same-vertex":
        if l < lp:
            raise ValueError("same-vertex swap needs l >= lp")
        x, y = alg.f(1, l + 1), alg.f(1, lp)
        lam = table(F.single(1, l + 1), F.single(1, lp))
        lhs = x * y - (y * x).scale(qpow(lam))
        rhs = (alg.f(1, l) * alg.f(1, lp + 1)).scale(qpow(-2)) - alg.f(1, lp + 1) * alg.f(1, l)
        return lhs, rhs
    if kind == "adjacent":
        x, y = alg.f(1, l), alg.f(2, lp)
        lam = table(F.single(1, l), F.single(2, lp))
        lhs = x * y - (y * x).scale(qpow(lam))
        box = alg.interval(1, 2, (l, lp))
        rhs = box.scale(qpow(-1)) - box.scale(qpow(1))
        return lhs, rhs
    raise ValueError(f"unknown swap kind {kind!r}")


__all__ = [
    "DoubleCheck",
    "LambdaEntry",
    "LambdaTable",
    "UnknownPair",
    "double_check",
    "lambda_base",
    "lambda_upper_bound",
    "real_flag",
    "swap_identity",
]

"""Oriented rewrite rules on adjacent symbol pairs.

Every coefficient below is the K-theory image of a shift appearing in a
short exact sequence of Hall products.  ``RULE_SHIFTS`` keeps those shifts
next to the hard-coded coefficients; the test suite recomputes one from the
other.

R1   F[i,j] F[j+1,k]   -> q^-1 F(join) - t^-1 F(vee)
R2   F[j+1,k] F[i,j]   -> F(join) - q^-1 t^-1 F(vee)
R3   f_a f_b, a > b    -> q^-2 f_{a-1} f_{b+1} + q^-1 P2((a-b-2)w1 + (b+1)w2)
R3'  f_a f_b, b >= a+2 -> q P2((b-a-2)w1 + (a+1)w2) + q^2 f_{a+1} f_{b-1}
R4   f_{i,l} F[i,i+1]  -> q^-1 F[i,i+1] f_{i,l}

``join`` concatenates loop indices; ``vee`` additionally moves one unit
from the first index after the cut to the last index before it.  A P2 term
whose w1-coefficient is negative is zero and is dropped.
"""
from __future__ import annotations

from typing import Literal, Sequence

from .coeff import Laurent
from .quiver import Quiver, ShiftTriple, kfactor
from .symbols import F, P2, Symbol, Word

R4Mode = Literal["all", "matching", "off"]
R4_MODES = ("all", "matching", "off")

RULE_SHIFTS: dict[str, tuple[ShiftTriple, ...]] = {
    "R1": (ShiftTriple(0, -1, 0), ShiftTriple(1, 0, -1)),
    "R2": (ShiftTriple(0, 0, 0), ShiftTriple(1, -1, -1)),
    "R3": (ShiftTriple(0, -2, 0), ShiftTriple(0, -1, 0)),
    "R3'": (ShiftTriple(0, 1, 0), ShiftTriple(0, 2, 0)),
    "R4": (ShiftTriple(0, -1, 0),),
}

_q = Laurent.monomial({"q": 1})
_t = Laurent.monomial({"t": 1})
RULE_COEFFS: dict[str, tuple[Laurent, ...]] = {
    "R1": (_q ** -1, -(_t ** -1)),
    "R2": (Laurent.const(1), -(_q ** -1) * _t ** -1),
    "R3": (_q ** -2, _q ** -1),
    "R3'": (_q, _q ** 2),
    "R4": (_q ** -1,),
}

Replacement = list[tuple[Laurent, Word]]


def coefficient_drift() -> list[str]:
    """Rules whose hard-coded coefficients differ from kfactor of their shifts."""
    return [
        name
        for name, shifts in RULE_SHIFTS.items()
        if tuple(kfactor(s) for s in shifts) != RULE_COEFFS[name]
    ]


def join(x: F, y: F) -> F:
    return F(x.i, y.j, x.loops + y.loops)


def vee(x: F, y: F) -> F:
    left = x.loops[:-1] + (x.loops[-1] + 1,)
    right = (y.loops[0] - 1,) + y.loops[1:]
    return F(x.i, y.j, left + right)


def _chain_ok(quiver: Quiver, i: int, k: int) -> bool:
    return quiver.is_oriented_chain(i, k)


def apply_pair(quiver: Quiver, x: Symbol, y: Symbol, r4: R4Mode = "matching") -> tuple[str, Replacement] | None:
    """The rule for the adjacent pair ``x y``, or None if the pair is irreducible."""
    if not (isinstance(x, F) and isinstance(y, F)):
        return None
    # adjacent intervals
    if x.j + 1 == y.i and _chain_ok(quiver, x.i, y.j):
        c_join, c_vee = RULE_COEFFS["R1"]
        return "R1", [(c_join, (join(x, y),)), (c_vee, (vee(x, y),))]
    if y.j + 1 == x.i and _chain_ok(quiver, y.i, x.j):
        c_join, c_vee = RULE_COEFFS["R2"]
        return "R2", [(c_join, (join(y, x),)), (c_vee, (vee(y, x),))]
    if x.is_single and y.is_single and x.i == y.i and not quiver.has_loop(x.i):
        i, a, b = x.i, x.l, y.l
        if a > b:
            c_swap, c_p = RULE_COEFFS["R3"]
            out = [(c_swap, (F.single(i, a - 1), F.single(i, b + 1)))]
            if a - b - 2 >= 0:
                out.append((c_p, (P2.from_omega(i, a - b - 2, b + 1),)))
            return "R3", out
        if b >= a + 2:
            c_p, c_swap = RULE_COEFFS["R3'"]
            return "R3'", [
                (c_p, (P2.from_omega(i, b - a - 2, a + 1),)),
                (c_swap, (F.single(i, a + 1), F.single(i, b - 1))),
            ]
        return None
    if (
        r4 != "off"
        and x.is_single
        and not y.is_single
        and y.i == x.i
        and y.j == x.i + 1
        and _chain_ok(quiver, y.i, y.j)
        and (r4 == "all" or y.loops[0] == x.l)
    ):
        (c,) = RULE_COEFFS["R4"]
        return "R4", [(c, (y, x))]
    return None


def is_canonical_pair(quiver: Quiver, x: Symbol, y: Symbol) -> bool:
    """Pairs a normal form may contain without being flagged."""
    return (
        isinstance(x, F)
        and isinstance(y, F)
        and x.is_single
        and y.is_single
        and x.i == y.i
        and not quiver.has_loop(x.i)
        and y.l - x.l in (0, 1)
    )


def measure(word: Sequence[Symbol]) -> tuple[int, int, int, int]:
    """Lexicographic termination measure; every rule strictly lowers it.

    (length, sum of squared single-vertex loop indices, same-vertex
    inversions among single-vertex symbols, pairs f_i ... F[i,i+1]).
    """
    singles = [(p, s) for p, s in enumerate(word) if isinstance(s, F) and s.is_single]
    phi = sum(s.l * s.l for _, s in singles)
    inv = 0
    for k, (_, s) in enumerate(singles):
        for _, s2 in singles[k + 1:]:
            if s.i == s2.i and s.l > s2.l:
                inv += 1
    mixed = 0
    for p, s in singles:
        for s2 in word[p + 1:]:
            if isinstance(s2, F) and s2.i == s.i and s2.j == s.i + 1:
                mixed += 1
    return (len(word), phi, inv, mixed)


def depth_bound(word: Sequence[Symbol]) -> int:
    """Upper bound on the length of any rewrite chain starting at ``word``.

    Single-vertex loop indices never leave [-K, K] (K the largest absolute
    index in the word), so the measure takes at most this many values.
    """
    n = len(word)
    singles = [s.l for s in word if isinstance(s, F) and s.is_single]
    k = max((abs(x) for x in singles), default=0)
    pairs = n * (n - 1) // 2
    return n * (n * k * k + 1) * (pairs + 1) ** 2

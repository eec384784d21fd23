"""Equivariant character models used to certify the rewrite rules.

Two geometries are modeled, independently of :mod:`hallk.rules`:

* ``A1Rank2``: weight two at a single loop-free vertex.  Products of two
  generators push forward along the Springer resolution of the rank-two
  nilpotent cone; classes are computed by fixed-point localization on P^1
  with maximal-torus characters ``x1, x2``.
* ``A2Unit``: weight e_i + e_{i+1} on an oriented edge.  The space is the
  line ``W = Hom(V1, V2)`` with ``G = GL1 x GL1`` characters ``r1, r2``.

Convention: functions on a representation carry the dual weights, and the
loop twist acts on the edge/loop coordinate.  It is pinned by three
independent anchors (the Koszul resolution of the origin in W, the excess
bundle factor, and the rank-two identity at equal loop indices), all of
which are checked in the tests.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable

from sympy import Matrix

from .coeff import Laurent, RationalChar, series, swap, symmetrize
from .dkernel import koszul_sum
from .quiver import ShiftTriple, hall_shift_factor, kfactor, type_a
from .symbols import F, P2, word_text

A1_VARS = ("q", "t", "x1", "x2")
A2_VARS = ("q", "t", "r1", "r2")
MODELS = {"A1Rank2": A1_VARS, "A2Unit": A2_VARS}


class UncoveredGrade(ValueError):
    """The identity lives in a grade neither model describes."""


@dataclass(frozen=True)
class CharClass:
    model: str
    value: RationalChar

    def __post_init__(self):
        if self.value.vars != MODELS[self.model]:
            raise ValueError(f"value does not live in the {self.model} variables")

    def _lift(self, other) -> RationalChar:
        if isinstance(other, CharClass):
            if other.model != self.model:
                raise ValueError("classes from different models")
            return other.value
        return other

    def __add__(self, other) -> CharClass:
        return CharClass(self.model, self.value + self._lift(other))

    def __sub__(self, other) -> CharClass:
        return CharClass(self.model, self.value - self._lift(other))

    def __mul__(self, other) -> CharClass:
        return CharClass(self.model, self.value * self._lift(other))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, CharClass):
            return NotImplemented
        return self.model == other.model and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.model, self.value))

    def __str__(self) -> str:
        return str(self.value)


def _mono(vars, **exps) -> Laurent:
    return Laurent.monomial(exps, 1, vars)


def _a1(x) -> CharClass:
    return CharClass("A1Rank2", RationalChar.of(x, A1_VARS))


def _a2(x) -> CharClass:
    return CharClass("A2Unit", RationalChar.of(x, A2_VARS))


def _lift_qt(L: Laurent, vars) -> Laurent:
    return L.with_vars(vars)


# --- A1: rank two nilpotent cone -------------------------------------------

_A1_SWAP = swap("x1", "x2")


def a1_push(l: int, lp: int) -> CharClass:
    """Pushforward of the line V^l (C^2/V)^lp from the Springer resolution.

    At the fixed point V = <e1> the line has weight x1^l x2^lp.  The fiber
    Hom(C^2/V, V) carries loop weight q^2, so its functions have weight
    x2 x1^-1 q^-2; the tangent line of P^1 contributes functions of weight
    x1 x2^-1.  The other fixed point is the swap.
    """
    v = A1_VARS
    x1, x2, q = (_mono(v, x1=1), _mono(v, x2=1), _mono(v, q=1))
    line = _mono(v, x1=l, x2=lp)
    fiber = 1 - x2 * x1 ** -1 * q ** -2
    tangent = 1 - x1 * x2 ** -1
    local = RationalChar(line, fiber * tangent, v)
    return _a1(symmetrize(local, _A1_SWAP))


def a1_divisor_term(l: int, lp: int) -> CharClass:
    """Euler characteristic of V^(l+1) (C^2/V)^lp over the zero section P^1."""
    v = A1_VARS
    local = RationalChar(_mono(v, x1=l + 1, x2=lp), 1 - _mono(v, x1=1, x2=-1), v)
    return _a1(symmetrize(local, _A1_SWAP))


def a1_char_p(a: int, b: int) -> CharClass:
    """Character of Sym^a(C^2) (x) det^b by explicit weight enumeration; zero if a < 0."""
    v = A1_VARS
    if a < 0:
        return _a1(Laurent.const(0, v))
    total = Laurent({(0, 0, k + b, a - k + b): 1 for k in range(a + 1)}, v)
    return _a1(total)


def a1_word(l: int, lp: int) -> CharClass:
    """Class of the product f_l f_lp: Hall shift times the pushforward."""
    a1 = type_a(1)
    shift = hall_shift_factor(a1, (1,), (1,))
    return a1_push(l, lp) * _lift_qt(shift, A1_VARS)


def nilcone_char(l: int = 0) -> CharClass:
    """Closed form of the coordinate ring of the rank-two nilpotent cone, times det^l.

    Functions on gl_2 with loop weight q^2 on the matrix coordinates modulo
    the regular sequence (trace, determinant).
    """
    v = A1_VARS
    s = _mono(v, q=-2)
    u = _mono(v, x1=1, x2=-1)
    gens = (1 - s) * (1 - s) * (1 - s * u) * (1 - s * u ** -1)
    rels = (1 - s) * (1 - s * s)
    return _a1(RationalChar(rels * _mono(v, x1=l, x2=l), gens, v))


def _nilcone_coordinate_weights():
    # matrix coordinates phi_11, phi_12, phi_21, phi_22 -> (q, x1, x2) function weights
    return [(-2, 0, 0), (-2, -1, 1), (-2, 1, -1), (-2, 0, 0)]


def nilcone_series(order: int) -> Laurent:
    """Graded dimensions of C[phi]/(tr, det) by exact rank computation.

    Independent of the closed form: for each polynomial degree k <= order
    the relation space tr*(deg k-1) + det*(deg k-2) is built explicitly and
    its rank subtracted per torus weight.
    """
    v = A1_VARS
    wts = _nilcone_coordinate_weights()
    # polynomials as dicts: exponent 4-tuple -> int
    tr = {(1, 0, 0, 0): 1, (0, 0, 0, 1): 1}
    det = {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1}

    def monos(k):
        return [e for e in itertools.product(range(k + 1), repeat=4) if sum(e) == k]

    def weight(e):
        return tuple(sum(x * w[c] for x, w in zip(e, wts)) for c in range(3))

    out = {}
    for k in range(order + 1):
        basis = monos(k)
        rels = []
        for g, d in ((tr, 1), (det, 2)):
            if k - d < 0:
                continue
            for m in monos(k - d):
                rels.append({tuple(a + b for a, b in zip(m, e)): c for e, c in g.items()})
        by_weight: dict = {}
        for e in basis:
            by_weight.setdefault(weight(e), []).append(e)
        for w, es in by_weight.items():
            index = {e: n for n, e in enumerate(es)}
            rows = [[r.get(e, 0) for e in es] for r in rels if any(e in index for e in r)]
            rk = Matrix(rows).rank() if rows else 0
            dim = len(es) - rk
            if dim:
                out[(w[0], 0, w[1], w[2])] = dim
    return Laurent(out, v)


# --- A2: the line W = Hom(V1, V2) --------------------------------------------

_KOSZUL_ORIGIN = ShiftTriple(0, 1, -1)  # O_W (x) r1 r2^-1 <-1>{1} -> O_W -> O_0
_EXCESS = ShiftTriple(0, -1, -1)  # dual excess line r1 r2^-1 <-1>{-1}, degree [1]


def _a2_ratio() -> Laurent:
    return _mono(A2_VARS, r1=1, r2=-1)


def a2_char_of_w() -> CharClass:
    """Functions on W, forced by [O_0] = 1 through the Koszul resolution."""
    return _a2(koszul_sum([(_a2_ratio(), _KOSZUL_ORIGIN)], A2_VARS).inverse())


def _twist(l: int, lp: int) -> Laurent:
    return _mono(A2_VARS, r1=l, r2=lp)


def a2_origin() -> CharClass:
    return a2_char_of_w() * koszul_sum([(_a2_ratio(), _KOSZUL_ORIGIN)], A2_VARS)


def a2_f1f2(l: int, lp: int) -> CharClass:
    """f_{1,l} f_{2,lp}: the origin twisted, with the Hall shift of the edge."""
    shift = hall_shift_factor(type_a(2), (1, 0), (0, 1))
    return a2_origin() * _twist(l, lp) * _lift_qt(shift, A2_VARS)


def a2_f2f1(l: int, lp: int) -> CharClass:
    """f_{2,lp} f_{1,l}: the derived self-intersection of the origin in W."""
    shift = hall_shift_factor(type_a(2), (0, 1), (1, 0))
    excess = koszul_sum([(_a2_ratio(), _EXCESS)], A2_VARS)
    return a2_char_of_w() * excess * _twist(l, lp) * _lift_qt(shift, A2_VARS)


def a2_fbox(l: int, lp: int) -> CharClass:
    return a2_char_of_w() * _twist(l, lp)


# --- named identities --------------------------------------------------------


def _kq(c: int, l: int, s: int, vars) -> Laurent:
    return kfactor(ShiftTriple(c, l, s), vars)


@dataclass(frozen=True)
class OracleIdentity:
    name: str
    summary: str
    sides: Callable[[int, int], tuple[CharClass, CharClass]]
    domain: Callable[[int, int], bool]

    def check(self, l: int, lp: int) -> tuple[bool, CharClass, CharClass]:
        if not self.domain(l, lp):
            raise ValueError(f"{self.name} is not defined at ({l}, {lp})")
        lhs, rhs = self.sides(l, lp)
        return lhs == rhs, lhs, rhs


def _ascending(l, lp):
    v = A1_VARS
    lhs = a1_word(l, lp + 1)
    rhs = a1_char_p(lp - l - 1, l + 1) * _kq(0, 1, 0, v) + a1_word(l + 1, lp) * _kq(0, 2, 0, v)
    return lhs, rhs


def _descending(l, lp):
    v = A1_VARS
    lhs = a1_word(l + 1, lp)
    rhs = a1_word(l, lp + 1) * _kq(0, -2, 0, v) + a1_char_p(l - lp - 1, lp + 1) * _kq(0, -1, 0, v)
    return lhs, rhs


def _real(l, lp):
    v = A1_VARS
    return a1_word(l, l), nilcone_char(l) * _kq(1, -1, 0, v)


def _forward(l, lp):
    v = A2_VARS
    return a2_f1f2(l, lp), a2_fbox(l, lp) * _kq(0, -1, 0, v) + a2_fbox(l + 1, lp - 1) * _kq(1, 0, -1, v)


def _reverse(l, lp):
    v = A2_VARS
    return a2_f2f1(l, lp), a2_fbox(l, lp) + a2_fbox(l + 1, lp - 1) * _kq(1, -1, -1, v)


def _kernel_cokernel(l, lp):
    v = A2_VARS
    q = _mono(v, q=1)
    return a2_f1f2(l, lp) - a2_f2f1(l, lp) * q, a2_fbox(l, lp) * (q ** -1 - q)


IDENTITIES: dict[str, OracleIdentity] = {
    i.name: i
    for i in (
        OracleIdentity("a1-ascending", "f_l f_{l'+1} = q P + q^2 f_{l+1} f_l'", _ascending, lambda l, lp: l <= lp),
        OracleIdentity("a1-descending", "f_{l+1} f_l' = q^-2 f_l f_{l'+1} + q^-1 P", _descending, lambda l, lp: l >= lp),
        OracleIdentity("a1-real", "f_l f_l = -q^-1 det^l C[N_2]", _real, lambda l, lp: True),
        OracleIdentity("a2-forward", "f_1 f_2 = q^-1 F - t^-1 F'", _forward, lambda l, lp: True),
        OracleIdentity("a2-reverse", "f_2 f_1 = F - q^-1 t^-1 F'", _reverse, lambda l, lp: True),
        OracleIdentity("a2-kernel-cokernel", "f_1 f_2 - q f_2 f_1 = (q^-1 - q) F", _kernel_cokernel, lambda l, lp: True),
    )
}


# --- cross-checking algebra identities ---------------------------------------


def word_class(quiver, word) -> CharClass:
    """Oracle class of a word, or UncoveredGrade."""
    singles = all(isinstance(s, F) and s.is_single for s in word)
    if len(word) == 2 and singles:
        x, y = word
        if x.i == y.i and not quiver.has_loop(x.i):
            return a1_word(x.l, y.l)
        lo = min(x.i, y.i)
        if abs(x.i - y.i) == 1 and quiver.is_oriented_chain(lo, lo + 1):
            if x.i == lo:
                return a2_f1f2(x.l, y.l)
            return a2_f2f1(y.l, x.l)
    if len(word) == 1:
        (s,) = word
        if isinstance(s, P2) and not quiver.has_loop(s.vertex):
            return a1_char_p(s.a, s.b)
        if isinstance(s, F) and s.j == s.i + 1 and quiver.is_oriented_chain(s.i, s.j):
            return a2_fbox(*s.loops)
    raise UncoveredGrade(f"no oracle model for the word {word_text(word)}")


def cross_check(identity, rhs=None) -> bool:
    """Compare an algebra identity (or ``lhs - rhs``) in the oracle models."""
    x = identity if rhs is None else identity - rhs
    if x.is_zero():
        return True
    quiver = x.algebra.quiver
    total = None
    for w, c in x.terms():
        cls = word_class(quiver, w)
        term = cls * c.with_vars(cls.value.vars)
        if total is not None and term.model != total.model:
            raise UncoveredGrade("identity mixes oracle models")
        total = term if total is None else total + term
    return total.value.is_zero()


def total_degree(value: RationalChar, names: tuple[str, ...]) -> int | None:
    """Degree in ``names`` if both numerator and denominator are homogeneous."""
    degs = []
    for part in (value.num, value.den):
        d = set(part.degree_in({n: 1 for n in names}))
        if len(d) > 1:
            return None
        degs.append(d.pop() if d else 0)
    return degs[0] - degs[1]


def char_w_series(order: int) -> Laurent:
    return series(a2_char_of_w().value, {"r1": 1}, order)

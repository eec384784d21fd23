"""The graded Hall algebra shadow: elements, free products, normal forms.

Elements are homogeneous linear combinations of words with coefficients in
Z[q^{+-1}, t^{+-1}].  ``HallAlgebra.normal_form`` rewrites to the fixpoint of
the oriented rules in :mod:`hallk.rules`.  Equal normal forms prove equality;
different normal forms prove nothing, because no basis theorem is available.
"""
from __future__ import annotations

import heapq
import itertools
import os
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .coeff import QT, Laurent, specialize
from .quiver import DimVector, Quiver, parse_quiver
from .rules import R4_MODES, R4Mode, apply_pair, is_canonical_pair, measure
from .symbols import (
    F,
    P2,
    Symbol,
    Word,
    symbol_from_json,
    word_dim,
    word_grade_n,
    word_key,
    word_latex,
    word_text,
)

Grade = tuple[DimVector, int]
DEFAULT_MAX_STEPS = 1_000_000


class GradeError(ValueError):
    """Terms of different (dimension vector, internal grade)."""


class QuiverMismatch(ValueError):
    pass


class FuelExhausted(RuntimeError):
    """The rewrite step budget ran out before a fixpoint was reached."""


def _coef(c) -> Laurent:
    if isinstance(c, int):
        return Laurent.const(c)
    if isinstance(c, Laurent) and c.vars == QT:
        return c
    raise TypeError(f"coefficient {c!r} is not in Z[q^+-1, t^+-1]")


class AlgElement:
    """Immutable homogeneous element of the algebra."""

    __slots__ = ("algebra", "grade", "_terms")

    def __init__(self, algebra: HallAlgebra, terms: Mapping[Word, Laurent], grade: Grade | None = None):
        self.algebra = algebra
        clean = {}
        for w, c in terms.items():
            c = _coef(c)
            if c:
                clean[tuple(w)] = c
        for w in clean:
            g = algebra.word_grade(w)
            if grade is None:
                grade = g
            elif g != grade:
                raise GradeError(f"word {word_text(w)} has grade {g}, expected {grade}")
        self.grade = grade if grade is not None else (algebra.quiver.zero(), 0)
        self._terms = dict(sorted(clean.items(), key=lambda kv: word_key(kv[0])))

    # access

    def terms(self) -> list[tuple[Word, Laurent]]:
        return list(self._terms.items())

    def words(self) -> list[Word]:
        return list(self._terms)

    def coefficient(self, word: Iterable[Symbol]) -> Laurent:
        return self._terms.get(tuple(word), Laurent.const(0))

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    # arithmetic

    def _same(self, other: AlgElement) -> None:
        if other.algebra.quiver != self.algebra.quiver:
            raise QuiverMismatch("elements live over different quivers")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, AlgElement):
            return NotImplemented
        self._same(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.grade != other.grade:
            raise GradeError(f"cannot add grades {self.grade} and {other.grade}")
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, Laurent.const(0)) + c
        return AlgElement(self.algebra, out, self.grade)

    __radd__ = __add__

    def __neg__(self) -> AlgElement:
        return AlgElement(self.algebra, {w: -c for w, c in self._terms.items()}, self.grade)

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self + (-other)

    def scale(self, c: Laurent | int) -> AlgElement:
        c = _coef(c)
        return AlgElement(self.algebra, {w: c * v for w, v in self._terms.items()}, self.grade)

    def __mul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self.scale(other)
        if not isinstance(other, AlgElement):
            return NotImplemented
        return self.algebra.mul_free(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Laurent)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        if not isinstance(other, AlgElement):
            return NotImplemented
        if self.algebra.quiver != other.algebra.quiver:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return self.grade == other.grade and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.grade, tuple(self._terms.items())))

    def map_coefficients(self, fn) -> AlgElement:
        return AlgElement(self.algebra, {w: fn(c) for w, c in self._terms.items()}, self.grade)

    # serialization

    def __str__(self) -> str:
        return element_text(self)

    def __repr__(self) -> str:
        return f"AlgElement({self!s})"

    def latex(self) -> str:
        return element_latex(self)

    def to_json(self) -> dict:
        return {
            "quiver": self.algebra.quiver.text(),
            "grade": {"a": list(self.grade[0]), "n": self.grade[1]},
            "words": [
                {"syms": [s.to_json() for s in w], "coef": {"num": c.to_rows()}}
                for w, c in self._terms.items()
            ],
        }


def _coef_text(c: Laurent) -> tuple[str, str]:
    """Sign and body of a coefficient as it appears in front of a word."""
    if c.is_monomial():
        (e, v), = c.terms()
        sign = "-" if v < 0 else "+"
        body = str(-c if v < 0 else c)
        return sign, ("" if body == "1" else body)
    return "+", f"({c})"


def element_text(x: AlgElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for k, (w, c) in enumerate(x.terms()):
        sign, body = _coef_text(c)
        if not w:
            term = body or "1"
        elif body:
            term = f"{body} * {word_text(w)}"
        else:
            term = word_text(w)
        if k == 0:
            parts.append(("-" if sign == "-" else "") + term)
        else:
            parts.append(f" {sign} {term}")
    return "".join(parts)


def element_latex(x: AlgElement) -> str:
    if x.is_zero():
        return "0"
    parts = []
    for k, (w, c) in enumerate(x.terms()):
        if c.is_monomial():
            (e, v), = c.terms()
            sign = "-" if v < 0 else "+"
            mag = -c if v < 0 else c
            body = "" if mag == 1 else mag.latex()
        else:
            sign, body = "+", f"\\left({c.latex()}\\right)"
        wl = word_latex(w) if w else ""
        term = " ".join(p for p in (body, wl) if p) or "1"
        if k == 0:
            parts.append(("-" if sign == "-" else "") + term)
        else:
            parts.append(f" {sign} {term}")
    return "".join(parts)


@dataclass(frozen=True)
class TraceStep:
    word: str
    position: int
    rule: str

    def to_json(self) -> dict:
        return {"word": self.word, "position": self.position, "rule": self.rule}


@dataclass(frozen=True)
class Reduction:
    element: AlgElement
    unreduced: tuple[Word, ...]
    steps: int
    depth: int
    trace: tuple[TraceStep, ...] = ()


@dataclass(frozen=True)
class Certificate:
    proved: bool
    lhs: AlgElement
    rhs: AlgElement
    residual: AlgElement
    unreduced: tuple[Word, ...]
    trace: tuple[TraceStep, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.proved

    @property
    def verdict(self) -> str:
        return "proved equal" if self.proved else "not proved equal"


def _env_max_steps() -> int | None:
    raw = os.environ.get("HALLK_MAX_STEPS")
    return int(raw) if raw else None


class HallAlgebra:
    """Generators, products and rewriting over a fixed quiver.

    ``r4`` selects the loop-index patterns of the mixed commutation rule:
    ``"matching"`` (only f_{i,l} F[i,i+1] with first loop index l),
    ``"all"`` or ``"off"``.
    """

    def __init__(self, quiver: Quiver | str, r4: R4Mode = "matching"):
        if isinstance(quiver, str):
            quiver = parse_quiver(quiver)
        if r4 not in R4_MODES:
            raise ValueError(f"unknown R4 mode {r4!r}")
        self.quiver = quiver
        self.r4 = r4

    def __repr__(self) -> str:
        return f"HallAlgebra({self.quiver.text()!r}, r4={self.r4!r})"

    # grades and generators

    def word_grade(self, word: Word) -> Grade:
        for s in word:
            s.check(self.quiver)
        return word_dim(self.quiver, word), word_grade_n(word)

    def element(self, terms: Mapping[Word, Laurent | int], grade: Grade | None = None) -> AlgElement:
        return AlgElement(self, {w: _coef(c) for w, c in terms.items()}, grade)

    def word(self, *syms: Symbol, coef: Laurent | int = 1) -> AlgElement:
        return AlgElement(self, {tuple(syms): _coef(coef)})

    def f(self, i: int, l: int) -> AlgElement:
        return self.word(F.single(i, l))

    def interval(self, i: int, j: int, loops: Iterable[int]) -> AlgElement:
        return self.word(F(i, j, tuple(loops)))

    def p2(self, vertex: int, a: int, b: int) -> AlgElement:
        """Point simple with weight a w1 + b w2; zero when a < 0."""
        if a < 0:
            return self.zero((self.quiver.unit_vector(vertex, 2), a + 2 * b))
        return self.word(P2.from_omega(vertex, a, b))

    def unit(self) -> AlgElement:
        return AlgElement(self, {(): Laurent.const(1)})

    def scalar(self, c: Laurent | int) -> AlgElement:
        return AlgElement(self, {(): _coef(c)})

    def zero(self, grade: Grade | None = None) -> AlgElement:
        return AlgElement(self, {}, grade)

    # products

    def mul_free(self, x: AlgElement, y: AlgElement) -> AlgElement:
        if x.algebra.quiver != self.quiver or y.algebra.quiver != self.quiver:
            raise QuiverMismatch("elements live over a different quiver")
        grade = (tuple(a + b for a, b in zip(x.grade[0], y.grade[0])), x.grade[1] + y.grade[1])
        out: dict[Word, Laurent] = {}
        for (w1, c1), (w2, c2) in itertools.product(x.terms(), y.terms()):
            w = w1 + w2
            out[w] = out.get(w, Laurent.const(0)) + c1 * c2
        return AlgElement(self, out, grade)

    def q_bracket(self, x: AlgElement, y: AlgElement, r: int) -> AlgElement:
        """x y - q^r y x."""
        return self.mul_free(x, y) - self.mul_free(y, x).scale(Laurent.monomial({"q": r}))

    def pbwd_expand(self, i: int, j: int, loops: Iterable[int]) -> AlgElement:
        """Left-nested q-bracket tower of single-vertex generators over [i, j]."""
        loops = tuple(loops)
        if len(loops) != j - i + 1:
            raise ValueError(f"interval [{i},{j}] needs {j - i + 1} loop indices")
        acc = self.f(i, loops[0])
        for k, l in zip(range(i + 1, j + 1), loops[1:]):
            acc = self.q_bracket(acc, self.f(k, l), 1)
        return acc

    # rewriting

    def redexes(self, word: Word) -> list[tuple[int, str, list[tuple[Laurent, Word]]]]:
        out = []
        for p in range(len(word) - 1):
            hit = apply_pair(self.quiver, word[p], word[p + 1], self.r4)
            if hit is not None:
                rule, repl = hit
                out.append((p, rule, [(c, word[:p] + w + word[p + 2:]) for c, w in repl]))
        return out

    def is_flagged(self, word: Word) -> bool:
        return any(not is_canonical_pair(self.quiver, a, b) for a, b in zip(word, word[1:]))

    def normal_form(
        self,
        x: AlgElement,
        strategy: str = "leftmost",
        seed: int | None = None,
        max_steps: int | None = None,
        trace: bool = False,
    ) -> Reduction:
        """Rewrite every word to the rule fixpoint.

        ``strategy`` picks the redex inside a word: "leftmost", "rightmost"
        or "random" (seeded by ``seed``).  Words are expanded in decreasing
        termination measure, so every word is expanded at most once and all
        of its contributions are merged first.
        """
        if strategy not in ("leftmost", "rightmost", "random"):
            raise ValueError(f"unknown strategy {strategy!r}")
        if max_steps is None:
            max_steps = _env_max_steps() or DEFAULT_MAX_STEPS
        rng = random.Random(seed)
        pending: dict[Word, list] = {}
        heap: list = []

        def push(word: Word, c: Laurent, depth: int) -> None:
            entry = pending.get(word)
            if entry is None:
                pending[word] = [c, depth]
                m = measure(word)
                heapq.heappush(heap, (tuple(-v for v in m), word_key(word), word))
            else:
                entry[0] = entry[0] + c
                entry[1] = max(entry[1], depth)

        for w, c in x.terms():
            push(w, c, 0)
        done: dict[Word, Laurent] = {}
        steps = 0
        max_depth = 0
        log: list[TraceStep] = []
        while heap:
            *_, word = heapq.heappop(heap)
            c, depth = pending.pop(word)
            max_depth = max(max_depth, depth)
            if not c:
                continue
            found = self.redexes(word)
            if not found:
                done[word] = done.get(word, Laurent.const(0)) + c
                continue
            if strategy == "leftmost":
                pos, rule, repl = found[0]
            elif strategy == "rightmost":
                pos, rule, repl = found[-1]
            else:
                pos, rule, repl = rng.choice(found)
            steps += 1
            if steps > max_steps:
                raise FuelExhausted(f"more than {max_steps} rewrite steps")
            if trace:
                log.append(TraceStep(word_text(word), pos, rule))
            for k, new in repl:
                push(new, c * k, depth + 1)
        element = AlgElement(self, done, x.grade)
        unreduced = tuple(w for w in element.words() if self.is_flagged(w))
        return Reduction(element, unreduced, steps, max_depth, tuple(log))

    def nf(self, x: AlgElement, **kw) -> AlgElement:
        return self.normal_form(x, **kw).element

    def nf_product(self, *factors: AlgElement) -> AlgElement:
        """Normalize after each successive product, left to right."""
        acc = self.unit()
        for y in factors:
            acc = self.nf(self.mul_free(acc, y))
        return acc

    def nf_bracket(self, x: AlgElement, y: AlgElement, r: int) -> AlgElement:
        """q-bracket of normalized arguments, then normalized."""
        return self.nf(self.q_bracket(self.nf(x), self.nf(y), r))

    def verify_identity(
        self, lhs: AlgElement, rhs: AlgElement, at: Mapping[str, Laurent | int] | None = None, **kw
    ) -> Certificate:
        """Normalize lhs - rhs; proved iff the result is zero.

        ``at`` specializes coefficients (e.g. ``{"t": 1}``) after rewriting,
        which checks the identity in the specialized algebra: the rule
        coefficients are specialized along with the inputs.
        """
        if not lhs.is_zero() and not rhs.is_zero() and lhs.grade != rhs.grade:
            raise GradeError(f"grades differ: {lhs.grade} vs {rhs.grade}")
        red = self.normal_form(lhs - rhs, trace=True, **kw)
        residual = red.element if at is None else specialize_element(red.element, at)
        return Certificate(residual.is_zero(), lhs, rhs, residual, red.unreduced, red.trace)

    # serialization

    def from_json(self, obj: Mapping) -> AlgElement:
        a = tuple(obj["grade"]["a"])
        n = obj["grade"]["n"]
        terms = {}
        for item in obj["words"]:
            w = tuple(symbol_from_json(s) for s in item["syms"])
            terms[w] = Laurent({tuple(r[:-1]): r[-1] for r in item["coef"]["num"]}, QT)
        return AlgElement(self, terms, (a, n))


def specialize_element(x: AlgElement, assignments: Mapping[str, Laurent | int]) -> AlgElement:
    """Substitute into every coefficient; results must stay Laurent."""

    def fn(c: Laurent) -> Laurent:
        r = specialize(c, assignments)
        if not r.is_laurent():
            raise ValueError("specialization left a denominator")
        return r.num

    return x.map_coefficients(fn)

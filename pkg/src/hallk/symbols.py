"""Generator symbols and words.

``F(i, j, loops)`` is the interval generator; ``F(i, i, (l,))`` is the
single-vertex generator ``f_{i,l}``.  ``P2(vertex, m1, m2)`` is the point
simple of the rank-two nilpotent cone with dominant weight ``a w1 + b w2``,
stored as ``m1 = a + b``, ``m2 = b``.  Words are tuples of symbols; the unit
is the empty word.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .quiver import DimVector, Quiver


@dataclass(frozen=True)
class F:
    i: int
    j: int
    loops: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "loops", tuple(int(x) for x in self.loops))
        if self.i > self.j:
            raise ValueError(f"empty interval [{self.i},{self.j}]")
        if len(self.loops) != self.j - self.i + 1:
            raise ValueError(f"interval [{self.i},{self.j}] needs {self.j - self.i + 1} loop indices")

    @classmethod
    def single(cls, i: int, l: int) -> F:
        return cls(i, i, (l,))

    @property
    def is_single(self) -> bool:
        return self.i == self.j

    @property
    def l(self) -> int:
        """Loop index of a single-vertex generator."""
        if not self.is_single:
            raise AttributeError("interval generator has several loop indices")
        return self.loops[0]

    def key(self) -> tuple:
        return (0, self.i, self.j, self.loops)

    def dim(self, quiver: Quiver) -> DimVector:
        return tuple(1 if self.i <= v <= self.j else 0 for v in quiver.vertices)

    def grade_n(self) -> int:
        return sum(self.loops)

    def check(self, quiver: Quiver) -> None:
        if not (1 <= self.i and self.j <= quiver.vertex_count):
            raise ValueError(f"interval [{self.i},{self.j}] outside the quiver")

    def text(self) -> str:
        idx = f"{self.i}" if self.is_single else f"{self.i},{self.j}"
        return f"f[{idx}](" + ",".join(map(str, self.loops)) + ")"

    def latex(self) -> str:
        if self.is_single:
            return f"f_{{{self.i},{self.l}}}"
        return f"f_{{[{self.i},{self.j}],(" + ",".join(map(str, self.loops)) + ")}"

    def to_json(self) -> dict:
        return {"kind": "F", "interval": [self.i, self.j], "loops": list(self.loops)}


@dataclass(frozen=True)
class P2:
    vertex: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.m1 < self.m2:
            raise ValueError(f"weight ({self.m1},{self.m2}) is not dominant")

    @classmethod
    def from_omega(cls, vertex: int, a: int, b: int) -> P2:
        """Weight a*w1 + b*w2."""
        return cls(vertex, a + b, b)

    @property
    def a(self) -> int:
        return self.m1 - self.m2

    @property
    def b(self) -> int:
        return self.m2

    def key(self) -> tuple:
        return (1, self.vertex, self.a, self.b)

    def dim(self, quiver: Quiver) -> DimVector:
        return quiver.unit_vector(self.vertex, 2)

    def grade_n(self) -> int:
        return self.m1 + self.m2

    def check(self, quiver: Quiver) -> None:
        if not 1 <= self.vertex <= quiver.vertex_count:
            raise ValueError(f"vertex {self.vertex} outside the quiver")

    def text(self) -> str:
        return f"P2[{self.vertex}]({self.a},{self.b})"

    def latex(self) -> str:
        parts = []
        for coef, name in ((self.a, r"\omega_1"), (self.b, r"\omega_2")):
            if coef == 0:
                continue
            c = "" if coef == 1 else "-" if coef == -1 else str(coef)
            parts.append(f"{c}{name}")
        weight = "+".join(parts).replace("+-", "-") or "0"
        return rf"\mathcal{{P}}^{{({self.vertex})}}_{{2,{weight}}}"

    def to_json(self) -> dict:
        return {"kind": "P2", "vertex": self.vertex, "weight": [self.a, self.b]}


class _Unit:
    """The unit symbol; it never appears inside a stored word."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNIT"

    def text(self) -> str:
        return "1"

    def latex(self) -> str:
        return "1"


UNIT = _Unit()

Symbol = Union[F, P2]
Word = tuple[Symbol, ...]


def symbol_from_json(obj: dict) -> Symbol:
    if obj["kind"] == "F":
        i, j = obj["interval"]
        return F(i, j, tuple(obj["loops"]))
    if obj["kind"] == "P2":
        a, b = obj["weight"]
        return P2.from_omega(obj["vertex"], a, b)
    raise ValueError(f"unknown symbol kind {obj['kind']!r}")


def word_key(word: Word) -> tuple:
    return tuple(s.key() for s in word)


def word_dim(quiver: Quiver, word: Word) -> DimVector:
    out = [0] * quiver.vertex_count
    for s in word:
        for k, x in enumerate(s.dim(quiver)):
            out[k] += x
    return tuple(out)


def word_grade_n(word: Word) -> int:
    return sum(s.grade_n() for s in word)


def word_text(word: Word) -> str:
    return "*".join(s.text() for s in word) if word else "1"


def word_latex(word: Word) -> str:
    return " ".join(s.latex() for s in word) if word else "1"

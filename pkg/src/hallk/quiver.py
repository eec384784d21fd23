"""Quivers, dimension vectors and the shift calculus of Hall products.

Vertices are numbered from 1.  A dimension vector is a plain tuple of
non-negative ints, indexed by ``vertex - 1``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

from .coeff import Laurent

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a quiver needs at least one vertex")
        object.__setattr__(self, "edges", tuple(tuple(e) for e in self.edges))
        for tail, head in self.edges:
            if not (1 <= tail <= self.vertex_count and 1 <= head <= self.vertex_count):
                raise ValueError(f"edge {tail}>{head} out of range")

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def edge_count(self, tail: int, head: int) -> int:
        return sum(1 for e in self.edges if e == (tail, head))

    def has_loop(self, i: int) -> bool:
        return self.edge_count(i, i) > 0

    def is_oriented_chain(self, i: int, j: int) -> bool:
        """True when vertices i..j carry exactly the edges m -> m+1, once each.

        Edges leaving the interval are allowed; edges inside it must be
        exactly the chain.
        """
        inside = [e for e in self.edges if i <= e[0] <= j and i <= e[1] <= j]
        return sorted(inside) == [(m, m + 1) for m in range(i, j)]

    def dim(self, entries: Sequence[int]) -> DimVector:
        a = tuple(int(x) for x in entries)
        if len(a) != self.vertex_count:
            raise ValueError(f"dimension vector {a} has wrong length for {self.vertex_count} vertices")
        if any(x < 0 for x in a):
            raise ValueError(f"dimension vector {a} has a negative entry")
        return a

    def unit_vector(self, i: int, mult: int = 1) -> DimVector:
        return tuple(mult if k == i else 0 for k in self.vertices)

    def zero(self) -> DimVector:
        return (0,) * self.vertex_count

    def text(self) -> str:
        if self == jordan():
            return "jordan"
        if self == type_a(self.vertex_count):
            return f"A{self.vertex_count}"
        return f"v={self.vertex_count}; e=" + ",".join(f"{a}>{b}" for a, b in self.edges)


def type_a(n: int) -> Quiver:
    """Linear quiver 1 -> 2 -> ... -> n."""
    return Quiver(n, tuple((i, i + 1) for i in range(1, n)))


def jordan() -> Quiver:
    return Quiver(1, ((1, 1),))


_EXPLICIT = re.compile(r"^\s*v\s*=\s*(\d+)\s*;\s*e\s*=\s*(.*)$")


def parse_quiver(text: str) -> Quiver:
    """Read "A<n>", "jordan" or "v=<n>; e=1>2,2>3"."""
    s = text.strip()
    if s.lower() == "jordan":
        return jordan()
    m = re.fullmatch(r"A(\d+)", s)
    if m:
        return type_a(int(m.group(1)))
    m = _EXPLICIT.match(s)
    if m:
        n = int(m.group(1))
        edges = []
        for part in filter(None, (p.strip() for p in m.group(2).split(","))):
            tail, _, head = part.partition(">")
            if not head:
                raise ValueError(f"bad edge {part!r}")
            edges.append((int(tail), int(head)))
        return Quiver(n, tuple(edges))
    raise ValueError(f"unrecognized quiver {text!r}")


def _check(a: DimVector, b: DimVector, quiver: Quiver | None = None):
    if len(a) != len(b):
        raise ValueError(f"dimension vectors {a} and {b} differ in size")
    if quiver is not None and len(a) != quiver.vertex_count:
        raise ValueError(f"dimension vector {a} does not match the quiver")


def euler_u(a: DimVector, b: DimVector) -> int:
    _check(a, b)
    return sum(x * y for x, y in zip(a, b))


def euler_v(quiver: Quiver, a: DimVector, b: DimVector) -> int:
    _check(a, b, quiver)
    return sum(a[tail - 1] * b[head - 1] for tail, head in quiver.edges)


@dataclass(frozen=True, order=True)
class ShiftTriple:
    """Cohomological, loop and scaling shift ``[c]{l}<s>``."""

    c: int = 0
    l: int = 0
    s: int = 0

    def __add__(self, other: ShiftTriple) -> ShiftTriple:
        return ShiftTriple(self.c + other.c, self.l + other.l, self.s + other.s)

    def __neg__(self) -> ShiftTriple:
        return ShiftTriple(-self.c, -self.l, -self.s)

    def __sub__(self, other: ShiftTriple) -> ShiftTriple:
        return self + (-other)

    def __str__(self) -> str:
        return f"[{self.c}]{{{self.l}}}<{self.s}>"


def kfactor(sh: ShiftTriple, vars: Sequence[str] = ("q", "t")) -> Laurent:
    """Grothendieck-group image of a shift: (-1)^c q^l t^s."""
    sign = -1 if sh.c % 2 else 1
    return Laurent.monomial({"q": sh.l, "t": sh.s}, sign, vars)


def hall_shift(quiver: Quiver, a: DimVector, b: DimVector) -> ShiftTriple:
    u = euler_u(a, b)
    return ShiftTriple(u, -u - euler_v(quiver, a, b), 0)


def hall_shift_factor(quiver: Quiver, a: DimVector, b: DimVector) -> Laurent:
    return kfactor(hall_shift(quiver, a, b))


def koszul_normalize(sh: ShiftTriple) -> ShiftTriple:
    """Representative modulo [1]<-1> with zero cohomological part."""
    return ShiftTriple(0, sh.l, sh.s + sh.c)

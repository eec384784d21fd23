"""Labels of simple objects: nilpotent orbits and stabilizer data.

Orbits in a product of nilpotent cones are tuples of partitions, one per
vertex.  Weight labels are only enumerated for the zero orbit (dominant
weights of the full group) and for the principal orbit at a single vertex
(the character lattice of its stabilizer); any other orbit gets an opaque
label.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from sympy import Matrix, zeros

from .quiver import DimVector, ShiftTriple, koszul_normalize

Partition = tuple[int, ...]


def partitions(m: int, largest: int | None = None) -> list[Partition]:
    """All partitions of m in reverse lexicographic order."""
    if m == 0:
        return [()]
    largest = m if largest is None else largest
    out = []
    for first in range(min(m, largest), 0, -1):
        for rest in partitions(m - first, first):
            out.append((first,) + rest)
    return out


def conjugate(lam: Partition) -> Partition:
    return tuple(sum(1 for p in lam if p > k) for k in range(lam[0])) if lam else ()


def _check_partition(lam: Partition) -> None:
    if any(p <= 0 for p in lam) or any(a < b for a, b in zip(lam, lam[1:])):
        raise ValueError(f"{lam} is not a partition")


def orbit_dim(orbit: Sequence[Partition]) -> int:
    """Dimension of the nilpotent orbit: sum of a_i^2 - sum (conjugate parts)^2."""
    total = 0
    for lam in orbit:
        _check_partition(lam)
        a = sum(lam)
        total += a * a - sum(p * p for p in conjugate(lam))
    return total


def jordan_matrix(lam: Partition) -> Matrix:
    n = sum(lam)
    J = zeros(n, n)
    pos = 0
    for block in lam:
        for k in range(block - 1):
            J[pos + k, pos + k + 1] = 1
        pos += block
    return J


def centralizer_dim(lam: Partition) -> int:
    """Dimension of {X : XJ = JX} by exact rank of X -> XJ - JX."""
    n = sum(lam)
    if n == 0:
        return 0
    J = jordan_matrix(lam)
    cols = []
    for a, b in itertools.product(range(n), repeat=2):
        E = zeros(n, n)
        E[a, b] = 1
        C = E * J - J * E
        cols.append(list(C))
    op = Matrix(cols).T
    return n * n - op.rank()


def dominance_leq(lam: Partition, mu: Partition) -> bool:
    """lam <= mu in dominance order (partial sums of lam never exceed mu's)."""
    if sum(lam) != sum(mu):
        raise ValueError("partitions of different sizes")
    s1 = s2 = 0
    for k in range(max(len(lam), len(mu))):
        s1 += lam[k] if k < len(lam) else 0
        s2 += mu[k] if k < len(mu) else 0
        if s1 > s2:
            return False
    return True


@dataclass(frozen=True)
class ZeroOrbitWeight:
    """Dominant weight of the full group, one weakly decreasing tuple per vertex."""

    weights: tuple[tuple[int, ...], ...]

    def grade(self) -> int:
        return sum(map(sum, self.weights))


@dataclass(frozen=True)
class PrincipalChar:
    n: int

    def grade(self) -> int:
        return self.n


@dataclass(frozen=True)
class Opaque:
    text: str

    def grade(self) -> None:
        return None


WeightLabel = Union[ZeroOrbitWeight, PrincipalChar, Opaque]


@dataclass(frozen=True)
class SimpleLabel:
    orbit: tuple[Partition, ...]
    weight: WeightLabel
    shift: ShiftTriple

    def __post_init__(self):
        if self.shift.c != 0:
            raise ValueError("stored shifts are Koszul-normalized")

    @property
    def dim_vector(self) -> DimVector:
        return tuple(sum(p) for p in self.orbit)

    @property
    def orbit_dim(self) -> int:
        return orbit_dim(self.orbit)

    def to_json(self) -> dict:
        w = self.weight
        if isinstance(w, ZeroOrbitWeight):
            wj = {"kind": "zero-orbit", "weights": [list(x) for x in w.weights]}
        elif isinstance(w, PrincipalChar):
            wj = {"kind": "principal", "n": w.n}
        else:
            wj = {"kind": "opaque", "text": w.text}
        return {
            "orbit": [list(p) for p in self.orbit],
            "weight": wj,
            "grade": w.grade(),
            "orbit_dim": self.orbit_dim,
            "shift": [self.shift.c, self.shift.l, self.shift.s],
        }


def simple_shift(orbit: Sequence[Partition], normalized: bool = False) -> ShiftTriple:
    """Half-dimension shift of the orbit: [d/2]{-d/2}."""
    d = orbit_dim(orbit)
    if d % 2:
        raise ArithmeticError(f"odd orbit dimension {d} for {orbit}")
    sh = ShiftTriple(d // 2, -(d // 2), 0)
    return koszul_normalize(sh) if normalized else sh


def _label(orbit: tuple[Partition, ...], weight: WeightLabel) -> SimpleLabel:
    return SimpleLabel(orbit, weight, simple_shift(orbit, normalized=True))


def principal_char(m: int, n: int) -> SimpleLabel:
    """Principal orbit at a single vertex of size m with stabilizer character n."""
    if m < 1:
        raise ValueError("m must be at least 1")
    if m == 1:
        return _label(((1,),), ZeroOrbitWeight(((n,),)))
    return _label(((m,),), PrincipalChar(n))


def _dominant(size: int, lo: int, hi: int) -> Iterable[tuple[int, ...]]:
    return (tuple(reversed(c)) for c in itertools.combinations_with_replacement(range(lo, hi + 1), size))


def enumerate_simple_labels(a: Sequence[int], grade_range: tuple[int, int]) -> list[SimpleLabel]:
    """All simple labels of dimension vector ``a``.

    Zero orbit: dominant weights with every entry in ``grade_range``.
    Principal orbit at a single vertex: characters n in ``grade_range``.
    Other orbits: one opaque label each.
    """
    lo, hi = grade_range
    out: list[SimpleLabel] = []
    support = [k for k, x in enumerate(a) if x]
    for orbit in itertools.product(*(partitions(x) for x in a)):
        if all(all(p == 1 for p in lam) for lam in orbit):
            for ws in itertools.product(*(_dominant(x, lo, hi) for x in a)):
                out.append(_label(orbit, ZeroOrbitWeight(ws)))
        elif len(support) == 1 and orbit[support[0]] == (a[support[0]],):
            for n in range(lo, hi + 1):
                out.append(_label(orbit, PrincipalChar(n)))
        else:
            text = ";".join(",".join(map(str, lam)) for lam in orbit)
            out.append(_label(orbit, Opaque(f"orbit {text}")))
    return out

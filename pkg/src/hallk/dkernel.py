"""Finite models of derived kernels.

Classical kernels of equivariant maps, the block-diagram cancellation check
for short exact sequences of maps, and the Koszul alternating sum
``prod(1 - image(w))`` over a list of dual weights.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from sympy import Matrix, Rational, zeros

from .coeff import Laurent, RationalChar
from .quiver import ShiftTriple, kfactor


class DiagramError(ValueError):
    """The diagram does not commute or a row is not exact."""


Weight = tuple[Laurent, ShiftTriple]


def _matrix(rows) -> Matrix:
    if isinstance(rows, Matrix):
        return rows
    return Matrix([[Rational(Fraction(x).numerator, Fraction(x).denominator) for x in row] for row in rows])


@dataclass(frozen=True)
class WeightedMap:
    """A linear map with optional weight labels on source and target bases."""

    matrix: Matrix
    source_weights: tuple[Weight, ...] | None = None
    target_weights: tuple[Weight, ...] | None = None
    equivariant: bool = field(default=False)

    def __post_init__(self):
        object.__setattr__(self, "matrix", _matrix(self.matrix))
        m = self.matrix
        if self.source_weights is not None and len(self.source_weights) != m.cols:
            raise ValueError("source weights do not match the column count")
        if self.target_weights is not None and len(self.target_weights) != m.rows:
            raise ValueError("target weights do not match the row count")
        if self.equivariant:
            if self.source_weights is None or self.target_weights is None:
                raise ValueError("an equivariant map needs weights on both sides")
            for i, j in itertools.product(range(m.rows), range(m.cols)):
                if m[i, j] != 0 and self.target_weights[i] != self.source_weights[j]:
                    raise ValueError(f"entry ({i},{j}) links different weights")

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows


def classical_kernel(s: WeightedMap) -> list[Matrix]:
    """Exact basis of the kernel, as column vectors."""
    if s.matrix.rows == 0:
        return [Matrix.eye(s.source_dim)[:, k] for k in range(s.source_dim)]
    return s.matrix.nullspace()


def rank(s: WeightedMap | Matrix) -> int:
    m = s.matrix if isinstance(s, WeightedMap) else s
    if m.rows == 0 or m.cols == 0:
        return 0
    return m.rank()


def _kernel_matrix(m: Matrix) -> Matrix:
    basis = m.nullspace() if m.rows else [Matrix.eye(m.cols)[:, k] for k in range(m.cols)]
    if not basis:
        return zeros(m.cols, 0)
    return Matrix.hstack(*basis)


def cancel_check(
    s1: WeightedMap,
    s2: WeightedMap,
    s3: WeightedMap,
    incl_source: Matrix | None = None,
    proj_source: Matrix | None = None,
    incl_target: Matrix | None = None,
    proj_target: Matrix | None = None,
) -> bool:
    """Compare ker(s2) with ker(s3) for a map of short exact sequences.

    Rows are ``0 -> V1 -> V2 -> V3 -> 0`` (sources) and ``W1 -> W2 -> W3``
    (targets).  Without explicit inclusion/projection matrices the split
    block form ``V2 = V1 + V3`` is assumed, so ``s2 = [[s1, B], [0, s3]]``.
    Returns True iff the projection maps ker(s2) bijectively onto ker(s3).
    """
    n1, n3 = s1.source_dim, s3.source_dim
    m1, m3 = s1.target_dim, s3.target_dim
    if s2.source_dim != n1 + n3 or s2.target_dim != m1 + m3:
        raise DiagramError("middle map has the wrong size for the rows")
    iV = _matrix(incl_source) if incl_source is not None else Matrix.vstack(Matrix.eye(n1), zeros(n3, n1))
    pV = _matrix(proj_source) if proj_source is not None else Matrix.hstack(zeros(n3, n1), Matrix.eye(n3))
    iW = _matrix(incl_target) if incl_target is not None else Matrix.vstack(Matrix.eye(m1), zeros(m3, m1))
    pW = _matrix(proj_target) if proj_target is not None else Matrix.hstack(zeros(m3, m1), Matrix.eye(m3))
    for inc, proj, small, big in ((iV, pV, n1, n1 + n3), (iW, pW, m1, m1 + m3)):
        if inc.shape != (big, small) or proj.shape != (big - small, big):
            raise DiagramError("row maps have the wrong shape")
        if any(proj * inc) or rank(inc) != small or rank(proj) != big - small:
            raise DiagramError("rows not exact")
    A1, A2, A3 = s1.matrix, s2.matrix, s3.matrix
    if A2 * iV != iW * A1 or A3 * pV != pW * A2:
        raise DiagramError("diagram does not commute")
    K2 = _kernel_matrix(A2)
    K3 = _kernel_matrix(A3)
    if K2.cols != K3.cols:
        return False
    # pV sends ker s2 into ker s3 by commutativity; bijective iff injective.
    return rank(pV * K2) == K2.cols if K2.cols else True


def random_invertible(n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        m = Matrix(n, n, lambda i, j: Rational(rng.randint(lo, hi), rng.randint(1, 3)))
        if n == 0 or m.det() != 0:
            return m


def random_matrix(rows: int, cols: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    m = Matrix(rows, cols, lambda i, j: Rational(rng.randint(lo, hi), rng.randint(1, 3)))
    if rows and cols and rng.random() < 0.4:
        # force a rank drop now and then so kernels are nontrivial
        k = rng.randrange(rows)
        m[k, :] = zeros(1, cols)
    return m


def random_diagram(rng: random.Random, max_dim: int = 5, invertible: bool = True):
    """A random map of short exact sequences in a non-split basis.

    Returns the keyword arguments for ``cancel_check``.
    """
    n1 = rng.randint(1, max(1, max_dim // 2))
    n3 = rng.randint(0, max_dim - n1)
    m3 = rng.randint(0, max_dim - n1)
    A1 = random_invertible(n1, rng) if invertible else random_matrix(n1, n1, rng)
    A3 = random_matrix(m3, n3, rng)
    B = random_matrix(n1, n3, rng)
    A2 = Matrix.vstack(Matrix.hstack(A1, B), Matrix.hstack(zeros(m3, n1), A3))
    P = random_invertible(n1 + n3, rng)
    Q = random_invertible(n1 + m3, rng)
    iV = Matrix.vstack(Matrix.eye(n1), zeros(n3, n1))
    pV = Matrix.hstack(zeros(n3, n1), Matrix.eye(n3))
    iW = Matrix.vstack(Matrix.eye(n1), zeros(m3, n1))
    pW = Matrix.hstack(zeros(m3, n1), Matrix.eye(m3))
    return dict(
        s1=WeightedMap(A1),
        s2=WeightedMap(Q * A2 * P.inv()),
        s3=WeightedMap(A3),
        incl_source=P * iV,
        proj_source=pV * P.inv(),
        incl_target=Q * iW,
        proj_target=pW * Q.inv(),
    )


def find_singular_counterexample(bound: int = 1):
    """Search small split diagrams for one where cancellation fails.

    Scans s1 (1x1), s3 (1x1) and the off-diagonal block over entries in
    [-bound, bound] and returns the first triple (s1, s2, s3) with
    ``cancel_check`` false, or None.
    """
    vals = range(-bound, bound + 1)
    for a, c, b in itertools.product(vals, repeat=3):
        s1 = WeightedMap(Matrix([[a]]))
        s3 = WeightedMap(Matrix([[c]]))
        s2 = WeightedMap(Matrix([[a, b], [0, c]]))
        if not cancel_check(s1, s2, s3):
            return s1, s2, s3
    return None


def koszul_sum(dual_weights: Sequence[Weight], vars: Sequence[str] | None = None) -> RationalChar:
    """Alternating sum of exterior powers: prod over w of (1 - kfactor(shift) * w)."""
    if vars is None:
        vars = dual_weights[0][0].vars if dual_weights else ("q", "t")
    vars = tuple(vars)
    out = Laurent.const(1, vars)
    for char, sh in dual_weights:
        out = out * (1 - kfactor(sh, vars) * char.with_vars(vars))
    return RationalChar(out, 1, vars)


def dual_weight(w: Weight) -> Weight:
    """Dual line: inverse character, negated loop and scaling shifts."""
    char, sh = w
    return char ** -1, ShiftTriple(sh.c, -sh.l, -sh.s)

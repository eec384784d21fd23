import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy import Matrix

from hallk.coeff import Laurent
from hallk.dkernel import (
    DiagramError,
    WeightedMap,
    cancel_check,
    classical_kernel,
    dual_weight,
    find_singular_counterexample,
    koszul_sum,
    random_diagram,
    rank,
)
from hallk.quiver import ShiftTriple

R = ("q", "t", "r1", "r2")
ratio = Laurent.monomial({"r1": 1, "r2": -1}, 1, R)


def mono(**e):
    return Laurent.monomial(e, 1, R)


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-2, 2), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@given(matrices)
@settings(max_examples=200, deadline=None)
def test_rank_nullity(rows):
    s = WeightedMap(rows)
    assert rank(s) + len(classical_kernel(s)) == s.source_dim
    for v in classical_kernel(s):
        assert s.matrix * v == Matrix.zeros(s.target_dim, 1)


def test_equivariance_is_checked():
    w = (mono(r1=1), ShiftTriple())
    u = (mono(r2=1), ShiftTriple())
    WeightedMap([[1]], (w,), (w,), equivariant=True)
    with pytest.raises(ValueError):
        WeightedMap([[1]], (w,), (u,), equivariant=True)


def test_cancellation_on_random_invertible_diagrams():
    rng = random.Random(7)
    for _ in range(200):
        assert cancel_check(**random_diagram(rng))


def test_singular_counterexample():
    found = find_singular_counterexample()
    assert found is not None
    s1, s2, s3 = found
    assert s1.matrix.det() == 0
    assert not cancel_check(s1, s2, s3)
    # hand-built: s1 = 0 kills V1, s3 = 1 is injective, so ker(s2) is bigger
    assert not cancel_check(WeightedMap([[0]]), WeightedMap([[0, 0], [0, 1]]), WeightedMap([[1]]))


def test_non_commuting_diagram_rejected():
    with pytest.raises(DiagramError, match="commute"):
        cancel_check(WeightedMap([[1]]), WeightedMap([[2, 0], [0, 1]]), WeightedMap([[1]]))


def test_inexact_rows_rejected():
    with pytest.raises(DiagramError, match="exact"):
        cancel_check(
            WeightedMap([[1]]),
            WeightedMap([[1, 0], [0, 1]]),
            WeightedMap([[1]]),
            proj_source=Matrix([[1, 0]]),
        )


def test_koszul_excess_factor():
    got = koszul_sum([(ratio, ShiftTriple(0, -1, -1))], R)
    assert got == 1 - mono(q=-1, t=-1, r1=1, r2=-1)


def test_koszul_examples():
    assert koszul_sum([], R) == 1
    assert koszul_sum([(ratio, ShiftTriple())], R) == 1 - ratio
    assert koszul_sum([(ratio, ShiftTriple(0, 1, -1))], R) == 1 - mono(q=1, t=-1, r1=1, r2=-1)


weights = st.lists(
    st.builds(
        lambda a, b, l, s: (mono(r1=a, r2=b), ShiftTriple(0, l, s)),
        st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2),
    ),
    max_size=3,
)


@given(weights, weights)
@settings(max_examples=100, deadline=None)
def test_koszul_multiplicative(a, b):
    assert koszul_sum(a + b, R) == koszul_sum(a, R) * koszul_sum(b, R)


def test_dual_weight_involution():
    w = (mono(r1=2, r2=-1), ShiftTriple(0, 3, -2))
    assert dual_weight(dual_weight(w)) == w

import itertools

import pytest

from hallk.algebra import HallAlgebra
from hallk.coeff import Laurent, RationalChar, series
from hallk.oracle import (
    A1_VARS,
    IDENTITIES,
    CharClass,
    UncoveredGrade,
    a1_char_p,
    a1_push,
    a1_word,
    a2_char_of_w,
    a2_f1f2,
    a2_f2f1,
    a2_fbox,
    a2_origin,
    char_w_series,
    cross_check,
    nilcone_char,
    nilcone_series,
    total_degree,
)
from hallk.symbols import F

BOX = list(itertools.product(range(-4, 5), repeat=2))


@pytest.mark.parametrize("name", sorted(IDENTITIES))
def test_identity_holds_on_box(name):
    ident = IDENTITIES[name]
    checked = 0
    for l, lp in BOX:
        if ident.domain(l, lp):
            ok, lhs, rhs = ident.check(l, lp)
            assert ok, (name, l, lp, str(lhs), str(rhs))
            checked += 1
    assert checked >= 45


def test_identity_domain_enforced():
    with pytest.raises(ValueError):
        IDENTITIES["a1-ascending"].check(2, 0)


def test_a1_classes_symmetric():
    for l, lp in BOX:
        v = a1_push(l, lp).value
        assert v.permute({"x1": "x2", "x2": "x1"}) == v


def test_a1_push_homogeneous():
    for l, lp in BOX:
        assert total_degree(a1_word(l, lp).value, ("x1", "x2")) == l + lp
    assert total_degree(a1_char_p(3, 1).value, ("x1", "x2")) == 5


def test_a2_classes_homogeneous():
    for l, lp in BOX:
        for cls in (a2_f1f2(l, lp), a2_f2f1(l, lp), a2_fbox(l, lp)):
            assert total_degree(cls.value, ("r1", "r2")) == l + lp


def test_char_p_small():
    x = lambda **e: Laurent.monomial(e, 1, A1_VARS)  # noqa: E731
    assert a1_char_p(0, 0) == CharClass("A1Rank2", RationalChar(Laurent.const(1, A1_VARS)))
    assert a1_char_p(1, 0).value == RationalChar(x(x1=1) + x(x2=1))
    assert a1_char_p(-1, 4).value.is_zero()


def test_origin_has_class_one():
    assert a2_origin().value == 1


def test_char_w_series_geometric():
    u = Laurent.monomial({"q": 1, "t": -1, "r1": 1, "r2": -1}, 1, a2_char_of_w().value.vars)
    assert char_w_series(4) == sum((u ** k for k in range(5)), Laurent.const(0, u.vars))


def test_nilcone_closed_form_against_rank_count():
    brute = nilcone_series(4)
    closed = series(nilcone_char(0).value, {"q": -1}, 8)
    assert brute == closed
    # dimensions of C[N_2] by degree: 1, 3, 5, 7, 9
    by_degree = {}
    for e, c in brute.terms():
        by_degree[-e[0] // 2] = by_degree.get(-e[0] // 2, 0) + c
    assert by_degree == {0: 1, 1: 3, 2: 5, 3: 7, 4: 9}


def test_models_do_not_mix():
    with pytest.raises(ValueError):
        _ = a1_push(0, 0) + a2_fbox(0, 0)


def test_cross_check_examples():
    A2 = HallAlgebra("A2")
    q = Laurent.monomial({"q": 1})
    lhs = A2.q_bracket(A2.f(1, 2), A2.f(2, -1), 1)
    assert cross_check(lhs, A2.interval(1, 2, (2, -1)).scale(q ** -1 - q))
    assert not cross_check(lhs, A2.interval(1, 2, (2, -1)).scale(q ** -1))


def test_uncovered_grade():
    A3 = HallAlgebra("A3")
    x = A3.word(F(1, 3, (0, 0, 0)))
    with pytest.raises(UncoveredGrade, match=r"f\[1,3\]"):
        cross_check(x)
    A2 = HallAlgebra("A2")
    with pytest.raises(UncoveredGrade):
        cross_check(A2.word(F.single(1, 0), F(1, 2, (0, 0))))

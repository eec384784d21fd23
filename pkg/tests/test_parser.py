import random

import pytest

from hallk.algebra import GradeError, HallAlgebra
from hallk.coeff import Laurent
from hallk.parser import ExprSyntaxError, parse_expr, parse_tree
from hallk.symbols import F, P2
from strategies import random_element

A2 = HallAlgebra("A2")
q = Laurent.monomial({"q": 1})


def test_word():
    x = parse_expr("f[1](0) * f[2](0)", A2)
    assert x == A2.word(F.single(1, 0), F.single(2, 0))


def test_bracket_expands():
    x = parse_expr("[f[1](0), f[2](0)]_q^1", A2)
    assert x == A2.f(1, 0) * A2.f(2, 0) - (A2.f(2, 0) * A2.f(1, 0)).scale(q)


def test_grade_mismatch():
    with pytest.raises(GradeError):
        parse_expr("f[1,2](0,0) + f[1](0)")


def test_default_quiver_is_inferred():
    assert parse_expr("f[3](1)").algebra.quiver.vertex_count == 3


def test_coefficients_and_signs():
    x = parse_expr("-q^-2*t*f[1](0) + 3*f[1](0)", A2)
    assert x == A2.f(1, 0).scale(3 - q ** -2 * Laurent.monomial({"t": 1}))
    assert parse_expr("(q^-1 - q) * f[1,2](0,-1)", A2) == A2.interval(1, 2, (0, -1)).scale(q ** -1 - q)


def test_p2_uses_omega_coordinates():
    x = parse_expr("P2[1](2,-1)", HallAlgebra("A1"))
    assert x.words() == [(P2.from_omega(1, 2, -1),)]
    assert x.words()[0][0].m1 == 1 and x.words()[0][0].m2 == -1


@pytest.mark.parametrize(
    "text,position",
    [
        ("f[1](0) *", 9),
        ("f[1](0) + + f[1](1)", 10),
        ("f[1(0)", 3),
        ("g[1](0)", 0),
        ("f[1](0) f[1](1)", 8),
        ("P2[1](-1,0)", 0),
        ("[f[1](0), f[2](0)]_q", 20),
        ("f[1](0) $", 8),
    ],
)
def test_syntax_error_positions(text, position):
    with pytest.raises(ExprSyntaxError) as info:
        parse_tree(text)
    assert info.value.position == position


def test_random_round_trip():
    rng = random.Random(13)
    algs = [HallAlgebra(f"A{n}") for n in (1, 2, 3)]
    for _ in range(500):
        alg = rng.choice(algs)
        x = random_element(rng, alg)
        text = str(x)
        y = parse_expr(text, alg)
        assert y == x, text
        assert str(y) == text

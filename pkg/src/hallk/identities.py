"""Named identities as (lhs, rhs) pairs of algebra elements."""
from __future__ import annotations

from typing import Callable, Sequence

from .algebra import AlgElement, HallAlgebra
from .coeff import Laurent

Pair = tuple[AlgElement, AlgElement]

_q = Laurent.monomial({"q": 1})
_t = Laurent.monomial({"t": 1})
Q_DIFF = _q ** -1 - _q


def adjacent_bracket(alg: HallAlgebra, i: int, l: int, lp: int) -> Pair:
    """[f_{i,l}, f_{i+1,lp}]_q = (q^-1 - q) f_{[i,i+1],(l,lp)}."""
    lhs = alg.q_bracket(alg.f(i, l), alg.f(i + 1, lp), 1)
    return lhs, alg.interval(i, i + 1, (l, lp)).scale(Q_DIFF)


def u3(alg: HallAlgebra, i: int, l: int, lp: int) -> Pair:
    """q^-1 f_{i,l+1} f_{i+1,lp} - t f_{i,l} f_{i+1,lp+1}
    = f_{i+1,lp} f_{i,l+1} - t q^-1 f_{i+1,lp+1} f_{i,l}."""
    f = alg.f
    lhs = (f(i, l + 1) * f(i + 1, lp)).scale(_q ** -1) - (f(i, l) * f(i + 1, lp + 1)).scale(_t)
    rhs = f(i + 1, lp) * f(i, l + 1) - (f(i + 1, lp + 1) * f(i, l)).scale(_t * _q ** -1)
    return lhs, rhs


def serre(alg: HallAlgebra, i: int, l: int, lp: int, structured: bool = True) -> Pair:
    """[f_{i,l}, [f_{i,l}, f_{i+1,lp}]_q]_{q^-1} = 0.

    With ``structured`` the inner bracket is normalized before the outer
    bracket is formed; otherwise the free expansion is returned.
    """
    x, y = alg.f(i, l), alg.f(i + 1, lp)
    if structured:
        lhs = alg.nf_bracket(x, alg.nf_bracket(x, y, 1), -1)
    else:
        lhs = alg.q_bracket(x, alg.q_bracket(x, y, 1), -1)
    return lhs, alg.zero(lhs.grade)


def edge_commutation(alg: HallAlgebra, i: int, l: int, lp: int) -> Pair:
    """[f_{i,l}, f_{[i,i+1],(l,lp)}]_{q^-1} = 0."""
    lhs = alg.q_bracket(alg.f(i, l), alg.interval(i, i + 1, (l, lp)), -1)
    return lhs, alg.zero(lhs.grade)


def pbwd(alg: HallAlgebra, i: int, j: int, loops: Sequence[int]) -> Pair:
    """Iterated bracket = (q^-1 - q)^(j-i) f_{[i,j],loops}."""
    return alg.pbwd_expand(i, j, loops), alg.interval(i, j, loops).scale(Q_DIFF ** (j - i))


NAMED: dict[str, Callable[..., Pair]] = {
    "bracket": adjacent_bracket,
    "u3": u3,
    "serre": serre,
    "commute": edge_commutation,
}

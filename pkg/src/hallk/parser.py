"""Parser for the element grammar.

    element := ['+'|'-'] term (('+'|'-') term)*
    term    := factor ('*' factor)*
    factor  := 'f' '[' int (',' int)? ']' '(' int (',' int)* ')'
             | 'P2' '[' int ']' '(' int ',' int ')'
             | int | 'q' ['^' int] | 't' ['^' int]
             | '[' element ',' element ']_q^' int
             | '(' element ')'

``parse_expr`` expands everything in the free algebra.  ``evaluate`` on the
syntax tree can instead normalize each product, bracket and sum as soon as
it is formed.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .algebra import AlgElement, HallAlgebra
from .coeff import Laurent
from .quiver import Quiver, type_a
from .symbols import F, P2, Symbol


class ExprSyntaxError(SyntaxError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(\S))")


@dataclass(frozen=True)
class Num:
    value: Laurent


@dataclass(frozen=True)
class Gen:
    symbol: Symbol


@dataclass(frozen=True)
class Sum:
    terms: tuple[tuple[int, "Node"], ...]


@dataclass(frozen=True)
class Prod:
    factors: tuple["Node", ...]


@dataclass(frozen=True)
class Bracket:
    left: "Node"
    right: "Node"
    r: int


Node = Union[Num, Gen, Sum, Prod, Bracket]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        for m in _TOKEN.finditer(text):
            pos = m.end()
            if m.group(1):
                self.toks.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("name", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("sym", m.group(3), m.start(3)))
        if text[pos:].strip():
            raise ExprSyntaxError("unreadable input", pos)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        if self.i < len(self.toks):
            return self.toks[self.i]
        return ("end", "", len(self.text))

    def take(self) -> tuple[str, str, int]:
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, v, pos = self.take()
        if v != value or kind == "end":
            raise ExprSyntaxError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def signed_int(self) -> int:
        sign = 1
        if self.peek()[1] in ("-", "+") and self.peek()[0] == "sym":
            sign = -1 if self.take()[1] == "-" else 1
        kind, v, pos = self.take()
        if kind != "int":
            raise ExprSyntaxError(f"expected an integer, found {v or 'end of input'!r}", pos)
        return sign * int(v)

    def int_list(self, close: str) -> list[int]:
        out = [self.signed_int()]
        while self.peek()[1] == ",":
            self.take()
            out.append(self.signed_int())
        self.expect(close)
        return out

    # grammar

    def parse(self) -> Node:
        node = self.element()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ExprSyntaxError(f"unexpected {v!r}", pos)
        return node

    def element(self) -> Node:
        terms = []
        sign = 1
        if self.peek()[0] == "sym" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
        terms.append((sign, self.term()))
        while self.peek()[0] == "sym" and self.peek()[1] in "+-":
            sign = -1 if self.take()[1] == "-" else 1
            terms.append((sign, self.term()))
        if len(terms) == 1 and terms[0][0] == 1:
            return terms[0][1]
        return Sum(tuple(terms))

    def term(self) -> Node:
        factors = [self.factor()]
        while self.peek()[1] == "*":
            self.take()
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Prod(tuple(factors))

    def factor(self) -> Node:
        kind, v, pos = self.take()
        if kind == "int":
            return Num(Laurent.const(int(v)))
        if kind == "name" and v in ("q", "t"):
            k = 1
            if self.peek()[1] == "^":
                self.take()
                k = self.signed_int()
            return Num(Laurent.monomial({v: k}))
        if kind == "name" and v == "f":
            self.expect("[")
            idx = self.int_list("]")
            if len(idx) > 2:
                raise ExprSyntaxError("an interval has at most two endpoints", pos)
            i, j = (idx[0], idx[0]) if len(idx) == 1 else idx
            self.expect("(")
            loops = self.int_list(")")
            try:
                return Gen(F(i, j, tuple(loops)))
            except ValueError as exc:
                raise ExprSyntaxError(str(exc), pos) from None
        if kind == "name" and v == "P2":
            self.expect("[")
            vertex = self.signed_int()
            self.expect("]")
            self.expect("(")
            a = self.signed_int()
            self.expect(",")
            b = self.signed_int()
            self.expect(")")
            if a < 0:
                raise ExprSyntaxError("P2 weight must be dominant", pos)
            return Gen(P2.from_omega(vertex, a, b))
        if v == "[" and kind == "sym":
            left = self.element()
            self.expect(",")
            right = self.element()
            self.expect("]")
            self.expect("_")
            self.expect("q")
            self.expect("^")
            return Bracket(left, right, self.signed_int())
        if v == "(" and kind == "sym":
            node = self.element()
            self.expect(")")
            return node
        raise ExprSyntaxError(f"unexpected {v or 'end of input'!r}", pos)


def parse_tree(text: str) -> Node:
    return _Parser(text).parse()


def max_vertex(node: Node) -> int:
    if isinstance(node, Gen):
        s = node.symbol
        return s.j if isinstance(s, F) else s.vertex
    if isinstance(node, Num):
        return 0
    if isinstance(node, Sum):
        return max(max_vertex(n) for _, n in node.terms)
    if isinstance(node, Prod):
        return max(max_vertex(n) for n in node.factors)
    return max(max_vertex(node.left), max_vertex(node.right))


def default_quiver(*nodes: Node) -> Quiver:
    return type_a(max([1] + [max_vertex(n) for n in nodes]))


def evaluate(node: Node, alg: HallAlgebra, normalize: bool = False, stats: dict | None = None, **nf_kw) -> AlgElement:
    """Build the element for ``node``.

    With ``normalize`` every product, bracket and sum is rewritten as soon as
    it is formed, using ``nf_kw`` (strategy, seed, max_steps); rewrite steps
    are accumulated in ``stats["steps"]`` if given.
    """

    def norm(x: AlgElement) -> AlgElement:
        if not normalize:
            return x
        red = alg.normal_form(x, **nf_kw)
        if stats is not None:
            stats["steps"] = stats.get("steps", 0) + red.steps
        return red.element

    if isinstance(node, Num):
        return alg.scalar(node.value)
    if isinstance(node, Gen):
        return alg.word(node.symbol)
    if isinstance(node, Sum):
        acc = None
        for sign, n in node.terms:
            x = evaluate(n, alg, normalize, stats, **nf_kw)
            x = x if sign > 0 else -x
            acc = x if acc is None else acc + x
        return norm(acc)
    if isinstance(node, Prod):
        acc = evaluate(node.factors[0], alg, normalize, stats, **nf_kw)
        for n in node.factors[1:]:
            acc = norm(alg.mul_free(acc, evaluate(n, alg, normalize, stats, **nf_kw)))
        return acc
    if isinstance(node, Bracket):
        x = evaluate(node.left, alg, normalize, stats, **nf_kw)
        y = evaluate(node.right, alg, normalize, stats, **nf_kw)
        return norm(alg.q_bracket(x, y, node.r))
    raise TypeError(node)


def parse_expr(text: str, alg: HallAlgebra | Quiver | str | None = None) -> AlgElement:
    """Parse into the free algebra; no rewriting is applied."""
    tree = parse_tree(text)
    if alg is None:
        alg = HallAlgebra(default_quiver(tree))
    elif not isinstance(alg, HallAlgebra):
        alg = HallAlgebra(alg)
    return evaluate(tree, alg, normalize=False)

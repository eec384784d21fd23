"""Exact Laurent polynomials over the integers and reduced rational characters.

``Laurent`` is an immutable map from exponent tuples to nonzero ints over a
declared, ordered tuple of variable names.  ``LaurentQT`` is the special case
over ``("q", "t")``.  ``RationalChar`` is a fraction ``num / den`` kept in a
canonical reduced form, so structural equality is mathematical equality.
"""
from __future__ import annotations

import functools
import re
from typing import Iterable, Mapping, Sequence

from sympy import ZZ
from sympy.polys.rings import ring as sympy_ring

__all__ = [
    "Laurent",
    "RationalChar",
    "QT",
    "VarMismatch",
    "canonical_vars",
    "laurent_qt",
    "q",
    "t",
    "add",
    "mul",
    "specialize",
    "symmetrize",
    "swap",
    "series",
    "parse_laurent",
    "parse_rational",
]

QT = ("q", "t")
_KNOWN_ORDER = ("q", "t", "r1", "r2", "x1", "x2")


class VarMismatch(ValueError):
    """Arithmetic between values over different variable sets."""


def canonical_vars(names: Iterable[str]) -> tuple[str, ...]:
    """Order variable names: q, t, r1, r2, x1, x2 first, then the rest sorted."""
    names = set(names) | set(QT)
    known = [v for v in _KNOWN_ORDER if v in names]
    rest = sorted(names - set(_KNOWN_ORDER))
    return tuple(known + rest)


Exps = tuple[int, ...]


class Laurent:
    __slots__ = ("vars", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exps, int] | None = None, vars: Sequence[str] = QT):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean = {}
        for e, c in (terms or {}).items():
            if len(e) != n:
                raise ValueError(f"exponent {e} does not match variables {self.vars}")
            c = int(c)
            if c:
                clean[tuple(int(x) for x in e)] = c
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # constructors

    @classmethod
    def const(cls, c: int, vars: Sequence[str] = QT) -> Laurent:
        return cls({(0,) * len(vars): c}, vars)

    @classmethod
    def monomial(cls, exps: Mapping[str, int] | Exps, coef: int = 1, vars: Sequence[str] = QT) -> Laurent:
        vars = tuple(vars)
        if isinstance(exps, Mapping):
            unknown = set(exps) - set(vars)
            if unknown:
                raise VarMismatch(f"unknown variables {sorted(unknown)}")
            exps = tuple(exps.get(v, 0) for v in vars)
        return cls({tuple(exps): coef}, vars)

    @classmethod
    def var(cls, name: str, vars: Sequence[str] = QT) -> Laurent:
        return cls.monomial({name: 1}, 1, vars)

    # inspection

    def terms(self) -> list[tuple[Exps, int]]:
        return list(self._terms.items())

    def coeff(self, exps: Exps) -> int:
        return self._terms.get(tuple(exps), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_unit(self) -> bool:
        return len(self._terms) == 1 and abs(next(iter(self._terms.values()))) == 1

    def min_exps(self) -> Exps:
        if not self._terms:
            return (0,) * len(self.vars)
        return tuple(min(col) for col in zip(*self._terms))

    def degree_in(self, weights: Mapping[str, int]) -> list[int]:
        w = [weights.get(v, 0) for v in self.vars]
        return [sum(a * b for a, b in zip(e, w)) for e in self._terms]

    def __bool__(self) -> bool:
        return bool(self._terms)

    # arithmetic

    def _coerce(self, other) -> Laurent:
        if isinstance(other, Laurent):
            if other.vars != self.vars:
                raise VarMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, int):
            return Laurent.const(other, self.vars)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        return Laurent(out, self.vars)

    __radd__ = __add__

    def __neg__(self) -> Laurent:
        return Laurent({e: -c for e, c in self._terms.items()}, self.vars)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        out: dict[Exps, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Laurent(out, self.vars)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> Laurent:
        if k < 0:
            if not self.is_unit():
                raise ZeroDivisionError("negative power of a non-unit Laurent polynomial")
            (e, c), = self._terms.items()
            return Laurent({tuple(x * k for x in e): c ** (-k)}, self.vars)
        out = Laurent.const(1, self.vars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Laurent.const(other, self.vars)
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.vars == other.vars and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.vars, tuple(self._terms.items())))
        return self._hash

    def shift(self, exps: Exps) -> Laurent:
        return Laurent({tuple(a + b for a, b in zip(e, exps)): c for e, c in self._terms.items()}, self.vars)

    def with_vars(self, vars: Sequence[str]) -> Laurent:
        """Re-embed into a larger variable set."""
        vars = tuple(vars)
        used = self._used_positions()
        dropped = [v for i, v in enumerate(self.vars) if v not in vars and i in used]
        if dropped:
            raise VarMismatch(f"cannot drop variables {dropped} in use")
        pos = [self.vars.index(v) if v in self.vars else None for v in vars]
        out = {}
        for e, c in self._terms.items():
            out[tuple(e[p] if p is not None else 0 for p in pos)] = c
        return Laurent(out, vars)

    def _used_positions(self) -> set[int]:
        return {i for e in self._terms for i, x in enumerate(e) if x}

    def permute(self, mapping: Mapping[str, str]) -> Laurent:
        """Rename variables by a permutation of the declared set."""
        idx = [self.vars.index(mapping.get(v, v)) for v in self.vars]
        out = {}
        for e, c in self._terms.items():
            new = [0] * len(e)
            for i, x in enumerate(e):
                new[idx[i]] = x
            out[tuple(new)] = c
        return Laurent(out, self.vars)

    # serialization

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self._terms.items()):
            body = _term_text(self.vars, e, abs(c))
            if k == 0:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self) -> str:
        return f"Laurent({self!s})"

    def to_rows(self) -> list[list[int]]:
        return [list(e) + [c] for e, c in self._terms.items()]

    def latex(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self._terms.items()):
            mono = " ".join(_latex_power(v, x) for v, x in zip(self.vars, e) if x)
            mag = abs(c)
            body = mono if mag == 1 and mono else (f"{mag}" + (f" {mono}" if mono else ""))
            sign = "-" if c < 0 else ("" if k == 0 else "+")
            parts.append((sign + " " if k else sign) + body)
        return " ".join(p.strip() if i == 0 else p for i, p in enumerate(parts))


_LATEX_NAMES = {"r1": r"\rho_1", "r2": r"\rho_2", "x1": "x_1", "x2": "x_2"}


def _latex_power(v: str, x: int) -> str:
    name = _LATEX_NAMES.get(v, v)
    return name if x == 1 else f"{name}^{{{x}}}"


def _term_text(vars: Sequence[str], e: Exps, mag: int) -> str:
    factors = []
    for v, x in zip(vars, e):
        if x == 1:
            factors.append(v)
        elif x:
            factors.append(f"{v}^{x}")
    if mag != 1 or not factors:
        factors.insert(0, str(mag))
    return "*".join(factors)


def laurent_qt(terms: Mapping[tuple[int, int], int]) -> Laurent:
    return Laurent(terms, QT)


q = Laurent.var("q")
t = Laurent.var("t")


# --- rational characters ---------------------------------------------------


@functools.lru_cache(maxsize=None)
def _ring(vars: tuple[str, ...]):
    R, *_ = sympy_ring(",".join(vars), ZZ)
    return R


def _to_poly(L: Laurent, shift: Exps):
    R = _ring(L.vars)
    return R.from_dict({tuple(a - b for a, b in zip(e, shift)): c for e, c in L.terms()})


def _from_poly(p, vars) -> Laurent:
    return Laurent({tuple(e): int(c) for e, c in p.items()}, vars)


class RationalChar:
    """Reduced fraction of Laurent polynomials.

    Normal form: gcd(num, den) = 1 and the lexicographically smallest term
    of ``den`` is a positive integer constant.
    """

    __slots__ = ("vars", "num", "den", "_hash")

    def __init__(self, num: Laurent | int, den: Laurent | int = 1, vars: Sequence[str] | None = None):
        if vars is None:
            vars = num.vars if isinstance(num, Laurent) else (den.vars if isinstance(den, Laurent) else QT)
        vars = tuple(vars)
        num = num.with_vars(vars) if isinstance(num, Laurent) else Laurent.const(num, vars)
        den = den.with_vars(vars) if isinstance(den, Laurent) else Laurent.const(den, vars)
        self.vars = vars
        self.num, self.den = _reduce(num, den)
        self._hash = None

    @classmethod
    def of(cls, x, vars: Sequence[str]) -> RationalChar:
        if isinstance(x, RationalChar):
            if x.vars == tuple(vars):
                return x
            return cls(x.num.with_vars(vars), x.den.with_vars(vars), vars)
        return cls(x, 1, vars)

    def _coerce(self, other) -> RationalChar:
        if isinstance(other, RationalChar):
            if other.vars != self.vars:
                raise VarMismatch(f"{self.vars} vs {other.vars}")
            return other
        if isinstance(other, Laurent):
            if other.vars != self.vars:
                if set(other.vars) <= set(self.vars):
                    return RationalChar(other.with_vars(self.vars), 1, self.vars)
                raise VarMismatch(f"{self.vars} vs {other.vars}")
            return RationalChar(other, 1, self.vars)
        if isinstance(other, int):
            return RationalChar(other, 1, self.vars)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self.den == o.den:
            return RationalChar(self.num + o.num, self.den, self.vars)
        return RationalChar(self.num * o.den + o.num * self.den, self.den * o.den, self.vars)

    __radd__ = __add__

    def __neg__(self) -> RationalChar:
        return RationalChar(-self.num, self.den, self.vars)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RationalChar(self.num * o.num, self.den * o.den, self.vars)

    __rmul__ = __mul__

    def inverse(self) -> RationalChar:
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalChar(self.den, self.num, self.vars)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> RationalChar:
        if k < 0:
            return self.inverse() ** (-k)
        return RationalChar(self.num ** k, self.den ** k, self.vars)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Laurent)):
            try:
                other = self._coerce(other)
            except VarMismatch:
                return False
        if not isinstance(other, RationalChar):
            return NotImplemented
        return self.vars == other.vars and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == 1

    def cross_equal(self, other: RationalChar) -> bool:
        """Equality by cross-multiplication, independent of normalization."""
        return self.num * other.den == other.num * self.den

    def permute(self, mapping: Mapping[str, str]) -> RationalChar:
        return RationalChar(self.num.permute(mapping), self.den.permute(mapping), self.vars)

    def __str__(self) -> str:
        if self.den == 1:
            return str(self.num)
        den = f"({self.den})^-1"
        if self.num == 1:
            return den
        if self.num == -1:
            return "-" + den
        if self.num.is_monomial():
            return f"{self.num}*{den}"
        return f"({self.num})*{den}"

    def __repr__(self) -> str:
        return f"RationalChar({self!s})"

    def latex(self) -> str:
        if self.den == 1:
            return self.num.latex()
        return rf"\frac{{{self.num.latex()}}}{{{self.den.latex()}}}"

    def to_json(self) -> dict:
        return {"vars": list(self.vars), "num": self.num.to_rows(), "den": self.den.to_rows()}

    @classmethod
    def from_json(cls, obj: Mapping) -> RationalChar:
        vars = tuple(obj.get("vars", QT))
        num = Laurent({tuple(r[:-1]): r[-1] for r in obj["num"]}, vars)
        den = Laurent({tuple(r[:-1]): r[-1] for r in obj["den"]}, vars)
        out = cls(num, den, vars)
        if out.num != num or out.den != den:
            raise ValueError("JSON rational character is not in canonical form")
        return out


def _reduce(num: Laurent, den: Laurent) -> tuple[Laurent, Laurent]:
    vars = num.vars
    one = Laurent.const(1, vars)
    if den.is_zero():
        raise ZeroDivisionError("zero denominator")
    if num.is_zero():
        return num, one
    if den.is_monomial():
        (e, c), = den.terms()
        neg = tuple(-x for x in e)
        if abs(c) == 1:
            return num.shift(neg) * c, one
        # integer content: cancel gcd with numerator content
        from math import gcd

        g = gcd(c, *[cc for _, cc in num.terms()])
        c2 = c // g
        num2 = Laurent({ee: cc // g for ee, cc in num.terms()}, vars).shift(neg)
        if c2 < 0:
            c2, num2 = -c2, -num2
        return num2, Laurent.const(c2, vars)
    mn, md = num.min_exps(), den.min_exps()
    N = _to_poly(num, mn)
    D = _to_poly(den, md)
    g = N.gcd(D)
    if g != 1:
        N = N.exquo(g)
        D = D.exquo(g)
    num2 = _from_poly(N, vars).shift(mn)
    den2 = _from_poly(D, vars).shift(md)
    (le, lc), = den2.terms()[:1]
    unit = tuple(-x for x in le)
    sign = 1 if lc > 0 else -1
    return num2.shift(unit) * sign, den2.shift(unit) * sign


# --- module level operations -------------------------------------------------


def add(a, b):
    return a + b


def mul(a, b):
    return a * b


def specialize(a: RationalChar | Laurent, assignments: Mapping[str, Laurent | int]) -> RationalChar:
    """Substitute variables by Laurent polynomials and reduce.

    The result keeps the declared variable set of ``a``.  Raises
    ``ZeroDivisionError`` if the denominator vanishes after substitution.
    """
    if isinstance(a, Laurent):
        a = RationalChar(a)
    vars = a.vars
    images = {}
    for v, val in assignments.items():
        if v not in vars:
            raise VarMismatch(f"unknown variable {v}")
        images[v] = RationalChar.of(val if not isinstance(val, int) else Laurent.const(val, vars), vars)

    def subst(L: Laurent) -> RationalChar:
        total = RationalChar(0, 1, vars)
        for e, c in L.terms():
            keep = tuple(x if v not in images else 0 for v, x in zip(vars, e))
            term = RationalChar(Laurent({keep: c}, vars), 1, vars)
            for v, x in zip(vars, e):
                if v in images and x:
                    img = images[v]
                    if x < 0 and img.is_zero():
                        raise ZeroDivisionError(f"{v} -> 0 with negative exponent")
                    term = term * img ** x
            total = total + term
        return total

    den = subst(a.den)
    if den.is_zero():
        raise ZeroDivisionError("division by zero after substitution")
    return subst(a.num) / den


def swap(u: str, v: str) -> list[dict[str, str]]:
    """The order-two group exchanging two variables."""
    return [{}, {u: v, v: u}]


def symmetrize(f: RationalChar, group: Iterable[Mapping[str, str]]) -> RationalChar:
    """Sum of ``f`` over the listed variable permutations (identity included by the caller)."""
    total = RationalChar(0, 1, f.vars)
    for g in group:
        total = total + f.permute(g)
    return total


def series(f: RationalChar | Laurent, weights: Mapping[str, int], order: int = 8) -> Laurent:
    """Truncated expansion of ``f`` in the grading given by ``weights``.

    The lowest-degree part of the denominator must be a unit monomial.
    Returns all terms of weighted degree at most ``order``.
    """
    if isinstance(f, Laurent):
        f = RationalChar(f)
    vars = f.vars
    den = f.den
    degs = den.degree_in(weights)
    d0 = min(degs)
    low = [(e, c) for (e, c), d in zip(den.terms(), degs) if d == d0]
    if len(low) != 1 or abs(low[0][1]) != 1:
        raise ValueError("denominator has no unit monomial of lowest degree")
    lead = Laurent(dict(low), vars)
    inv_lead = lead ** -1
    rest = den * inv_lead - 1  # all terms of positive degree
    num = f.num * inv_lead
    lo_num = min(num.degree_in(weights)) if num else 0
    rest_min = min(rest.degree_in(weights)) if rest else 1
    need = order - lo_num
    geo = Laurent.const(1, vars)
    power = Laurent.const(1, vars)
    k = 0
    while rest and (k + 1) * rest_min <= need:
        power = _truncate(power * -rest, weights, need)
        geo = geo + power
        k += 1
    return _truncate(num * geo, weights, order)


def _truncate(L: Laurent, weights: Mapping[str, int], order: int) -> Laurent:
    w = [weights.get(v, 0) for v in L.vars]
    return Laurent({e: c for e, c in L.terms() if sum(a * b for a, b in zip(e, w)) <= order}, L.vars)


# --- text parsing ------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9]*)|(.))")


class _Parser:
    def __init__(self, text: str, vars: Sequence[str] | None):
        self.text = text
        self.toks = []
        for m in _TOKEN.finditer(text):
            if m.group(0).strip() == "":
                continue
            kind = "int" if m.group(1) else "name" if m.group(2) else "sym"
            self.toks.append((kind, m.group(1) or m.group(2) or m.group(3), m.start()))
        names = [v for k, v, _ in self.toks if k == "name"]
        self.vars = tuple(vars) if vars else canonical_vars(names)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("end", "", len(self.text))

    def take(self, sym=None):
        tok = self.peek()
        if sym is not None and tok[1] != sym:
            raise SyntaxError(f"expected {sym!r} at position {tok[2]}")
        self.i += 1
        return tok

    def parse(self) -> RationalChar:
        out = self.expr()
        if self.peek()[0] != "end":
            raise SyntaxError(f"unexpected {self.peek()[1]!r} at position {self.peek()[2]}")
        return out

    def expr(self) -> RationalChar:
        sign = 1
        if self.peek()[1] in "+-" and self.peek()[0] == "sym":
            sign = -1 if self.take()[1] == "-" else 1
        acc = self.term() * sign
        while self.peek()[0] == "sym" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> RationalChar:
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> RationalChar:
        kind, val, pos = self.take()
        if kind == "int":
            base = RationalChar(int(val), 1, self.vars)
        elif kind == "name":
            if val not in self.vars:
                raise SyntaxError(f"unknown variable {val!r} at position {pos}")
            base = RationalChar(Laurent.var(val, self.vars))
        elif val == "(":
            base = self.expr()
            self.take(")")
        else:
            raise SyntaxError(f"unexpected {val!r} at position {pos}")
        if self.peek()[1] == "^":
            self.take()
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            k, kv, kp = self.take()
            if k != "int":
                raise SyntaxError(f"expected exponent at position {kp}")
            base = base ** (-int(kv) if neg else int(kv))
        return base


def parse_rational(text: str, vars: Sequence[str] | None = None) -> RationalChar:
    return _Parser(text, vars).parse()


def parse_laurent(text: str, vars: Sequence[str] | None = None) -> Laurent:
    r = parse_rational(text, vars)
    if r.den != 1:
        raise ValueError(f"{text!r} is not a Laurent polynomial")
    return r.num

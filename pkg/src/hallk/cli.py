"""Command-line front end: ``hallk <verb> ...``.

Exit codes: 0 success, 1 identity not proved (or oracle identity false),
2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import identities, oracle
from .algebra import FuelExhausted, GradeError, HallAlgebra, specialize_element
from .parser import ExprSyntaxError, Gen, default_quiver, evaluate, parse_tree
from .quiver import Quiver, parse_quiver, type_a
from .rmatrix import LambdaTable, UnknownPair
from .rules import R4_MODES, apply_pair
from .simples import enumerate_simple_labels
from .symbols import F, word_text

_JOINED = ("--grades", "--params", "--loops", "--dim")


class UsageError(Exception):
    pass


def _join_values(argv: Sequence[str]) -> list[str]:
    # argparse reads "-2..2" as an option; glue such values to their flag
    out = []
    it = iter(argv)
    for a in it:
        if a in _JOINED:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise UsageError(f"expected a range a..b, got {text!r}")
    lo, hi = int(lo), int(hi)
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    return lo, hi


def _ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": "))


def _quiver(args, *trees) -> Quiver:
    if args.quiver:
        return parse_quiver(args.quiver)
    return default_quiver(*trees)


def _algebra(args, quiver: Quiver) -> HallAlgebra:
    return HallAlgebra(quiver, r4=args.r4)


def _reduce_kw(args) -> dict:
    return {"strategy": args.strategy, "seed": args.seed, "max_steps": args.max_steps}


# --- verbs -------------------------------------------------------------------


def cmd_parse(args, out) -> int:
    tree = parse_tree(args.expr)
    alg = _algebra(args, _quiver(args, tree))
    x = evaluate(tree, alg)
    if args.format == "json":
        out.write(_dump(x.to_json()) + "\n")
    elif args.format == "latex":
        out.write(x.latex() + "\n")
    else:
        out.write(str(x) + "\n")
    return 0


def cmd_nf(args, out) -> int:
    tree = parse_tree(args.expr)
    alg = _algebra(args, _quiver(args, tree))
    stats = {"steps": 0}
    x = evaluate(tree, alg, not args.free, stats, **_reduce_kw(args))
    red = alg.normal_form(x, **_reduce_kw(args))
    y = red.element
    flagged = [word_text(w) for w in red.unreduced]
    if args.format == "json":
        out.write(
            _dump(
                {
                    "quiver": alg.quiver.text(),
                    "input": args.expr,
                    "text": str(y),
                    "normal_form": y.to_json(),
                    "unreduced": flagged,
                    "steps": stats["steps"] + red.steps,
                }
            )
            + "\n"
        )
    elif args.format == "latex":
        out.write(y.latex() + "\n")
    else:
        out.write(str(y) + "\n")
        if flagged:
            out.write("# unreduced: " + ", ".join(flagged) + "\n")
    return 0


def _named_pair(args, alg: HallAlgebra):
    name = args.lhs
    if name == "pbwd":
        loops = _ints(args.loops) if args.loops else [args.l] * (args.j - args.i + 1)
        return identities.pbwd(alg, args.i, args.j, loops), {"i": args.i, "j": args.j, "loops": loops}
    fn = identities.NAMED[name]
    return fn(alg, args.i, args.l, args.lp), {"i": args.i, "l": args.l, "lp": args.lp}


def cmd_verify(args, out) -> int:
    if args.lhs in identities.NAMED or args.lhs == "pbwd":
        if args.rhs is not None:
            raise UsageError(f"named identity {args.lhs!r} takes no right-hand side")
        top = max(args.i + 1, args.j if args.lhs == "pbwd" else 0)
        quiver = parse_quiver(args.quiver) if args.quiver else type_a(top)
        alg = _algebra(args, quiver)
        (lhs, rhs), params = _named_pair(args, alg)
        name = args.lhs
    else:
        lt = parse_tree(args.lhs)
        rt = parse_tree(args.rhs if args.rhs is not None else "0")
        alg = _algebra(args, _quiver(args, lt, rt))
        lhs = evaluate(lt, alg, not args.free, **_reduce_kw(args))
        rhs = evaluate(rt, alg, not args.free, **_reduce_kw(args))
        params = {}
        name = "expression"
    if args.t1:
        lhs = specialize_element(lhs, {"t": 1})
        rhs = specialize_element(rhs, {"t": 1})
    cert = alg.verify_identity(lhs, rhs, at={"t": 1} if args.t1 else None, **_reduce_kw(args))
    if args.format == "json":
        out.write(
            _dump(
                {
                    "identity": name,
                    "params": params,
                    "quiver": alg.quiver.text(),
                    "t1": bool(args.t1),
                    "proved": cert.proved,
                    "verdict": cert.verdict,
                    "lhs": str(lhs),
                    "rhs": str(rhs),
                    "residual": str(cert.residual),
                    "unreduced": [word_text(w) for w in cert.unreduced],
                    "trace": [s.to_json() for s in cert.trace],
                }
            )
            + "\n"
        )
    elif args.format == "latex":
        rel = "=" if cert.proved else r"\overset{?}{=}"
        out.write(f"{lhs.latex()} {rel} {rhs.latex()}\n")
    else:
        out.write(cert.verdict + "\n")
        if not cert.proved:
            out.write(f"residual: {cert.residual}\n")
    return 0 if cert.proved else 1


def _single_symbol(text: str):
    tree = parse_tree(text)
    if not isinstance(tree, Gen):
        raise UsageError(f"{text!r} is not a single generator")
    return tree


def cmd_lambda(args, out) -> int:
    g1, g2 = _single_symbol(args.g1), _single_symbol(args.g2)
    quiver = _quiver(args, g1, g2)
    entry = LambdaTable(quiver).entry(g1.symbol, g2.symbol)
    if args.format == "json":
        out.write(_dump(entry.to_json()) + "\n")
    elif args.format == "latex":
        out.write(rf"\Lambda({g1.symbol.latex()}, {g2.symbol.latex()}) = {entry.value}" + "\n")
    else:
        out.write(f"{entry.value} ({entry.source}, {entry.provenance})\n")
    return 0


def cmd_simples(args, out) -> int:
    quiver = parse_quiver(args.quiver or "A1")
    dim = _ints(args.dim)
    if len(dim) == 1 and quiver.vertex_count > 1:
        raise UsageError("--dim needs one entry per vertex")
    dim = list(quiver.dim(dim))
    lo, hi = _range(args.grades)
    labels = enumerate_simple_labels(dim, (lo, hi))
    if args.format == "json":
        out.write(
            _dump({"quiver": quiver.text(), "dim": dim, "grades": [lo, hi], "labels": [x.to_json() for x in labels]})
            + "\n"
        )
    else:
        for x in labels:
            j = x.to_json()
            out.write(f"orbit={j['orbit']} weight={_dump(j['weight'])} d={j['orbit_dim']} shift={j['shift']}\n")
    return 0


def _rule_instance(rule: str, params: list[int]):
    """lhs word and its one-step rewrite for a rule at the given indices."""
    if rule in ("R1", "R2"):
        if len(params) != 2:
            raise UsageError(f"{rule} takes two loop indices l,lp")
        alg = HallAlgebra(type_a(2))
        l, lp = params
        x, y = F.single(1, l), F.single(2, lp)
        pair = (x, y) if rule == "R1" else (y, x)
    elif rule in ("R3", "R3'"):
        if len(params) != 2:
            raise UsageError(f"{rule} takes two loop indices a,b")
        alg = HallAlgebra(type_a(1))
        pair = (F.single(1, params[0]), F.single(1, params[1]))
    elif rule == "R4":
        if len(params) != 2:
            raise UsageError("R4 takes two loop indices l,lp")
        alg = HallAlgebra(type_a(2), r4="all")
        l, lp = params
        pair = (F.single(1, l), F(1, 2, (l, lp)))
    else:
        raise UsageError(f"unknown rule {rule!r}")
    hit = apply_pair(alg.quiver, pair[0], pair[1], alg.r4)
    if hit is None or hit[0] != rule:
        raise UsageError(f"{rule} does not apply at {params}")
    lhs = alg.word(*pair)
    rhs = alg.zero(lhs.grade)
    for c, w in hit[1]:
        rhs = rhs + alg.word(*w, coef=c)
    return lhs, rhs


def cmd_oracle(args, out) -> int:
    if args.action == "verify":
        ident = oracle.IDENTITIES.get(args.name)
        if ident is None:
            raise UsageError(f"unknown identity {args.name!r}; known: {', '.join(oracle.IDENTITIES)}")
        holds, lhs, rhs = ident.check(args.l, args.lp)
        payload = {"identity": args.name, "params": {"l": args.l, "lp": args.lp}, "holds": holds,
                   "lhs": str(lhs), "rhs": str(rhs)}
    else:
        params = _ints(args.params or "")
        lhs, rhs = _rule_instance(args.rule, params)
        holds = oracle.cross_check(lhs, rhs)
        payload = {"rule": args.rule, "params": params, "holds": holds, "lhs": str(lhs), "rhs": str(rhs)}
    if args.format == "json":
        out.write(_dump(payload) + "\n")
    else:
        out.write(("holds" if holds else "fails") + f": {payload['lhs']} = {payload['rhs']}\n")
    return 0 if holds else 1


# --- argument parsing --------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiver", help='"A<n>", "jordan" or "v=<n>; e=1>2,2>3"')
    common.add_argument("--format", choices=("json", "latex", "text"), default="json")
    common.add_argument("--seed", type=int, default=None, help="seed for the random rewrite strategy")
    common.add_argument("--max-steps", type=int, default=None, help="rewrite fuel (env HALLK_MAX_STEPS)")
    common.add_argument("--strategy", choices=("leftmost", "rightmost", "random"), default="leftmost")
    common.add_argument("--r4", choices=R4_MODES, default="matching", help="loop-index patterns for R4")
    common.add_argument("--grades", default="-2..2", help="range a..b")

    p = argparse.ArgumentParser(prog="hallk", description="K-theoretic Hall algebra workbench")
    sub = p.add_subparsers(dest="verb", required=True)

    s = sub.add_parser("parse", parents=[common], help="parse and print canonically")
    s.add_argument("expr")

    s = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    s.add_argument("expr")
    s.add_argument("--free", action="store_true", help="expand fully before rewriting")

    s = sub.add_parser("verify", parents=[common], help="verify an identity")
    s.add_argument("lhs", help="serre, u3, bracket, commute, pbwd, or an expression")
    s.add_argument("rhs", nargs="?")
    s.add_argument("--i", type=int, default=1)
    s.add_argument("--j", type=int, default=2)
    s.add_argument("--l", type=int, default=0)
    s.add_argument("--lp", type=int, default=0)
    s.add_argument("--loops")
    s.add_argument("--t1", action="store_true", help="specialize t = 1 first")
    s.add_argument("--free", action="store_true", help="expand fully before rewriting")

    s = sub.add_parser("lambda", parents=[common], help="r-matrix degree of two generators")
    s.add_argument("g1")
    s.add_argument("g2")

    s = sub.add_parser("simples", parents=[common], help="enumerate simple labels")
    s.add_argument("--dim", required=True, help="dimension vector, comma separated")

    s = sub.add_parser("oracle", parents=[common], help="character oracle checks")
    osub = s.add_subparsers(dest="action", required=True)
    v = osub.add_parser("verify", parents=[common])
    v.add_argument("name", help=", ".join(oracle.IDENTITIES))
    v.add_argument("--l", type=int, default=0)
    v.add_argument("--lp", type=int, default=0)
    c = osub.add_parser("crosscheck", parents=[common])
    c.add_argument("--rule", required=True)
    c.add_argument("--params", default="")
    return p


_VERBS = {
    "parse": cmd_parse,
    "nf": cmd_nf,
    "verify": cmd_verify,
    "lambda": cmd_lambda,
    "simples": cmd_simples,
    "oracle": cmd_oracle,
}


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(_join_values(argv))
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _VERBS[args.verb](args, out)
    except (UsageError, ExprSyntaxError, GradeError, UnknownPair, oracle.UncoveredGrade,
            FuelExhausted, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())

"""``superband`` command line: verify, eval, cayley, eggbox, ann.

Exit codes: 0 success, 1 a verified property failed, 2 usage, parse or
domain error.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from typing import Sequence

from . import bands as B
from . import green as G
from .errors import SuperbandError
from .expr import evaluate, max_generator, parse_element
from .grassmann import GrassmannElement, annihilator_even, even_masks
from .verify import RunConfig, run

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _alpha(text: str, n: int | None) -> GrassmannElement:
    n = n if n is not None else max(1, max_generator(text))
    return parse_element(text, n)


# -- verify -------------------------------------------------------------------------------


def cmd_verify(args) -> int:
    overrides = {
        "seed": args.seed,
        "n_generators": args.n,
        "alpha": args.alpha,
        "format": args.format,
        "tier": "full" if args.full else ("quick" if args.quick else None),
    }
    if args.config:
        config = RunConfig.from_file(args.config, **overrides)
    else:
        config = RunConfig.from_mapping({}, **overrides)
    if config.format not in ("text", "json"):
        raise UsageError(f"verify writes text or json, not {config.format}")
    report = run(config, only=args.claim)
    if args.claim and not report.results:
        raise UsageError(f"no claim matches {args.claim}")
    _emit(report.to_json() if config.format == "json" else report.to_text(), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


# -- eval ---------------------------------------------------------------------------------


def cmd_eval(args) -> int:
    value = evaluate(args.expr, args.n)
    if args.format == "json":
        payload = value.to_json()
        text = json.dumps(payload, ensure_ascii=False) + "\n"
    else:
        text = value.to_text(unicode=args.unicode) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# -- cayley -------------------------------------------------------------------------------


def _grid_spec(text: str | None, default: int) -> tuple[int, int]:
    if text is None:
        return default, default
    m = re.fullmatch(r"\s*(\d+)\s*(?:[xX]\s*(\d+))?\s*", text)
    if not m:
        raise UsageError(f"--grid expects K or KxM, got {text!r}")
    t = int(m.group(1))
    u = int(m.group(2)) if m.group(2) else t
    if t < 1 or u < 1:
        raise UsageError("--grid sizes must be positive")
    return t, u


def _family(args, alpha) -> list:
    t, u = _grid_spec(args.grid, 2 if args.family == "band" else 3)
    if args.family == "wreath":
        if args.symbolic:
            return B.symbolic_wreath()
        return B.wreath_family(B.ParameterGrid.sample(alpha, t, u))
    if args.symbolic:
        raise UsageError("--symbolic applies to the wreath family only")
    if args.family == "null":
        return B.null_family(alpha, B.parameter_classes(alpha, t, exclude_unit=False))
    arity = args.arity if args.arity is not None else 1
    if arity < 1:
        raise UsageError("band arity must be >= 1")
    classes = B.parameter_classes(alpha, max(t, u))
    return B.higher_family(alpha, [classes[:t]] * arity, [classes[:u]] * arity)


def cmd_cayley(args) -> int:
    alpha = _alpha(args.alpha, args.n)
    elems = _family(args, alpha)
    table = B.cayley_table(elems)
    # built-in families are closed; the symbolic table is the only open one
    if not args.symbolic and not table.closed:
        raise AssertionError("built-in family produced an open table")
    text = table.to_json() if args.format == "json" else table.to_csv()
    _emit(text, args.out)
    return EXIT_OK


# -- eggbox -------------------------------------------------------------------------------


def _shape(text: str) -> int:
    m = re.fullmatch(r"\s*\(?\s*(\d+)\s*\|\s*(\d+)\s*\)?\s*", text)
    if not m or m.group(1) != m.group(2) or int(m.group(1)) < 1:
        raise UsageError(f"shape must look like (n|n) with n >= 1, got {text!r}")
    return int(m.group(1))


def cmd_eggbox(args) -> int:
    n = _shape(args.shape)
    axes = [a.strip() for a in args.axes.split(",") if a.strip()]
    if len(set(axes)) != len(axes):
        raise UsageError(f"duplicate axis in {args.axes!r}")
    alpha = _alpha(args.alpha, args.n)
    t, u = _grid_spec(args.grid, 3 if n == 1 else 2)
    classes = B.parameter_classes(alpha, max(t, u))
    if n == 1:
        elems = B.rect_family(alpha, classes[:t], classes[:u])
    else:
        elems = B.higher_family(alpha, [classes[:t]] * n, [classes[:u]] * n)
    table = B.cayley_table(elems)
    greens = G.greens_classes(table)
    parts = []
    for name in axes:
        kind = G.parse_relation(name)
        if kind[0] == "fine" and not 1 <= kind[2] <= n:
            raise UsageError(f"axis {name} needs an index in 1..{n}")
        if kind[0] == "mixed" and not set(kind[2] + kind[3]) <= set(range(1, n + 1)):
            raise UsageError(f"axis {name} needs indices in 1..{n}")
        part = greens.as_dict()[kind[1]] if kind[0] == "green" else G.relation(name, elems, table)
        parts.append((name, part))
    box = G.eggbox(table.labels, parts)
    if args.format == "dot":
        if box.dim != 2:
            raise UsageError("DOT export needs exactly two axes")
        text = box.to_dot(greens.D)
    else:
        text = box.to_json()
    _emit(text, args.out)
    return EXIT_OK


# -- ann ----------------------------------------------------------------------------------


def cmd_ann(args) -> int:
    alpha = _alpha(args.alpha, args.n)
    ann = annihilator_even(alpha)
    basis = [b.to_text(unicode=args.unicode) for b in ann.basis]
    if args.format == "json":
        payload = {
            "alpha": alpha.to_text(),
            "n_generators": alpha.n,
            "even_dimension": len(even_masks(alpha.n)),
            "dimension": ann.dim,
            "basis": [b.to_json() for b in ann.basis],
        }
        text = json.dumps(payload, indent=2, ensure_ascii=False) + "\n"
    else:
        lines = [
            f"alpha: {alpha.to_text(unicode=args.unicode)}",
            f"N: {alpha.n}",
            f"dimension: {ann.dim} (even sector {len(even_masks(alpha.n))})",
            "basis: {" + ", ".join(basis) + "}",
        ]
        text = "\n".join(lines) + "\n"
    _emit(text, args.out)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="superband",
        description="Exact Grassmann algebra, supermatrices and band semigroups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite")
    tier = v.add_mutually_exclusive_group()
    tier.add_argument("--quick", action="store_true", help="small exhaustive grids (default)")
    tier.add_argument("--full", action="store_true", help="larger seeded sweeps")
    v.add_argument("--config", help="key = value file")
    v.add_argument("--seed", type=int)
    v.add_argument("--n", type=int, help="number of generators")
    v.add_argument("--alpha", help="odd element numbering the bands")
    v.add_argument("--format", choices=["text", "json"])
    v.add_argument("--claim", action="append", help="run only this claim (repeatable)")
    v.add_argument("--out")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("eval", help="evaluate an expression")
    e.add_argument("expr")
    e.add_argument("--n", type=int, help="number of generators (default: largest used)")
    e.add_argument("--unicode", action="store_true", help="print generators as θk")
    e.add_argument("--format", choices=["text", "json"], default="text")
    e.add_argument("--out")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("cayley", help="write a Cayley table")
    c.add_argument("family", choices=["wreath", "band", "null"])
    c.add_argument("arity", nargs="?", type=int, help="n for the (n|n)-band")
    c.add_argument("--symbolic", action="store_true", help="formal t, u, v, w labels (wreath)")
    c.add_argument("--grid", help="parameter classes: K or KxM")
    c.add_argument("--alpha", default="g1")
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.add_argument("--out")
    c.set_defaults(func=cmd_cayley)

    g = sub.add_parser("eggbox", help="write an eggbox diagram")
    g.add_argument("shape", help="(n|n)")
    g.add_argument("--axes", default="R,L", help="comma-separated relations, e.g. R1,R2,L1")
    g.add_argument("--grid", help="parameter classes: K or KxM")
    g.add_argument("--alpha", default="g1")
    g.add_argument("--n", type=int, default=3)
    g.add_argument("--format", choices=["json", "dot"], default="json")
    g.add_argument("--out")
    g.set_defaults(func=cmd_eggbox)

    a = sub.add_parser("ann", help="annihilator of an odd element")
    a.add_argument("--alpha", required=True)
    a.add_argument("--n", type=int)
    a.add_argument("--unicode", action="store_true")
    a.add_argument("--format", choices=["text", "json"], default="text")
    a.add_argument("--out")
    a.set_defaults(func=cmd_ann)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, SuperbandError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

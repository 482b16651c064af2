"""``slatt`` command line: gen, check, survey, congruences, swing, render.

Inputs are JSON files holding either a recipe ``{"grid": [m, n], "forks": [...]}``
or an explicit lattice ``{"n": k, "upper_covers": [[...], ...]}``; ``-`` reads stdin.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error, 3 one of the
four properties of P failed on a valid input (a witness file is written).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .congruence import ji_poset, oracle_leq_matrix
from .construct import BadDims, Recipe, apply_recipe, grid, random_forks
from .lattice import Edge, Lattice, LatticeError, lattice_from_dict
from .layout import coordinates, render_svg, render_tikz
from .survey import (
    CHECK_SCHEMA,
    THEOREM_CHECKS,
    check_lattice,
    default_jobs,
    default_recipes,
    survey,
)
from .swing import edge_relations, swing_leq, trajectories

log = logging.getLogger("slatt")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_THEOREM = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _read_json(path: str):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON: {exc}") from None


def load_input(path: str) -> tuple[dict, Lattice]:
    """Read a recipe or lattice file; returns (description, lattice)."""
    data = _read_json(path)
    if not isinstance(data, dict):
        raise UsageError(f"{path}: expected a JSON object")
    try:
        if "grid" in data:
            recipe = Recipe.from_dict(data)
            return {"recipe": recipe.to_dict()}, apply_recipe(recipe)
        if "upper_covers" in data:
            return {"lattice": {"n": data.get("n"), "upper_covers": data["upper_covers"]}}, lattice_from_dict(data)
    except LatticeError as exc:
        raise UsageError(f"{path}: {exc}") from None
    raise UsageError(f"{path}: neither a recipe (grid) nor a lattice (upper_covers)")


def _write(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _parse_edge(K: Lattice, text: str) -> Edge:
    try:
        e = Edge.parse(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if not K.is_edge(e):
        raise UsageError(f"{text} is not an edge of the lattice")
    return e


# -- subcommands --------------------------------------------------------------


def cmd_gen(args) -> int:
    try:
        m, n = (int(v) for v in args.grid.lower().split("x"))
    except ValueError:
        raise UsageError(f"--grid expects MxN, got {args.grid!r}") from None
    try:
        grid(m, n)
    except BadDims as exc:
        raise UsageError(str(exc)) from None
    forks_arg = (args.forks or "").strip()
    if forks_arg.startswith("auto:"):
        try:
            k = int(forks_arg[5:])
        except ValueError:
            raise UsageError(f"--forks auto:K expects an integer, got {forks_arg!r}") from None
        if k < 0:
            raise UsageError("--forks auto:K needs K >= 0")
        recipe = random_forks(m, n, k, args.seed if args.seed is not None else 0)
    else:
        try:
            forks = tuple(int(v) for v in forks_arg.split(",") if v.strip())
        except ValueError:
            raise UsageError(f"--forks expects auto:K or a comma list of ids, got {forks_arg!r}") from None
        recipe = Recipe((m, n), forks, args.seed)
        try:
            apply_recipe(recipe)
        except LatticeError as exc:
            raise UsageError(str(exc)) from None
    _write(json.dumps(recipe.to_dict()) + "\n", args.output)
    return EXIT_OK


def cmd_check(args) -> int:
    desc, K = load_input(args.input)
    report = {"schema": CHECK_SCHEMA, **desc, **check_lattice(K)}
    _write(_dump(report), args.output)
    failures = report["failures"]
    theorem = [f for f in failures if f in THEOREM_CHECKS]
    if theorem:
        Path(args.witness_file).write_text(_dump(report), encoding="utf-8")
        print(
            f"IMPLEMENTATION BUG OR DISCOVERY: {', '.join(theorem)} failed on a valid "
            f"slim rectangular lattice; witness written to {args.witness_file}",
            file=sys.stderr,
        )
        return EXIT_THEOREM
    if failures:
        print(f"checks failed: {', '.join(failures)}", file=sys.stderr)
        return EXIT_FAIL
    if not report["valid"]["ok"]:
        print(f"input is not slim rectangular: {report['valid']['diagnosis']}", file=sys.stderr)
    return EXIT_OK


def _triple(text: str) -> tuple[int, int, int]:
    try:
        m, n, k = (int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected M,N,K, got {text!r}") from None
    if m < 2 or n < 2 or k < 0:
        raise argparse.ArgumentTypeError("bounds need M, N >= 2 and K >= 0")
    return m, n, k


def cmd_survey(args) -> int:
    m, n, k = args.bounds if args.bounds else (4, 4, 2)
    count = args.random if args.random is not None else (0 if args.bounds else 100)
    recipes = default_recipes(m, n, k, random_count=count)
    report = survey(recipes, jobs=args.jobs, timing=args.timing)
    _write(_dump(report), args.output)
    s = report["summary"]
    print(
        f"{s['recipes']} recipes, {s['valid']} valid, {s['failed_recipes']} with failures, "
        f"{s['theorem_failures']} theorem failures",
        file=sys.stderr,
    )
    if s["theorem_failures"]:
        bad = [r for r in report["records"] if any(f in THEOREM_CHECKS for f in r.get("failures", []))]
        Path(args.witness_file).write_text(_dump(bad), encoding="utf-8")
        print(f"IMPLEMENTATION BUG OR DISCOVERY: witnesses written to {args.witness_file}", file=sys.stderr)
        return EXIT_THEOREM
    return EXIT_FAIL if s["failed_recipes"] else EXIT_OK


def cmd_congruences(args) -> int:
    _, K = load_input(args.input)
    P, col = ji_poset(K)
    out = P.to_dict()
    out["col"] = {str(e): col[e] for e in K.edges}
    _write(json.dumps(out) + "\n", args.output)
    return EXIT_OK


def cmd_swing(args) -> int:
    _, K = load_input(args.input)
    if not args.pair and not args.verify_oracle:
        raise UsageError("swing needs --pair U V and/or --verify-oracle")
    out: dict = {}
    code = EXIT_OK
    if args.pair:
        U, V = (_parse_edge(K, t) for t in args.pair)
        leq, path = swing_leq(K, U, V, witness=True)
        out.update({"U": str(U), "V": str(V), "leq": leq})
        if args.witness:
            out["path"] = path.to_list() if path else None
    if args.verify_oracle:
        mismatch = edge_relations(K).leq_matrix() != oracle_leq_matrix(K)
        edges = K.edges
        out["verify_oracle"] = {
            "pairs": int(mismatch.size),
            "mismatches": int(mismatch.sum()),
            "examples": [[str(edges[i]), str(edges[j])] for i, j in np.argwhere(mismatch)[:10]],
        }
        if mismatch.any():
            code = EXIT_FAIL
    _write(_dump(out), args.output)
    return code


def cmd_render(args) -> int:
    _, K = load_input(args.input)
    layout = coordinates(K)
    colors = ji_poset(K).col if args.colors else None
    trajs = [t.edges for t in trajectories(K)] if args.trajectories else None
    if args.format == "svg":
        text = render_svg(K, layout, colors, trajs)
    else:
        text = render_tikz(K, layout, colors, trajs)
    _write(text, args.output)
    return EXIT_OK


# -- entry point --------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="slatt", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a recipe JSON")
    g.add_argument("--grid", required=True, help="MxN, both at least 2")
    g.add_argument("--forks", default="", help="auto:K or a comma list of cell-bottom ids")
    g.add_argument("--seed", type=int)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", help="validate one lattice and run every check")
    c.add_argument("input")
    c.add_argument("-o", "--output")
    c.add_argument("--witness-file", default="slatt-witness.json")
    c.set_defaults(func=cmd_check)

    s = sub.add_parser("survey", help="check a whole corpus")
    s.add_argument("--bounds", type=_triple, help="M,N,K for the exhaustive part (default 4,4,2)")
    s.add_argument("--random", type=int, help="seeded random recipes (default 100 without --bounds, else 0)")
    s.add_argument("--jobs", type=int, default=default_jobs())
    s.add_argument("--timing", action="store_true", help="record per-recipe seconds (breaks byte-determinism)")
    s.add_argument("-o", "--output")
    s.add_argument("--witness-file", default="slatt-witness.json")
    s.set_defaults(func=cmd_survey)

    k = sub.add_parser("congruences", help="print P and the edge coloring")
    k.add_argument("input")
    k.add_argument("-o", "--output")
    k.set_defaults(func=cmd_congruences)

    w = sub.add_parser("swing", help="decide con(V) <= con(U) by swing paths")
    w.add_argument("input")
    w.add_argument("--pair", nargs=2, metavar=("U", "V"))
    w.add_argument("--verify-oracle", action="store_true")
    w.add_argument("--witness", action="store_true")
    w.add_argument("-o", "--output")
    w.set_defaults(func=cmd_swing)

    r = sub.add_parser("render", help="draw the C1-diagram")
    r.add_argument("input")
    r.add_argument("--format", choices=("svg", "tikz"), default="svg")
    r.add_argument("--colors", action="store_true")
    r.add_argument("--trajectories", action="store_true")
    r.add_argument("-o", "--output")
    r.set_defaults(func=cmd_render)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"slatt {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

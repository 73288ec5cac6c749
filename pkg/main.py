#!/usr/bin/env python3
"""
coxrig - computations in the universal Coxeter group W_n and its automorphisms

- word:    reduce, multiply, invert and conjugate words; conjugacy and involution tests
- aut:     show, apply and compare automorphisms and their outer classes
- gilbert: dump the relators of the presentation of Out(W_n)
- verify:  run the claim suite and write a JSON report
- spine:   enumerate tree shapes and the marked stars around the standard F-star
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional, Tuple

from src import automorphism as aut
from src import finite_subgroup as fs
from src import spine as sp
from src import word_core as wc
from src.config import load_settings, set_settings
from src.errors import ClaimFailed, CoxrigError
from src.export import (
    export_dot,
    export_relator_dump,
    export_report_json,
    marked_graph_to_dot,
    report_json,
    shape_records,
    shape_to_dot,
    shapes_json,
)
from src.gilbert_presentation import relator_dump
from src.permutations import format_perm
from src.rank3_bridge import matrix_record
from src.report import ClaimReport
from src.verification import SCOPES, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def progress(message: str) -> None:
    print(message, file=sys.stderr)


def parse_rank_range(text: str) -> Tuple[int, int]:
    """'4' -> (4, 4); '3..5' -> (3, 5)"""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_n, hi_n = int(lo), int(hi)
        else:
            lo_n = hi_n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}")
    if lo_n < 1 or hi_n < lo_n:
        raise argparse.ArgumentTypeError(f"bad rank range {text!r}")
    return lo_n, hi_n


# --- word ---

def cmd_word(args) -> int:
    n = args.n
    u = wc.GroupWord.parse(args.u, n)
    if args.action == "reduce":
        print(u)
    elif args.action == "multiply":
        print(wc.multiply(u, wc.GroupWord.parse(args.v, n)))
    elif args.action == "invert":
        print(wc.invert(u))
    elif args.action == "conjugate":
        print(wc.conjugate(u, wc.GroupWord.parse(args.v, n)))
    elif args.action == "cyclic":
        core, conjugator = wc.cyclic_reduce(u)
        print(f"core: {core}")
        print(f"conjugator: {conjugator}")
    elif args.action == "conj-test":
        v = wc.GroupWord.parse(args.v, n)
        print("conjugate" if wc.are_conjugate(u, v) else "not conjugate")
    elif args.action == "decompose":
        w, j = wc.involution_decompose(u)
        print(f"{w} | x{j}")
    return EXIT_OK


# --- aut ---

def cmd_aut(args) -> int:
    n = args.n
    a = aut.parse_automorphism(args.expr, n)
    if args.action == "show":
        print(a)
        print(f"trace: {a.format_trace()}")
    elif args.action == "apply":
        if args.word is None:
            raise argparse.ArgumentTypeError("aut apply needs --word")
        print(aut.apply(a, wc.GroupWord.parse(args.word, n)))
    elif args.action == "outer":
        print(aut.outer(a))
    elif args.action == "outer-eq":
        if args.other is None:
            raise argparse.ArgumentTypeError("aut outer-eq needs a second expression")
        b = aut.parse_automorphism(args.other, n)
        print("equal" if aut.outer_equal(a, b) else "not equal")
    elif args.action == "order":
        print(aut.order_of(aut.outer(a)))
    elif args.action == "perm":
        print(format_perm(aut.class_permutation(a)))
    elif args.action == "matrix":
        print(matrix_record(a).model_dump_json(indent=2))
    return EXIT_OK


# --- gilbert ---

def cmd_gilbert(args) -> int:
    if args.out:
        export_relator_dump(args.n, args.out)
        progress(f"Relators saved to: {args.out}")
    else:
        print(relator_dump(args.n))
    return EXIT_OK


# --- verify ---

def cmd_verify(args) -> int:
    n_min, n_max = args.n
    settings = load_settings(seed=args.seed, max_closure=args.max_closure)
    set_settings(settings)

    progress(f"Verifying scope '{args.scope}' for n = {n_min}..{n_max} (seed {settings.seed})")
    progress("\nStep 1: Running claims...")

    def show(r: ClaimReport) -> None:
        mark = {"pass": "PASS", "fail": "FAIL", "skipped": "skip"}[r.status]
        progress(f"  [{mark}] {r.claim_id} ({r.elapsed_ms:.0f} ms)")
        if r.failed:
            progress(f"         {r.details.get('message') or r.details.get('error', '')}")

    suite = run_suite(args.scope, n_min, n_max, settings.seed, args.inject_failure, on_result=show)

    progress("\nStep 2: Writing report...")
    if args.out:
        export_report_json(suite, args.out)
        progress(f"  Report saved to: {args.out}")
    else:
        print(report_json(suite))

    totals = suite.totals
    progress("\n" + "=" * 60)
    progress(f"passed {totals['pass']}, failed {totals['fail']}, skipped {totals['skipped']}")
    return EXIT_OK if suite.ok else EXIT_FAIL


# --- spine ---

def _write_dots(dot_dir: Optional[str], items: List[Tuple[str, str]]) -> None:
    if not dot_dir:
        return
    for name, text in items:
        export_dot(text, str(Path(dot_dir) / f"{name}.dot"))
    progress(f"  Wrote {len(items)} DOT files to {dot_dir}")


def cmd_spine(args) -> int:
    n = args.n
    if not 2 <= n <= 6:
        raise argparse.ArgumentTypeError(f"spine commands need 2 <= n <= 6, got {n}")

    if args.action == "enumerate":
        shapes = sp.enumerate_shapes(n, pointed=args.pointed)
        records = shape_records(shapes, pointed=args.pointed)
        progress(f"Found {len(records)} shapes for n = {n}")
        if args.json:
            print(shapes_json(records))
        else:
            for r in records:
                print(f"{r.shape_id}: {r.vertices} vertices, {r.leaves} leaves, "
                      f"{r.star_class}, twist rank {r.twist_rank}")
        _write_dots(args.dot, [(r.shape_id, shape_to_dot(s, r.shape_id)) for r, s in zip(records, shapes)])

    elif args.action == "stars":
        stars = [("zero_star", sp.standard_zero_star(n)), ("f_star", sp.standard_f_star(n))]
        rows = []
        for name, v in stars:
            labels = {str(k): str(w) for k, w in sorted(v.labels().items())}
            rows.append({"name": name, "star_class": sp.classify_star(v.shape).value,
                         "edges": [list(e) for e in v.shape.edges], "labels": labels})
        if args.json:
            print(json.dumps(rows, indent=2))
        else:
            for row in rows:
                print(f"{row['name']}: {row['star_class']}, labels {row['labels']}")
        _write_dots(args.dot, [(name, marked_graph_to_dot(v, name)) for name, v in stars])

    elif args.action == "adjacency":
        if n < 3:
            raise argparse.ArgumentTypeError("adjacency needs n >= 3")
        stars = sp.zero_stars_adjacent_to_f_star(n)
        b_gens = fs.generators_b(n)
        rows = []
        for k, v in enumerate(stars, 1):
            fixed = all(sp.stabilizes(c, v) for c in b_gens)
            labels = {str(u): str(w) for u, w in sorted(v.labels().items())}
            rows.append({"id": f"z{n}-{k}", "b_fixed": fixed, "labels": labels})
        progress(f"{len(stars)} zero-stars adjacent to the standard F-star")
        if args.json:
            print(json.dumps(rows, indent=2))
        else:
            for row in rows:
                flag = "  <- fixed by B_n" if row["b_fixed"] else ""
                print(f"{row['id']}: {row['labels']}{flag}")
        _write_dots(args.dot, [(row["id"], marked_graph_to_dot(v, row["id"])) for row, v in zip(rows, stars)])
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coxrig",
        description="Computations in W_n, Aut(W_n) and Out(W_n), and the claim verification suite"
    )
    sub = parser.add_subparsers(dest='command', required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--verbose', action='store_true', help='Debug logging to stderr')

    word = sub.add_parser('word', parents=[common], help='Word operations in W_n')
    word.add_argument('action', choices=['reduce', 'multiply', 'invert', 'conjugate', 'cyclic',
                                         'conj-test', 'decompose'])
    word.add_argument('--n', type=int, required=True, help='Rank')
    word.add_argument('u', help='Word, letters separated by spaces ("e" for the identity)')
    word.add_argument('v', nargs='?', help='Second word (multiply, conjugate, conj-test)')
    word.set_defaults(func=cmd_word)

    autp = sub.add_parser('aut', parents=[common], help='Automorphisms of W_n')
    autp.add_argument('action', choices=['show', 'apply', 'outer', 'outer-eq', 'order', 'perm', 'matrix'])
    autp.add_argument('--n', type=int, required=True, help='Rank')
    autp.add_argument('--expr', help='Automorphism as ";"-joined tokens, e.g. "s3,2;t1"')
    autp.add_argument('exprs', nargs='*', help='Automorphism expression(s) when --expr is not given')
    autp.add_argument('--word', help='Word to apply the automorphism to')
    autp.set_defaults(func=cmd_aut)

    gil = sub.add_parser('gilbert', parents=[common], help='Presentation of Out(W_n)')
    gil.add_argument('action', choices=['dump'])
    gil.add_argument('--n', type=int, required=True, help='Rank')
    gil.add_argument('--out', type=str, help='Output file (default: stdout)')
    gil.set_defaults(func=cmd_gilbert)

    ver = sub.add_parser('verify', parents=[common], help='Run the claim suite')
    ver.add_argument('--scope', choices=['all', *SCOPES], default='all')
    ver.add_argument('--n', type=parse_rank_range, default=(3, 5), help='Rank or range A..B (default: 3..5)')
    ver.add_argument('--out', type=str, help='Output JSON file path (default: stdout)')
    ver.add_argument('--seed', type=int, default=None, help='Seed of randomized samples (env COXRIG_SEED)')
    ver.add_argument('--max-closure', type=int, default=None, help='Subgroup closure cap')
    ver.add_argument('--inject-failure', action='store_true', help='Add a deliberately failing claim')
    ver.set_defaults(func=cmd_verify)

    spn = sub.add_parser('spine', parents=[common], help='Shapes and marked stars')
    spn.add_argument('action', choices=['enumerate', 'stars', 'adjacency'])
    spn.add_argument('--n', type=int, required=True, help='Rank (2..6)')
    spn.add_argument('--pointed', action='store_true', help='Enumerate pointed shapes')
    spn.add_argument('--json', action='store_true', help='JSON output')
    spn.add_argument('--dot', type=str, default=None, help='Directory for DOT files')
    spn.set_defaults(func=cmd_spine)
    return parser


def _normalize_aut_args(args) -> None:
    if getattr(args, 'command', None) != 'aut':
        return
    exprs = list(args.exprs)
    if args.expr is None:
        if not exprs:
            raise argparse.ArgumentTypeError("aut needs an automorphism expression")
        args.expr = exprs.pop(0)
    args.other = exprs[0] if exprs else None


def parse_arguments(parser: argparse.ArgumentParser, argv: Optional[List[str]]) -> argparse.Namespace:
    """Parse argv; words left after the options of `aut` are its expressions."""
    args, extras = parser.parse_known_args(argv)
    if extras:
        if getattr(args, "command", None) != "aut" or any(x.startswith("-") for x in extras):
            parser.error(f"unrecognized arguments: {' '.join(extras)}")
        args.exprs = list(args.exprs) + extras
    return args


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parse_arguments(parser, argv)

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        _normalize_aut_args(args)
        return args.func(args)
    except ClaimFailed as e:
        print(f"Claim failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    except (argparse.ArgumentTypeError, CoxrigError, ValueError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

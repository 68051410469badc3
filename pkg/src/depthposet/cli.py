"""Command-line interface: ``depthposet <command> ...``.

Exit codes: 0 success, 1 input error, 2 verification mismatch.
"""
from __future__ import annotations

import argparse
import sys
from typing import Optional, Sequence

from .cancellation import cancel, cancel_shallow, shallow_pairs
from .complex import LefschetzComplex, betti, validate_complex
from .fixtures import circle, dunce_hat
from .depth import build_depth_poset, order_pi, reduce_alpha, reduce_omega
from .io import (
    dump_complex,
    emit_annotated_diagram,
    emit_closure_json,
    emit_dot,
    emit_svg,
    load_complex,
    pair_label,
)
from .matrix import build_matrix, standard_reduction
from .oracle import DEFAULT_CAP, random_filtered_complex, verify_sweep


FIXTURES = {"circle": circle, "dunce-hat": dunce_hat}


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def _load(args, need_filter: bool = True):
    complex, filter = load_complex(args.file, args.filter, args.perturb)
    if need_filter and filter is None:
        raise InputError(f"{args.file}: no filter values (give cell values or --filter)")
    if args.dump_matrix and filter is not None:
        m = build_matrix(complex, filter)
        sys.stderr.write(m.dump_ascii() + "\n\n" + m.dump_coo() + "\n")
    return complex, filter


def _cell(complex: LefschetzComplex, token: str) -> int:
    try:
        return complex.by_label(token)
    except KeyError:
        pass
    if token.isdigit() and int(token) < len(complex):
        return int(token)
    raise InputError(f"unknown cell {token!r}")


def cmd_validate(args) -> int:
    complex, _ = _load(args, need_filter=False)
    problems = validate_complex(complex)
    for p in problems:
        print(p)
    if not problems:
        print(f"ok: {len(complex)} cells, {len(complex.incidence)} incidences")
    return 1 if problems else 0


def cmd_pairs(args) -> int:
    complex, filter = _load(args)
    pairing = standard_reduction(build_matrix(complex, filter))
    for p in pairing.pairs:
        print(f"{pair_label(complex, p.cells)} dim={p.dim} persistence={p.persistence!r}")
    ess = sorted(pairing.essential, key=filter.values.__getitem__)
    print("essential: " + " ".join(complex.name(i) for i in ess))
    return 0


def cmd_shallow(args) -> int:
    complex, filter = _load(args)
    for s, t in sorted(shallow_pairs(complex, filter), key=lambda p: filter[p.death]):
        print(pair_label(complex, (s, t)))
    return 0


def cmd_cancel(args) -> int:
    complex, filter = _load(args)
    before = betti(complex)
    current, cfilter = complex, filter
    for b_tok, d_tok in args.pair:
        s = current.local_id(complex.origin[_cell(complex, b_tok)])
        t = current.local_id(complex.origin[_cell(complex, d_tok)])
        try:
            if args.shallow:
                current, cfilter = cancel_shallow(current, cfilter, (s, t), debug=args.debug_check)
            else:
                current, cfilter = cancel(current, cfilter, s, t)
        except ValueError as e:
            raise InputError(str(e)) from None
    after = betti(current)
    _write(dump_complex(current, cfilter), args.output)
    report = f"betti before: {list(before.ranks)}\nbetti after: {list(after.ranks)}\n"
    (sys.stdout if args.output else sys.stderr).write(report)
    return 0


def cmd_depth(args) -> int:
    complex, filter = _load(args)
    poset = build_depth_poset(complex, filter)
    if args.format == "dot":
        text = emit_dot(poset, complex)
    elif args.format == "json":
        text = emit_closure_json(poset, complex, filter)
    elif args.format == "csv":
        text = emit_annotated_diagram(poset, filter)
    else:
        text = emit_svg(poset, filter)
    _write(text, args.output)
    return 0


def cmd_orders(args) -> int:
    complex, filter = _load(args)
    m = build_matrix(complex, filter)
    alpha, _ = reduce_alpha(m)
    omega, _ = reduce_omega(m)
    pi = order_pi(standard_reduction(m), filter)
    for name, order in (("alpha", alpha), ("omega", omega), ("pi", pi)):
        print(f"{name}: " + " ".join(pair_label(complex, p.cells) for p in order))
    return 0


def cmd_verify(args) -> int:
    results = verify_sweep(args.seeds, args.max_bd, args.cap, start=args.seed, workers=args.workers)
    good = sum(r.ok for r in results)
    for r in results:
        if not r.ok:
            print(f"mismatch: seed={r.seed} pairs={r.n_pairs} {r.detail}")
    print(f"{good}/{len(results)} match")
    return 0 if good == len(results) else 2


def cmd_random(args) -> int:
    complex, filter = random_filtered_complex(args.seed, args.vertices, args.dim, args.density)
    _write(dump_complex(complex, filter), args.output)
    return 0


def cmd_fixture(args) -> int:
    complex, filter = FIXTURES[args.name]()
    _write(dump_complex(complex, filter), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="depthposet", description="Depth posets of filtered Lefschetz complexes over Z/2.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    common = _Parser(add_help=False)
    common.add_argument("file", help="complex JSON file")
    common.add_argument("--filter", help="separate filter JSON file")
    common.add_argument("--perturb", action="store_true", help="break value ties instead of rejecting them")
    common.add_argument("--dump-matrix", action="store_true", help="print the ordered boundary matrix to stderr")

    sub.add_parser("validate", parents=[common], help="check the Lefschetz condition").set_defaults(run=cmd_validate)
    sub.add_parser("pairs", parents=[common], help="birth-death pairs and essential cells").set_defaults(run=cmd_pairs)
    sub.add_parser("shallow", parents=[common], help="shallow pairs").set_defaults(run=cmd_shallow)

    p = sub.add_parser("cancel", parents=[common], help="cancel facet-cofacet pairs")
    p.add_argument("--pair", nargs=2, action="append", required=True, metavar=("BIRTH", "DEATH"))
    p.add_argument("--shallow", action="store_true", help="require each pair to be shallow")
    p.add_argument("--debug-check", action="store_true", help="check pairing postconditions after each shallow cancellation")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_cancel)

    p = sub.add_parser("depth", parents=[common], help="depth poset")
    p.add_argument("--format", choices=["dot", "json", "csv", "svg"], default="dot")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_depth)

    sub.add_parser("orders", parents=[common], help="alpha, omega and persistence orders").set_defaults(run=cmd_orders)

    p = sub.add_parser("verify", help="compare the depth poset with brute force on random instances")
    p.add_argument("--seeds", type=int, default=200)
    p.add_argument("--seed", type=int, default=0, help="first seed")
    p.add_argument("--max-bd", type=int, default=6)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("random", help="write a random filtered flag complex")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--vertices", type=int, default=6)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_random)

    p = sub.add_parser("fixture", help="write a built-in example complex")
    p.add_argument("name", choices=sorted(FIXTURES))
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_fixture)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.run(args)
    except (InputError, OSError, ValueError) as e:
        print(f"depthposet: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

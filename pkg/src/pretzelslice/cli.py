"""Command-line front end.

Exit codes: 0 obstruction found (or screen done), 1 no obstruction
(a morphism exists), 2 invalid input, 3 timeout.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import covers
from .lattices import NotPositiveSemidefinite, SearchConfig, SearchStatus, find_morphism
from .linalg import SymIntMat, format_matrix, homology_from_presentation, read_matrix
from .pretzel import PretzelParams, slice_screen
from .report import run_obstruction

EXIT_OK, EXIT_EXISTS, EXIT_INVALID, EXIT_TIMEOUT = 0, 1, 2, 3

MATRICES = {
    "sigma3": covers.sigma3_matrix,
    "intermediate": covers.intermediate_matrix,
    "qx": covers.qx_matrix,
    "plumbing": covers.plumbing_matrix,
}


def _search_config(args) -> SearchConfig:
    workers = args.workers or (os.cpu_count() or 1)
    if args.parallel:
        return SearchConfig(deterministic=False, timeout=args.timeout, workers=workers)
    return SearchConfig(deterministic=True, timeout=args.timeout)


def cmd_obstruct(args) -> int:
    report = run_obstruction(args.p, args.q, args.method, _search_config(args))
    if args.json:
        print(report.to_json())
        return report.exit_code()
    print(f"P({args.p},{args.q},{-args.p},{-args.q}): {report.verdict}")
    if report.n is not None:
        print(f"  n = {report.n}, b1(Sigma_3) = {report.b1_sigma3}, rank(Q_X) = {report.rank_qx}")
        for key, value in report.definiteness.items():
            print(f"  {key}: {value}")
    for name, res in report.methods.items():
        if not isinstance(res, dict):
            print(f"  {name}: {res}")
            continue
        extra = f" ({res['nodes']} nodes, {res['elapsed']:.3f}s)" if "nodes" in res else ""
        print(f"  {name}: {res['verdict']}{extra}")
    return report.exit_code()


def cmd_screen(args) -> int:
    try:
        P = PretzelParams.parse(args.params)
        res = slice_screen(P)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(json.dumps(res.to_dict(), indent=2 if args.json else None))
    return EXIT_OK


def cmd_embed(args) -> int:
    try:
        rows, labels = read_matrix(args.matrix)
        G = SymIntMat.from_rows(rows, labels)
        res = find_morphism(G, args.rank, _search_config(args))
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(f"# {res.status.value} nodes={res.nodes} elapsed={res.elapsed:.3f}s")
    if res.status is SearchStatus.FOUND:
        sys.stdout.write(res.morphism.format())
        return EXIT_EXISTS
    if res.status is SearchStatus.NOT_FOUND:
        print("# complete search: no morphism into (Z^r, Id) exists")
        return EXIT_OK
    return EXIT_TIMEOUT


def cmd_matrix(args) -> int:
    try:
        M = MATRICES[args.which](args.p, args.q)
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = format_matrix(M)
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_homology(args) -> int:
    try:
        rows, _ = read_matrix(args.matrix)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    h = homology_from_presentation(rows)
    if args.json:
        print(json.dumps({"b1": h.b1, "torsion": list(h.torsion)}))
    else:
        print(f"b1: {h.b1}")
        print("torsion: " + (" ".join(str(t) for t in h.torsion) or "none"))
        print(f"group: {h}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pretzelslice", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def search_opts(sp, timeout):
        sp.add_argument("--timeout", type=float, default=timeout, help="seconds (default %(default)s)")
        sp.add_argument("--parallel", action="store_true", help="split the search over worker processes")
        sp.add_argument("--workers", type=int, default=None)

    sp = sub.add_parser("obstruct", help="run the lattice obstruction for P(p,q,-p,-q)")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--method", choices=("table", "search", "both"), default="table")
    sp.add_argument("--json", action="store_true")
    search_opts(sp, 600.0)
    sp.set_defaults(func=cmd_obstruct)

    sp = sub.add_parser("screen", help="sliceness screen for a 2-component P(a,b,c,d)")
    sp.add_argument("--params", required=True, help="a,b,c,d")
    sp.add_argument("--json", action="store_true", help="pretty-print the JSON result")
    sp.set_defaults(func=cmd_screen)

    sp = sub.add_parser("embed", help="search for a morphism of a Gram matrix into (Z^r, Id)")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--rank", type=int, required=True)
    search_opts(sp, 600.0)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("matrix", help="emit one of the cover matrices")
    sp.add_argument("--which", choices=sorted(MATRICES), required=True)
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_matrix)

    sp = sub.add_parser("homology", help="b1 and torsion of the group presented by a matrix")
    sp.add_argument("--matrix", required=True)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_homology)
    return parser


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--params -3,5,3,-5" would otherwise be read as an option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--params", "--p", "--q") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except NotPositiveSemidefinite as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())

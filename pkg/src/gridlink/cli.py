"""Command-line interface: ``gridlink <command> [grid file] [options]``.

Exit codes: 0 success, 1 a check failed, 2 bad input, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import __version__
from .conway import conway_data, fox_matrix
from .exceptions import (
    GridLinkError,
    IllegalMove,
    InvalidGrid,
    LemmaViolation,
    NotDivisible,
    ResourceLimit,
    WeightAmbiguous,
)
from .floer.complex import DEFAULT_MAX_HOMOLOGY_N
from .floer.euler import ROUTES, euler, tilde_poincare
from .floer.homology import hat_from_tilde
from .grid import (
    apply_moves,
    base_permutation,
    grid_to_json,
    format_grid,
    load_grid,
    parse_move_script,
    upward_counts,
)
from .laurent import format_half
from .verify import DEFAULT_FUZZ_MAX_N, VerificationReport, check_grid, fixtures, fuzz_invariance

EXIT_OK, EXIT_CHECK, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


def _emit(args, data: dict, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _grid(args):
    return load_grid(args.grid)


def cmd_validate(args) -> int:
    g = _grid(args)
    _emit(args, {"valid": True, "n": g.n, "mu": g.mu}, f"ok: n={g.n}, mu={g.mu}")
    return EXIT_OK


def cmd_info(args) -> int:
    g = _grid(args)
    data = conway_data(g)
    x0, sign = base_permutation(g)
    u, per = upward_counts(g)
    info = {
        "n": g.n,
        "mu": g.mu,
        "n_k": list(g.component_map.sizes),
        "u": u,
        "u_k": list(per),
        "kappa": list(data.kappa),
        "omega": str(data.omega),
        "x0": [c + 1 for c in x0],
        "sgn_x0": sign,
    }
    text = "\n".join(f"{k}: {' '.join(map(str, v)) if isinstance(v, list) else v}" for k, v in info.items())
    _emit(args, info, text)
    return EXIT_OK


def cmd_fox(args) -> int:
    g = _grid(args)
    f = fox_matrix(g)
    rows = [[str(e) for e in row] for row in f.entries]
    width = max((len(s) for row in rows for s in row), default=1)
    text = "\n".join("  ".join(s.rjust(width) for s in row) for row in rows)
    _emit(args, {"rows": rows}, text)
    return EXIT_OK


def cmd_conway(args) -> int:
    g = _grid(args)
    gm = conway_data(g).gamma.normalized()
    _emit(args, {"gamma": str(gm), "numerator": str(gm.num), "denominator": str(gm.den)}, str(gm))
    return EXIT_OK


def cmd_euler(args) -> int:
    g = _grid(args)
    chi = euler(g, args.route, max_n=args.max_n, threads=args.threads)
    _emit(args, {"route": args.route, "euler": str(chi)}, str(chi))
    return EXIT_OK


def _dims_lines(dims) -> list[str]:
    return [
        f"M={d:>3}  A=({', '.join(format_half(x) for x in s)})  dim={c}"
        for (d, s), c in dims.items()
    ]


def cmd_hfk(args) -> int:
    g = _grid(args)
    tilde = tilde_poincare(g, max_n=args.max_n or DEFAULT_MAX_HOMOLOGY_N, threads=args.threads)
    data = {"tilde": tilde.to_json(), "tilde_poincare": str(tilde)}
    lines = ["tilde homology:"] + _dims_lines(tilde.dims())
    if args.hat:
        hat = hat_from_tilde(tilde, g.component_map)
        data["hat"] = hat.to_json()
        data["hat_poincare"] = str(hat)
        lines += ["hat homology:"] + _dims_lines(hat.dims()) + [f"poincare: {hat}"]
    _emit(args, data, "\n".join(lines))
    return EXIT_OK


def _report_exit(args, reports: list[VerificationReport]) -> int:
    ok = all(r.passed for r in reports)
    data = {"passed": ok, "reports": [r.to_json() for r in reports]}
    _emit(args, data, "\n".join(r.format() for r in reports))
    return EXIT_OK if ok else EXIT_CHECK


def cmd_check(args) -> int:
    g = _grid(args)
    name = Path(args.grid).name
    reports = [check_grid(g, name, max_n=args.max_n or DEFAULT_MAX_HOMOLOGY_N, threads=args.threads)]
    if args.fuzz:
        reports.append(fuzz_invariance(g, args.fuzz, args.seed, max_n=args.max_n or DEFAULT_FUZZ_MAX_N, name=name))
    return _report_exit(args, reports)


def cmd_moves(args) -> int:
    g = _grid(args)
    if args.fuzz:
        name = Path(args.grid).name
        report = fuzz_invariance(
            g, args.fuzz, args.seed, length=args.length, max_n=args.max_n or DEFAULT_FUZZ_MAX_N, name=name
        )
        return _report_exit(args, [report])
    if not args.script:
        raise IllegalMove("moves needs a script file or --fuzz N")
    moves = parse_move_script(Path(args.script).read_text(encoding="utf-8"))
    h = apply_moves(g, moves)
    _emit(args, {"moves": [m.describe() for m in moves], "grid": grid_to_json(h)}, format_grid(h).rstrip())
    return EXIT_OK


def cmd_fixtures(args) -> int:
    return _report_exit(args, [fixtures(max_n=args.max_n or DEFAULT_MAX_HOMOLOGY_N, threads=args.threads)])


COMMANDS = {
    "validate": (cmd_validate, "check that a grid file is well formed"),
    "info": (cmd_info, "sizes, components, u, kappa, omega and the base state"),
    "fox": (cmd_fox, "the Fox matrix"),
    "conway": (cmd_conway, "the Conway function as a reduced fraction"),
    "euler": (cmd_euler, "the graded Euler characteristic of the hat homology"),
    "hfk": (cmd_hfk, "bigraded dimensions of the tilde (and hat) homology"),
    "check": (cmd_check, "run every identity check on a grid"),
    "moves": (cmd_moves, "apply a move script, or fuzz invariance"),
    "fixtures": (cmd_fixtures, "run the checks on the built-in corpus"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--route", choices=ROUTES, default="det", help="Euler characteristic route")
    common.add_argument("--max-n", type=int, default=None, help="largest grid size to attempt")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1, help="parallelism hint; results are unchanged")

    parser = argparse.ArgumentParser(prog="gridlink", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        p = sub.add_parser(name, parents=[common], help=help_text)
        if name != "fixtures":
            p.add_argument("grid", help="grid file (text or JSON)")
        if name == "hfk":
            p.add_argument("--hat", action="store_true", help="also deconvolve to the hat homology")
        if name == "check":
            p.add_argument("--fuzz", type=int, default=0, metavar="N", help="also run N move sequences")
        if name == "moves":
            p.add_argument("script", nargs="?", help="file with one move per line")
            p.add_argument("--fuzz", type=int, default=0, metavar="N")
            p.add_argument("--length", type=int, default=8, help="longest fuzz sequence")
    return parser


def _error_code(exc: BaseException) -> int:
    if isinstance(exc, ResourceLimit):
        return EXIT_LIMIT
    if isinstance(exc, (NotDivisible, LemmaViolation, WeightAmbiguous)):
        return EXIT_CHECK
    return EXIT_INPUT


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        return handler(args)
    except (GridLinkError, InvalidGrid, OSError) as exc:
        code = _error_code(exc)
        kind = type(exc).__name__
        if args.json:
            print(json.dumps({"error": {"type": kind, "message": str(exc), "exit_code": code}}, indent=2))
        print(f"error: {kind}: {exc}", file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())

"""Command-line entry point: ``conres {compute,gen,sweep,check}``.

Exit codes: 0 success, 2 unreadable or malformed input, 3 invalid graph or
parameters, 4 computation failure, 5 identity check failure.
"""
from __future__ import annotations

import argparse
import math
import re
import sys
from typing import Callable, Sequence

import numpy as np

from . import errors
from .builders import WHEATSTONE_EDGES, cycle, dumbbell, wheatstone
from .classical import classical_effective_resistance
from .conductance import conductance_matrix
from .decompose import decompose_signature, is_consistent, nullity
from .graph import ConnectionGraph
from .identities import run_identity_suite
from .io import dumps, fmt_float, load, matrix_csv, write_csv
from .meanpath import omega0, omega1_loop
from .resistance import chung_connection_resistance, resistance_matrix, scalar_connection_resistance
from .tolerances import ORTH_TOL

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_COMPUTE, EXIT_CHECK = 0, 2, 3, 4, 5

SCALAR_QUANTITIES = ("classical-er", "chung-cr", "scalar-cr", "nullity", "consistent")
MATRIX_QUANTITIES = ("conductance", "resistance", "omega0", "omega1")
SWEEP_QUANTITIES = ("scalar-cr", "chung-cr", "classical-er", "conductance-blocks", "resistance-blocks")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------

_ANGLE = re.compile(r"^\s*([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)?\s*\*?\s*(pi)?\s*(?:/\s*(\d+\.?\d*))?\s*$")


def parse_angle(text: str) -> float:
    """Parse ``1.5``, ``pi``, ``2pi``, ``pi/2`` or ``3*pi/4``."""
    m = _ANGLE.match(text)
    if not m or (m.group(1) is None and m.group(2) is None):
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}")
    val = float(m.group(1)) if m.group(1) is not None else 1.0
    if m.group(2):
        val *= math.pi
    if m.group(3):
        val /= float(m.group(3))
    return val


def parse_grid(text: str) -> np.ndarray:
    """``start:stop:steps`` to an inclusive ``linspace``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("grid must look like start:stop:steps")
    start, stop = parse_angle(parts[0]), parse_angle(parts[1])
    try:
        steps = int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"steps must be an integer, got {parts[2]!r}") from exc
    if steps < 2 or not (np.isfinite(start) and np.isfinite(stop)):
        raise argparse.ArgumentTypeError("grid needs finite bounds and at least 2 steps")
    return np.linspace(start, stop, steps)


def parse_tolerances(items: Sequence[str] | None) -> dict[str, float]:
    out = {}
    for item in items or ():
        name, sep, val = item.partition("=")
        if not sep:
            raise CliError(EXIT_VALIDATION, f"tolerance override {item!r} must look like name=value")
        try:
            out[name.strip()] = float(val)
        except ValueError:
            raise CliError(EXIT_VALIDATION, f"tolerance override {item!r} has a non-numeric value") from None
    return out


def _load(args) -> ConnectionGraph:
    tols = parse_tolerances(args.tolerance)
    return load(args.input, orth_tol=tols.get("orth", ORTH_TOL)).graph


def _labels(pair: Sequence[int], d: int) -> list[str]:
    return [f"{v}_{k}" for v in pair for k in range(d)]


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------

def cmd_compute(args) -> int:
    cg = _load(args)
    i, j = args.pair
    q = args.quantity
    out = sys.stdout
    if q == "classical-er":
        out.write(fmt_float(classical_effective_resistance(cg.graph, i, j)) + "\n")
    elif q == "chung-cr":
        out.write(fmt_float(chung_connection_resistance(cg, i, j)) + "\n")
    elif q == "scalar-cr":
        out.write(fmt_float(scalar_connection_resistance(cg, i, j)) + "\n")
    elif q == "nullity":
        out.write(f"{nullity(cg)}\n")
    elif q == "consistent":
        out.write(f"{str(is_consistent(cg)).lower()}\n")
    elif q in ("conductance", "resistance"):
        pm = conductance_matrix(cg, i, j) if q == "conductance" else resistance_matrix(cg, i, j)
        labels = _labels(pm.pair, cg.d)
        out.write(matrix_csv(pm.full, labels, labels))
    elif q == "omega0":
        val = omega0(cg, i, j).value
        out.write(matrix_csv(val, [str(k) for k in range(cg.d)], [str(k) for k in range(cg.d)]))
    elif q == "omega1":
        val = omega1_loop(cg, i).value
        out.write(matrix_csv(val, [str(k) for k in range(cg.d)], [str(k) for k in range(cg.d)]))
    return EXIT_OK


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def _build(args, theta_override: float | None = None, swept: tuple[int, int] | None = None) -> ConnectionGraph:
    b = args.builder
    if b == "cycle":
        theta = args.theta if theta_override is None else theta_override
        return cycle(args.n, theta, d=args.d)
    if b == "dumbbell":
        t12, t23 = args.theta12, args.theta23
        if theta_override is not None:
            if swept == (2, 3):
                t23 = theta_override
            else:
                t12 = theta_override
        return dumbbell(args.m, t12, t23, closing_edge=args.closing_edge)
    if b == "wheatstone":
        theta = args.theta if theta_override is None else theta_override
        edge = tuple(args.edge) if args.edge else (2, 4)
        return wheatstone(theta, edge=edge)
    raise CliError(EXIT_VALIDATION, f"unknown builder {b!r}")


def _metadata(args) -> dict:
    params = {k: v for k, v in vars(args).items()
              if k in ("n", "d", "theta", "m", "theta12", "theta23", "closing_edge", "edge") and v is not None}
    return {"name": args.builder, "description": "generated by conres gen",
            "parameters": {k: (list(v) if isinstance(v, (list, tuple)) else v) for k, v in params.items()}}


def cmd_gen(args) -> int:
    cg = _build(args)
    text = dumps(cg, _metadata(args))
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sweep
# ---------------------------------------------------------------------------

def default_sweep_pair(args) -> tuple[int, int]:
    """Terminals at which the sweep evaluates resistances by default."""
    if args.builder == "wheatstone":
        return (1, 4)
    if args.builder == "dumbbell":
        return (4, args.m + 3)
    return (1, 2)


def _swept_edge(args) -> tuple[int, int]:
    if args.builder == "cycle":
        if args.edge and tuple(args.edge) not in ((1, 2), (2, 1)):
            raise CliError(EXIT_VALIDATION, "the cycle builder only rotates edge (1, 2)")
        return (1, 2)
    if args.builder == "dumbbell":
        e = tuple(args.edge) if args.edge else (1, 2)
        if e not in ((1, 2), (2, 3)):
            raise CliError(EXIT_VALIDATION, "the dumbbell sweep edge must be (1, 2) or (2, 3)")
        return e
    e = tuple(args.edge) if args.edge else (2, 4)
    if e not in WHEATSTONE_EDGES:
        raise CliError(EXIT_VALIDATION, f"{e} is not an edge of the bridge")
    return e


def _sweep_columns(quantities: Sequence[str], d: int) -> list[str]:
    cols = []
    for q in quantities:
        if q in ("scalar-cr", "chung-cr", "classical-er"):
            cols.append(q.replace("-", "_"))
        else:
            tag = "C" if q == "conductance-blocks" else "R"
            cols += [f"{tag}_{a}_{b}" for a in range(2 * d) for b in range(2 * d)]
    return cols


def sweep_rows(args, grid: np.ndarray) -> tuple[list[str], list[list], bool]:
    swept = _swept_edge(args)
    args.edge = list(swept)
    quantities = list(dict.fromkeys(args.quantities))
    i, j = tuple(args.pair) if args.pair else default_sweep_pair(args)
    ci, cj = tuple(args.chung_pair) if args.chung_pair else swept
    d = _build(args, float(grid[0]), swept).d
    header = ["theta", *_sweep_columns(quantities, d), "status"]
    rows, failed = [], False
    for theta in grid:
        row: list = [float(theta)]
        try:
            cg = _build(args, float(theta), swept)
            for q in quantities:
                if q == "scalar-cr":
                    row.append(scalar_connection_resistance(cg, i, j))
                elif q == "chung-cr":
                    row.append(chung_connection_resistance(cg, ci, cj))
                elif q == "classical-er":
                    row.append(classical_effective_resistance(cg.graph, i, j))
                elif q == "conductance-blocks":
                    row += [float(x) for x in conductance_matrix(cg, i, j).full.ravel()]
                elif q == "resistance-blocks":
                    row += [float(x) for x in resistance_matrix(cg, i, j).full.ravel()]
            row.append("ok")
        except (errors.ConresError, np.linalg.LinAlgError) as exc:
            failed = True
            row = [float(theta)] + [""] * (len(header) - 2) + [f"error: {type(exc).__name__}: {exc}"]
        rows.append(row)
    return header, rows, failed


def cmd_sweep(args) -> int:
    grid = args.theta_grid if args.theta_grid is not None else np.linspace(0.0, 2 * np.pi, 200)
    header, rows, failed = sweep_rows(args, grid)
    text = write_csv(header, rows)
    if args.output:
        with open(args.output, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if failed:
        print("sweep: at least one grid point failed; see the status column", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    cg = _load(args)
    i, j = args.pair
    tols = parse_tolerances(args.tolerance)
    tols.pop("orth", None)
    reports = run_identity_suite(cg, i, j, mc_samples=args.mc_samples, seed=args.seed, tolerances=tols)
    for r in reports:
        note = f"  ({r.details['skipped']})" if "skipped" in r.details else ""
        print(r.line() + note)
    failed = [r.name for r in reports if not r.passed]
    print(f"{len(reports) - len(failed)}/{len(reports)} identities passed")
    return EXIT_CHECK if failed else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _add_builder_args(p: argparse.ArgumentParser) -> None:
    sub = p.add_subparsers(dest="builder", required=True, metavar="BUILDER")
    c = sub.add_parser("cycle", help="n-cycle with a planar rotation on edge (1, 2)")
    c.add_argument("--n", type=int, default=3)
    c.add_argument("--theta", type=parse_angle, default=0.0)
    c.add_argument("--d", type=int, default=2)
    db = sub.add_parser("dumbbell", help="two cliques bridged by the path 1-2-3")
    db.add_argument("--m", type=int, default=4)
    db.add_argument("--theta12", type=parse_angle, default=0.0)
    db.add_argument("--theta23", type=parse_angle, default=0.0)
    db.add_argument("--closing-edge", action="store_true",
                    help="join the two cliques directly so the bridge edges lie on a cycle")
    w = sub.add_parser("wheatstone", help="4-vertex bridge with one rotated edge")
    w.add_argument("--theta", type=parse_angle, default=0.0)
    for q in (c, db, w):
        q.add_argument("--edge", type=int, nargs=2, metavar=("U", "V"),
                       help="signed edge (wheatstone) or swept edge (sweep)")
        q.add_argument("--tolerance", action="append", metavar="NAME=VALUE")
        q.add_argument("-o", "--output")
        if p.prog.endswith("sweep"):
            q.add_argument("--theta-grid", type=parse_grid, default=None, metavar="START:STOP:STEPS")
            q.add_argument("--pair", type=int, nargs=2, metavar=("I", "J"))
            q.add_argument("--chung-pair", type=int, nargs=2, metavar=("I", "J"),
                           help="edge for the chung-cr column (default: the swept edge)")
            q.add_argument("--quantities", type=_quantity_list, default=["scalar-cr", "chung-cr", "classical-er"])


def _quantity_list(text: str) -> list[str]:
    items = [t.strip() for t in text.split(",") if t.strip()]
    bad = [t for t in items if t not in SWEEP_QUANTITIES]
    if bad or not items:
        raise argparse.ArgumentTypeError(f"unknown quantities {bad}; choose from {', '.join(SWEEP_QUANTITIES)}")
    return items


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="conres", description="Conductance and resistance on connection graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="evaluate one quantity for a vertex pair")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--pair", type=int, nargs=2, required=True, metavar=("I", "J"))
    p.add_argument("--quantity", choices=SCALAR_QUANTITIES + MATRIX_QUANTITIES, default="scalar-cr")
    p.add_argument("--tolerance", action="append", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("gen", help="write a graph document from a builder")
    _add_builder_args(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("sweep", help="tabulate quantities over a grid of angles")
    _add_builder_args(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("check", help="run the identity suite on a document")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--pair", type=int, nargs=2, default=[1, 2], metavar=("I", "J"))
    p.add_argument("--mc-samples", type=int, default=0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", action="append", metavar="NAME=VALUE")
    p.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler: Callable = args.func
    try:
        return handler(args)
    except CliError as exc:
        print(f"conres: {exc}", file=sys.stderr)
        return exc.code
    except errors.DocumentParseError as exc:
        print(f"conres: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except errors.ValidationError as exc:
        print(f"conres: invalid input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (errors.ConresError, np.linalg.LinAlgError) as exc:
        print(f"conres: computation failed: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())

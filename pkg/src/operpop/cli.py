"""Batch front-end: JSON problem files in, JSON reports out.

Problem file schema (all rationals are exact strings like "-3/7" or "2";
polynomial coefficient lists are ascending):

    {
      "lie_type": "A",
      "rank": 1,
      "weights": [[1], [1]],
      "points": ["0", "1"],
      "tuple": [["1/4", "-1/2", "1"]],
      "path": [1],                      # optional
      "parameters": [["1", "0"]],      # optional, one (c1, c2) per path step
      "bethe": [["1/2"]]               # optional explicit coordinates
    }

Subcommands: check, descend, populate, solve, verify.
Exit codes: 0 success, 1 negative verdict (not fertile / verification
failed), 2 invalid input or unsupported request.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from .exactalg import Poly, RatFunc
from .critical import (
    BetheConfig,
    CollisionError,
    FertilityError,
    PolyTuple,
    ProblemData,
    bethe_residuals,
    fertility_direction,
    is_generic,
)
from .liedata import cartan_data
from .miura import miura_from_tuple
from .population import ExplorationError, ReproductionError, descend, explore
from .solutions import (
    UnsupportedTypeError,
    VerificationError,
    solution_A,
    solution_BC,
    solution_general,
)


class InputError(ValueError):
    pass


def _frac(value, where: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"{where}: {value!r} is not an exact rational") from exc


def parse_problem(doc: dict) -> tuple[ProblemData, PolyTuple, dict]:
    """Validate a problem document; returns (problem, tuple, extras)."""
    if not isinstance(doc, dict):
        raise InputError("problem document must be a key-value tree")
    for key in ("lie_type", "rank", "weights", "points", "tuple"):
        if key not in doc:
            raise InputError(f"missing field {key!r}")
    family = doc["lie_type"]
    rank = doc["rank"]
    if not isinstance(rank, int) or rank < 1:
        raise InputError("rank must be a positive integer")
    weights = []
    for s, w in enumerate(doc["weights"], start=1):
        if len(w) != rank:
            raise InputError(f"weights[{s}]: expected {rank} coordinates")
        weights.append(tuple(_frac(v, f"weights[{s}]") for v in w))
    points = [_frac(z, f"points[{s + 1}]") for s, z in enumerate(doc["points"])]
    if len(points) != len(weights):
        raise InputError("weights and points must have equal length")
    try:
        cartan = cartan_data(family, rank)
        p = ProblemData(cartan=cartan, weights=tuple(weights), points=tuple(points))
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    coeff_lists = doc["tuple"]
    if len(coeff_lists) != rank:
        raise InputError(f"tuple: expected {rank} coefficient lists")
    polys = []
    for i, coeffs in enumerate(coeff_lists, start=1):
        poly = Poly(_frac(c, f"tuple[{i}]") for c in coeffs)
        if poly.is_zero():
            raise InputError(f"tuple[{i}] is the zero polynomial")
        polys.append(poly)
    try:
        y = PolyTuple(polys)
    except ValueError as exc:
        raise InputError(str(exc)) from exc

    extras = {}
    if "path" in doc and doc["path"] is not None:
        path = [int(i) for i in doc["path"]]
        if any(not 1 <= i <= rank for i in path):
            raise InputError("path indices must lie in 1..rank")
        extras["path"] = path
    if "parameters" in doc and doc["parameters"] is not None:
        extras["parameters"] = [
            (_frac(c1, "parameters"), _frac(c2, "parameters")) for c1, c2 in doc["parameters"]
        ]
    if "bethe" in doc and doc["bethe"] is not None:
        groups = doc["bethe"]
        if len(groups) != rank:
            raise InputError("bethe: one coordinate group per node required")
        extras["bethe"] = BetheConfig.of(
            [[_frac(t, "bethe") for t in group] for group in groups]
        )
    return p, y, extras


def echo_problem(p: ProblemData, y: PolyTuple, extras: dict) -> dict:
    doc = {
        "lie_type": p.cartan.family,
        "rank": p.cartan.rank,
        "weights": [[str(v) for v in w] for w in p.weights],
        "points": [str(z) for z in p.points],
        "tuple": [[str(c) for c in poly.coeffs] for poly in y.polys],
    }
    if "path" in extras:
        doc["path"] = list(extras["path"])
    if "parameters" in extras:
        doc["parameters"] = [[str(c1), str(c2)] for c1, c2 in extras["parameters"]]
    if "bethe" in extras:
        doc["bethe"] = [[str(t) for t in group] for group in extras["bethe"].coordinates]
    return doc


def _poly_strs(poly: Poly) -> list[str]:
    return [str(c) for c in poly.coeffs]


def _ratfunc_str(f: RatFunc) -> str:
    return str(f)


def _twisted_entry(v) -> dict:
    """Map "q_1,...,q_r" exponent keys to rational-function strings."""
    return {
        ",".join(str(e) for e in q): _ratfunc_str(c) for q, c in sorted(v.terms.items())
    }


def cmd_check(p: ProblemData, y: PolyTuple, extras: dict, report: dict) -> int:
    generic = is_generic(y, p)
    report["generic"] = bool(generic)
    if generic.reason:
        report["generic_reason"] = generic.reason
    directions = []
    fertile = True
    for i in range(1, p.rank + 1):
        entry = {"direction": i}
        try:
            tilde = fertility_direction(y, i, p)
        except FertilityError as exc:
            entry["fertile"] = False
            entry["error"] = str(exc)
            fertile = False
        else:
            if tilde is None:
                entry["fertile"] = False
                fertile = False
            else:
                entry["fertile"] = True
                entry["canonical"] = _poly_strs(tilde)
        directions.append(entry)
    report["fertile"] = fertile
    report["directions"] = directions
    if "bethe" in extras:
        try:
            residuals = bethe_residuals(extras["bethe"], p)
        except CollisionError as exc:
            report["bethe_error"] = str(exc)
            return 2
        report["bethe_residuals"] = [str(v) for v in residuals]
        report["critical"] = all(v == 0 for v in residuals)
    return 0 if fertile else 1


def cmd_descend(p: ProblemData, y: PolyTuple, extras: dict, report: dict, direction: int, param) -> int:
    try:
        child = descend(y, direction, param, p)
    except (ReproductionError, FertilityError, ValueError) as exc:
        report["error"] = str(exc)
        return 1
    report["direction"] = direction
    report["parameter"] = [str(param[0]), str(param[1])]
    report["descendant"] = [_poly_strs(q) for q in child.polys]
    report["descendant_generic"] = bool(is_generic(child, p))
    return 0


def cmd_populate(p: ProblemData, y: PolyTuple, extras: dict, report: dict, max_cells: Optional[int]) -> int:
    summary = explore(y, p, max_cells=max_cells)
    rows = []
    for degs in sorted(summary.cells):
        cell = summary.cells[degs]
        rows.append(
            {
                "degrees": list(degs),
                "weyl_word": list(cell.word),
                "length": cell.dimension,
                "sample": [_poly_strs(q) for q in cell.sample.polys],
            }
        )
    report["base_degrees"] = list(summary.base_degrees)
    report["cells"] = rows
    report["cell_count"] = len(rows)
    report["exceptional"] = list(summary.exceptional)
    return 0


def _solve(p: ProblemData, y: PolyTuple, extras: dict, report: dict, rep_kind: str) -> int:
    if rep_kind == "auto":
        rep_kind = {"A": "sl", "B": "sp"}.get(p.cartan.family, "general")
    try:
        if rep_kind == "sl":
            Y = solution_A(y, p)
            entries = Y.rows
        elif rep_kind == "sp":
            Y = solution_BC(y, p)
            entries = Y.rows
        elif rep_kind == "general":
            path = extras.get("path", [])
            vec = solution_general(y, path, None, p)
            entries = [[v] for v in vec]
        else:
            report["error"] = f"unknown builder {rep_kind!r}"
            return 2
    except UnsupportedTypeError as exc:
        report["error"] = f"{exc}; try the general builder (--rep general)"
        return 2
    except (ReproductionError, FertilityError) as exc:
        report["error"] = str(exc)
        return 1
    except VerificationError as exc:
        report["error"] = str(exc)
        report["verification"] = "failed"
        return 1
    report["builder"] = rep_kind
    report["solution"] = [[_twisted_entry(v) for v in row] for row in entries]
    report["verification"] = "DY=0: exact"
    return 0


def cmd_verify(p: ProblemData, y: PolyTuple, extras: dict, report: dict) -> int:
    generic = is_generic(y, p)
    report["generic"] = bool(generic)
    try:
        miura_from_tuple(y, p)
        report["oper_pairings"] = "exact"
    except AssertionError as exc:
        report["oper_pairings"] = str(exc)
        return 1
    return _solve(p, y, extras, report, "general")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="operpop",
        description="Exact checks, reproduction, population tables and oper solutions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("check", "descend", "populate", "solve", "verify"):
        cmd = sub.add_parser(name)
        cmd.add_argument("file", help="JSON problem file")
        cmd.add_argument("--output", help="write the report to this path instead of stdout")
        if name == "descend":
            cmd.add_argument("--direction", type=int, required=True)
            cmd.add_argument("--param", default="1:0", help="projective parameter c1:c2")
        if name == "populate":
            cmd.add_argument("--max-cells", type=int, default=None)
        if name in ("solve", "verify"):
            cmd.add_argument("--rep", default="auto", choices=("auto", "sl", "sp", "general"))
            cmd.add_argument("--path", default=None, help="comma-separated direction indices")
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.perf_counter()
    report: dict = {"command": args.command}
    code = 0
    try:
        with open(args.file, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        report["error"] = f"cannot read problem file: {exc}"
        _emit(report, getattr(args, "output", None), started)
        return 2
    try:
        p, y, extras = parse_problem(doc)
    except InputError as exc:
        report["error"] = str(exc)
        _emit(report, args.output, started)
        return 2
    if getattr(args, "path", None):
        try:
            extras["path"] = [int(v) for v in str(args.path).split(",") if v != ""]
        except ValueError:
            report["error"] = f"bad --path value {args.path!r}"
            _emit(report, args.output, started)
            return 2
        if any(not 1 <= i <= p.rank for i in extras["path"]):
            report["error"] = "path indices must lie in 1..rank"
            _emit(report, args.output, started)
            return 2
    report["problem"] = echo_problem(p, y, extras)
    try:
        if args.command == "check":
            code = cmd_check(p, y, extras, report)
        elif args.command == "descend":
            try:
                c1, c2 = args.param.split(":")
                param = (Fraction(c1), Fraction(c2))
            except (ValueError, ZeroDivisionError):
                report["error"] = f"bad --param value {args.param!r}"
                _emit(report, args.output, started)
                return 2
            if not 1 <= args.direction <= p.rank:
                report["error"] = "direction out of range"
                _emit(report, args.output, started)
                return 2
            code = cmd_descend(p, y, extras, report, args.direction, param)
        elif args.command == "populate":
            code = cmd_populate(p, y, extras, report, args.max_cells)
        elif args.command == "solve":
            code = _solve(p, y, extras, report, args.rep)
        elif args.command == "verify":
            code = cmd_verify(p, y, extras, report)
    except (ReproductionError, FertilityError, CollisionError, ExplorationError, ValueError) as exc:
        report["error"] = str(exc)
        code = 1
    _emit(report, args.output, started)
    return code


def _emit(report: dict, output: Optional[str], started: float) -> None:
    report["elapsed_s"] = round(time.perf_counter() - started, 6)
    text = json.dumps(report, indent=2)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Usage::

    skewrank info GRAPH [--bounds]
    skewrank classify GRAPH
    skewrank reduce GRAPH
    skewrank compress GRAPH
    skewrank cycles GRAPH
    skewrank verify --n N (--exhaustive | --samples K) [--seed S] [--checks a,b]
    skewrank construct --cycles 6,10 --ops 5 [--seed S]

Exit codes: 0 success, 1 failed check or classifier disagreement, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from . import graphfile
from .graph import cycle_decomposition
from .harness import (
    CHECK_GROUPS,
    SCHEMA_VERSION,
    SuiteConfig,
    stderr_progress,
    construct_lower_optimal,
    run_suite,
)
from .invariants import bound_report, cycle_class, cycle_sign, invariant_report
from .structure import NonDisjointCyclesError, classify_lower_optimal, compress, delta_reduce

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _doc(kind: str, **fields) -> dict:
    return {"schema_version": SCHEMA_VERSION, "kind": kind, **fields}


def _trace_json(trace) -> dict:
    return {
        "steps": [{"pendant": s.pendant, "neighbor": s.neighbor} for s in trace.steps],
        "final": graphfile.serialize(trace.final),
        "final_origin": list(trace.origin),
        "success": trace.success,
        "reason": trace.reason,
    }


def cmd_info(args) -> int:
    og = graphfile.read(args.graph)
    info = invariant_report(og)
    out = _doc("info", **info.to_dict())
    if args.bounds:
        out["bounds"] = [
            {"name": b.name, "lhs": b.lhs, "rhs": b.rhs, "holds": b.holds, "skipped": b.skipped}
            for b in bound_report(og, info)
        ]
    _emit(out)
    if args.bounds and any(b["holds"] is False for b in out["bounds"]):
        return EXIT_FAIL
    return EXIT_OK


def cmd_classify(args) -> int:
    og = graphfile.read(args.graph)
    v = classify_lower_optimal(og)
    _emit(
        _doc(
            "verdict",
            conditions={
                "cond1_disjoint_cycles": v.cond1_disjoint_cycles,
                "cond2_cycles_even_mod4_evenly_oriented": v.cond2_cycles_even_mod4_evenly_oriented,
                "cond3_delta_reduces_to_crucial": v.cond3_delta_reduces_to_crucial,
            },
            structural=v.structural,
            direct=v.direct,
            agreement=v.agreement,
            r=v.r,
            sr=v.sr,
            d=v.d,
            witness=v.witness,
            trace=_trace_json(v.trace),
        )
    )
    if not v.agreement:
        print("structural and direct verdicts disagree", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_reduce(args) -> int:
    og = graphfile.read(args.graph)
    _emit(_doc("reduction", **_trace_json(delta_reduce(og.graph))))
    return EXIT_OK


def cmd_compress(args) -> int:
    og = graphfile.read(args.graph)
    try:
        comp = compress(og.graph)
    except NonDisjointCyclesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(
        _doc(
            "compression",
            t_graph=graphfile.serialize(comp.t_graph),
            gamma=graphfile.serialize(comp.gamma),
            vertex_origin=[{"type": t, "id": i} for t, i in comp.vertex_origin],
            cycles=[list(c) for c in comp.cycles],
            note="orientations dropped; edges written low -> high",
        )
    )
    return EXIT_OK


def cmd_cycles(args) -> int:
    og = graphfile.read(args.graph)
    dec = cycle_decomposition(og.graph)
    cycles = [
        {
            "len": len(c),
            "class": cycle_class(og, c).value,
            "sign": cycle_sign(og, c),
            "vertices": list(c),
        }
        for c in dec.cycles
    ]
    _emit(_doc("cycles", blocks_ok=dec.blocks_ok, disjoint=dec.disjoint, cycles=cycles))
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    checks = tuple(c.strip() for c in args.checks.split(",") if c.strip()) if args.checks else CHECK_GROUPS
    try:
        cfg = SuiteConfig(
            mode="exhaustive" if args.exhaustive else "random",
            n_max=args.n,
            samples=args.samples or 0,
            seed=args.seed,
            checks=checks,
            allow_n6=args.allow_n6,
        )
    except ValueError as exc:
        parser.error(str(exc))
    progress = stderr_progress if cfg.n_max >= 6 and cfg.mode == "exhaustive" else None
    report = run_suite(cfg, progress=progress)
    sys.stdout.write(report.to_json(timing=args.timing))
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_construct(args) -> int:
    try:
        lengths = [int(x) for x in args.cycles.split(",") if x.strip()]
        og = construct_lower_optimal(lengths, args.ops, args.seed, isolated=args.isolated)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(graphfile.serialize(og))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="skewrank", description="Exact rank invariants of oriented graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("info", help="r, sr, d and related invariants")
    s.add_argument("graph")
    s.add_argument("--bounds", action="store_true", help="also evaluate the known inequalities")

    for name, text in (
        ("classify", "lower-optimality verdict, structural and direct"),
        ("reduce", "greedy delta-reduction trace"),
        ("compress", "compress cycles to vertices"),
        ("cycles", "cycles with their orientation class"),
    ):
        sub.add_parser(name, help=text).add_argument("graph")

    s = sub.add_parser("verify", help="run the verification suite")
    s.add_argument("--n", type=int, required=True, help="largest vertex count")
    mode = s.add_mutually_exclusive_group(required=True)
    mode.add_argument("--exhaustive", action="store_true")
    mode.add_argument("--samples", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--checks", help=f"comma-separated subset of {','.join(CHECK_GROUPS)}")
    s.add_argument("--allow-n6", action="store_true", help="permit exhaustive n=6 (14.3M graphs)")
    s.add_argument("--timing", action="store_true", help="include wall time (breaks byte-identical output)")

    s = sub.add_parser("construct", help="print a lower-optimal oriented graph")
    s.add_argument("--cycles", default="", help="comma-separated cycle orders, each 2 mod 4")
    s.add_argument("--ops", type=int, default=0, help="number of pendant-path attachments")
    s.add_argument("--isolated", type=int, default=0)
    s.add_argument("--seed", type=int, default=0)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "info": cmd_info,
        "classify": cmd_classify,
        "reduce": cmd_reduce,
        "compress": cmd_compress,
        "cycles": cmd_cycles,
        "construct": cmd_construct,
    }
    try:
        if args.command == "verify":
            return cmd_verify(args, parser)
        return handlers[args.command](args)
    except graphfile.GraphFileError as exc:
        print(f"error: {args.graph}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

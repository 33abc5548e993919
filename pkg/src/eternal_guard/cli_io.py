"""File formats, structured reports, and the command-line surface.

Graph file format (one graph per file, 0-based dense vertex ids):

    p ed <n> <m>        header: vertex and edge counts
    c <text>            comment (ignored)
    l <id> <name>       optional vertex label
    e <u> <v>           edge; exactly m edge lines must appear

Attack scripts hold one attack per line (a vertex id for finite graphs, an
"x y" coordinate for grids) or a single directive line
"random <seed> <count>" or "adversarial <depth> <count>".

Reports are schema-versioned JSON documents with deterministic field order;
timings are excluded from determinism comparisons.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass
from typing import Optional, Sequence, TextIO

from .errors import (CapabilityError, EternalGuardError, GraphFormatError,
                     IllegalAttackError)
from .exact_solver import eternal_number
from .graph_core import (Graph, Kind, Variant, min_connected_dominating_set,
                         min_connected_italian_function, static_number)
from .grid_patrol import (GridAdversarialAttacker, GridKind,
                          GridRandomAttacker, GridScriptAttacker, PatrolState,
                          grid_defend, render_svg, render_window,
                          simulate_grid, verify_window)
from .reduction_forge import TheoremId, build_reduction, verify_reduction
from .strategy_lib import (AdversarialAttacker, RandomAttacker,
                           ScriptAttacker, make_floating_policy, simulate)

REPORT_SCHEMA = "eternal-guard-report/1"
BUDGET_ENV_VAR = "ETERNAL_GUARD_BUDGET"


# ---------------------------------------------------------------------------
# Graph files

def parse_graph_text(text: str) -> Graph:
    """Parse the graph file format; diagnostics carry 1-based line numbers."""
    n = m = None
    edges: list[tuple[int, int]] = []
    labels: dict[int, str] = {}
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        tag = parts[0]
        if tag == "c":
            continue
        if tag == "p":
            if n is not None:
                raise GraphFormatError("duplicate header line", lineno)
            if len(parts) != 4 or parts[1] != "ed":
                raise GraphFormatError("malformed header, expected 'p ed <n> <m>'",
                                       lineno)
            try:
                n, m = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError("header counts must be integers", lineno)
            if n < 0 or m < 0:
                raise GraphFormatError("header counts must be non-negative", lineno)
            continue
        if n is None:
            raise GraphFormatError(f"'{tag}' line before the header", lineno)
        if tag == "e":
            if len(parts) != 3:
                raise GraphFormatError("malformed edge line, expected 'e <u> <v>'",
                                       lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise GraphFormatError("edge endpoints must be integers", lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"vertex id out of range [0,{n})", lineno)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            key = (min(u, v), max(u, v))
            if key in seen:
                raise GraphFormatError(f"duplicate edge ({u},{v})", lineno)
            seen.add(key)
            edges.append(key)
        elif tag == "l":
            if len(parts) < 3:
                raise GraphFormatError("malformed label line, expected 'l <id> <name>'",
                                       lineno)
            try:
                v = int(parts[1])
            except ValueError:
                raise GraphFormatError("label id must be an integer", lineno)
            if not 0 <= v < n:
                raise GraphFormatError(f"label id out of range [0,{n})", lineno)
            labels[v] = " ".join(parts[2:])
        else:
            raise GraphFormatError(f"unknown line type '{tag}'", lineno)
    if n is None:
        raise GraphFormatError("missing 'p ed <n> <m>' header", 1)
    if len(edges) != m:
        raise GraphFormatError(f"header declares {m} edges, file has {len(edges)}",
                               1)
    label_tuple = None
    if labels:
        label_tuple = tuple(labels.get(v, str(v)) for v in range(n))
    return Graph.from_edges(n, edges, labels=label_tuple)


def emit_graph_text(g: Graph, comments: Sequence[str] = ()) -> str:
    """Canonical emission: header, comments, labels, then sorted edge lines.

    emit(parse(text)) is byte-identical for canonical (comment-free) files.
    """
    lines = [f"p ed {g.n} {g.edge_count}"]
    lines += [f"c {c}" for c in comments]
    if g.labels is not None:
        lines += [f"l {v} {g.labels[v]}" for v in range(g.n)]
    lines += [f"e {u} {v}" for u, v in sorted(g.edges())]
    return "\n".join(lines) + "\n"


def load_graph(path: str) -> Graph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_graph_text(fh.read())


# ---------------------------------------------------------------------------
# Attack scripts

@dataclass(frozen=True)
class AttackScript:
    """Either an explicit row list or a single directive, never both."""

    rows: tuple[tuple[int, ...], ...] = ()
    directive: Optional[tuple] = None

    def vertices(self) -> list[int]:
        out = []
        for row in self.rows:
            if len(row) != 1:
                raise GraphFormatError(
                    f"expected one vertex id per line, got {len(row)} fields")
            out.append(row[0])
        return out

    def coords(self) -> list[tuple[int, int]]:
        out = []
        for row in self.rows:
            if len(row) != 2:
                raise GraphFormatError(
                    f"expected 'x y' per line, got {len(row)} fields")
            out.append((row[0], row[1]))
        return out


def parse_attack_script_text(text: str) -> AttackScript:
    rows: list[tuple[int, ...]] = []
    directive = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] in ("random", "adversarial"):
            if directive is not None or rows:
                raise GraphFormatError(
                    "directive must be the only content line", lineno)
            if len(parts) != 3:
                raise GraphFormatError(
                    f"malformed directive, expected '{parts[0]} <arg> <count>'",
                    lineno)
            try:
                directive = (parts[0], int(parts[1]), int(parts[2]))
            except ValueError:
                raise GraphFormatError("directive arguments must be integers",
                                       lineno)
            continue
        if directive is not None:
            raise GraphFormatError("attack lines after a directive", lineno)
        try:
            rows.append(tuple(int(p) for p in parts))
        except ValueError:
            raise GraphFormatError(f"malformed attack line '{line}'", lineno)
    return AttackScript(rows=tuple(rows), directive=directive)


def load_attack_script(path: str) -> AttackScript:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_attack_script_text(fh.read())


# ---------------------------------------------------------------------------
# Reports

def make_report(command: str, inputs: dict, numbers: Optional[dict] = None,
                verdicts: Optional[dict] = None,
                transcript: Optional[dict] = None,
                timings: Optional[dict] = None) -> dict:
    report = {
        "schema": REPORT_SCHEMA,
        "command": command,
        "inputs": inputs,
    }
    if numbers is not None:
        report["numbers"] = numbers
    if verdicts is not None:
        report["verdicts"] = verdicts
    if transcript is not None:
        report["transcript"] = transcript
    report["timings"] = timings or {}
    return report


def report_json(report: dict, include_timings: bool = True) -> str:
    doc = report if include_timings else {
        k: v for k, v in report.items() if k != "timings"}
    return json.dumps(doc, indent=2) + "\n"


def write_report(report: dict, path: Optional[str]) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(report_json(report))


# ---------------------------------------------------------------------------
# Command implementations

def _variant_from_args(args) -> Variant:
    return Variant(kind=Kind(args.variant), connected=args.connected,
                   stacking=not getattr(args, "no_stacking", False))


def _budget(args) -> Optional[int]:
    if getattr(args, "budget", None) is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else None


def _cmd_static(args, out: TextIO) -> tuple[int, dict]:
    g = load_graph(args.graph)
    variant = _variant_from_args(args)
    weight, witness = static_number(g, variant, max_n=args.max_n)
    print(f"static {variant.code} number: {weight}", file=out)
    print(f"witness counts: {list(witness.counts)}", file=out)
    numbers = {"static_weight": weight, "witness": list(witness.counts)}
    report = make_report("static", {"graph": args.graph, "variant": variant.code},
                         numbers=numbers)
    return 0, report


def _cmd_solve(args, out: TextIO) -> tuple[int, dict]:
    g = load_graph(args.graph)
    variant = _variant_from_args(args)
    result = eternal_number(g, variant, k_max=args.max_k, budget=_budget(args))
    if result.value is None:
        print(f"no defender win up to k_max={result.k_max} "
              f"(bounded failure)", file=out)
    else:
        print(f"eternal {variant.code} number: {result.value}", file=out)
        print(f"safe family size: {len(result.witness.configs)}", file=out)
    report = make_report("solve", {
        "graph": args.graph, "variant": variant.code,
        "k_max": result.k_max,
    }, numbers=result.to_dict())
    return 0, report


def _make_attacker(args, script: Optional[AttackScript], grid: bool):
    if script is not None and script.directive is not None:
        name, arg, count = script.directive
        if name == "random":
            attacker = (GridRandomAttacker(arg) if grid else RandomAttacker(arg))
        else:
            attacker = (GridAdversarialAttacker(arg) if grid
                        else AdversarialAttacker(arg))
        return attacker, count
    if script is not None:
        if grid:
            coords = script.coords()
            return GridScriptAttacker(coords), len(coords)
        vertices = script.vertices()
        return ScriptAttacker(vertices), len(vertices)
    if args.random is not None or args.adversarial is not None:
        if args.rounds is None:
            raise GraphFormatError("--rounds is required with --random or "
                                   "--adversarial")
        if args.random is not None:
            return (GridRandomAttacker(args.random) if grid
                    else RandomAttacker(args.random)), args.rounds
        return (GridAdversarialAttacker(args.adversarial) if grid
                else AdversarialAttacker(args.adversarial)), args.rounds
    raise GraphFormatError("no attacker specified: use --script, --random, "
                           "or --adversarial")


def _parse_core(arg: Optional[str], g: Graph, variant: Variant):
    if arg is None:
        if variant.kind is Kind.ITALIAN:
            return min_connected_italian_function(g)[1].counts
        return min_connected_dominating_set(g)
    values = [int(x) for x in arg.split(",") if x.strip()]
    if variant.kind is Kind.ITALIAN:
        if len(values) != g.n:
            raise GraphFormatError(
                f"Italian core must list {g.n} counts, got {len(values)}")
        return tuple(values)
    return tuple(values)


def _cmd_simulate(args, out: TextIO) -> tuple[int, dict]:
    g = load_graph(args.graph)
    variant = _variant_from_args(args)
    script = load_attack_script(args.script) if args.script else None
    attacker, rounds = _make_attacker(args, script, grid=False)
    if args.rounds is not None:
        rounds = args.rounds
    core = _parse_core(args.core, g, variant)
    policy = make_floating_policy(g, variant, core)
    transcript = simulate(g, policy, attacker, rounds)
    status = "survived" if transcript.outcome else "FAILED"
    print(f"policy {policy.kind.value} budget {policy.budget}: "
          f"{len(transcript.rounds)} rounds, {len(transcript.forfeits)} forfeits, "
          f"{status}", file=out)
    report = make_report("simulate", {
        "graph": args.graph, "variant": variant.code,
        "core": list(core), "rounds_requested": rounds,
    }, transcript=transcript.to_dict())
    return (0 if transcript.outcome else 1), report


def _cmd_reduce(args, out: TextIO) -> tuple[int, dict]:
    g = load_graph(args.graph)
    inst = build_reduction(g, TheoremId(args.theorem))
    text = emit_graph_text(inst.target, comments=inst.block_comments())
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {inst.target.n}-vertex target to {args.out}", file=out)
    else:
        out.write(text)
    report = make_report("reduce", {"graph": args.graph, "theorem": args.theorem},
                         numbers={"target_vertices": inst.target.n,
                                  "target_edges": inst.target.edge_count,
                                  "relation": inst.relation.describe()})
    return 0, report


def _cmd_verify_reduction(args, out: TextIO) -> tuple[int, dict]:
    g = load_graph(args.graph)
    rep = verify_reduction(g, TheoremId(args.theorem), budget=_budget(args),
                           check_connected=not args.skip_connected)
    for line in (f"relation: {rep.relation}",
                 f"structure ok: {rep.structure_ok}",
                 f"source value: {rep.source_value}  expected target: "
                 f"{rep.expected_target}  solver: {rep.solver_value}",
                 f"relation holds: {rep.relation_holds}"):
        print(line, file=out)
    if rep.partial:
        print(f"PARTIAL: {rep.partial_reason}", file=out)
    report = make_report("verify-reduction",
                         {"graph": args.graph, "theorem": args.theorem},
                         verdicts=rep.to_dict())
    return (0 if rep.ok else 1), report


def _write_svg(path: Optional[str], state: PatrolState, radius: int,
               attacked=None, defense=None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(render_svg(state, radius, attacked=attacked, defense=defense))


def _cmd_grid_verify(args, out: TextIO) -> tuple[int, dict]:
    state = PatrolState(GridKind(args.grid), tuple(args.offset))
    rep = verify_window(state, args.radius)
    print(f"grid {args.grid} radius {args.radius}: "
          f"indices {'all 1' if rep.all_ones else 'VIOLATED'}, "
          f"density {rep.density} (expected {rep.density_expected})", file=out)
    _write_svg(args.svg, state, args.radius)
    report = make_report("grid-verify", {
        "grid": args.grid, "radius": args.radius, "offset": list(state.offset),
    }, verdicts=rep.to_dict())
    return (0 if rep.ok else 1), report


def _cmd_grid_simulate(args, out: TextIO) -> tuple[int, dict]:
    script = load_attack_script(args.script) if args.script else None
    attacker, rounds = _make_attacker(args, script, grid=True)
    if args.rounds is not None:
        rounds = args.rounds
    transcript = simulate_grid(GridKind(args.grid), attacker, rounds,
                               args.radius, offset=tuple(args.offset))
    status = "all rounds valid" if transcript.outcome else "INVARIANT VIOLATED"
    print(f"grid {args.grid}: {len(transcript.rounds)} rounds, "
          f"{len(transcript.forfeits)} forfeits, {status}", file=out)
    if transcript.rounds:
        final = PatrolState(GridKind(args.grid),
                            transcript.rounds[-1].offset_after)
        _write_svg(args.svg, final, args.radius)
    else:
        _write_svg(args.svg, PatrolState(GridKind(args.grid),
                                         tuple(args.offset)), args.radius)
    report = make_report("grid-simulate", {
        "grid": args.grid, "radius": args.radius,
        "rounds_requested": rounds, "offset": list(args.offset),
    }, transcript=transcript.to_dict())
    return (0 if transcript.outcome else 1), report


def _cmd_grid_play(args, out: TextIO, stdin: TextIO) -> tuple[int, dict]:
    state = PatrolState(GridKind(args.grid), tuple(args.offset))
    out.write(render_window(state, args.radius))
    rounds = 0
    while True:
        out.write("attack> ")
        out.flush()
        line = stdin.readline()
        if not line:
            break
        line = line.strip()
        if line in ("", "quit", "exit", "q"):
            if line:
                break
            continue
        parts = line.split()
        if len(parts) != 2:
            out.write("enter an attack as: x y\n")
            continue
        try:
            attacked = (int(parts[0]), int(parts[1]))
        except ValueError:
            out.write("coordinates must be integers\n")
            continue
        if state.member(attacked):
            out.write(f"{attacked} is guarded; attack an unguarded vertex\n")
            continue
        try:
            state, defense = grid_defend(state, attacked)
        except IllegalAttackError as exc:
            out.write(f"illegal attack: {exc}\n")
            continue
        rounds += 1
        out.write(render_window(state, args.radius, attacked=attacked,
                                defense=defense))
        out.write(f"defended; offset now {state.offset}\n")
    _write_svg(args.svg, state, args.radius)
    report = make_report("grid-play", {
        "grid": args.grid, "radius": args.radius, "offset": list(args.offset),
    }, numbers={"rounds_played": rounds})
    return 0, report


# ---------------------------------------------------------------------------
# Argument parsing and dispatch

def _offset_pair(text: str) -> list[int]:
    parts = text.replace(",", " ").split()
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("offset must be 'x,y'")
    return [int(parts[0]), int(parts[1])]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eternal-guard",
        description="Eternal domination games: exact solving, strategy "
                    "simulation, reduction gadgets, and infinite-grid patrols.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_variant_flags(p):
        p.add_argument("--variant", choices=[k.value for k in Kind],
                       default="domination")
        p.add_argument("--connected", action="store_true",
                       help="require connected guard supports")

    def add_report_flag(p):
        p.add_argument("--report", metavar="PATH",
                       help="write a structured JSON report")

    p = sub.add_parser("static", help="brute-force static domination number")
    p.add_argument("graph")
    add_variant_flags(p)
    p.add_argument("--max-n", type=int, default=None,
                   help="override the brute-force vertex limit")
    add_report_flag(p)

    p = sub.add_parser("solve", help="exact eternal number via fixed-point solver")
    p.add_argument("graph")
    add_variant_flags(p)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--no-stacking", action="store_true",
                   help="restrict plain configurations to 0/1 counts")
    p.add_argument("--budget", type=int, default=None,
                   help="configuration-count budget (also " + BUDGET_ENV_VAR + ")")
    add_report_flag(p)

    p = sub.add_parser("simulate", help="run a floating-guard policy against attacks")
    p.add_argument("graph")
    add_variant_flags(p)
    p.add_argument("--core", default=None,
                   help="policy core: vertex list 'a,b,c' (plain/roman) or "
                        "count vector (italian); defaults to a minimum core")
    p.add_argument("--script", default=None, help="attack-script path")
    p.add_argument("--random", type=int, default=None, metavar="SEED")
    p.add_argument("--adversarial", type=int, default=None, metavar="DEPTH")
    p.add_argument("--rounds", type=int, default=None)
    add_report_flag(p)

    p = sub.add_parser("reduce", help="construct a hardness-reduction target graph")
    p.add_argument("graph")
    p.add_argument("--theorem", choices=[t.value for t in TheoremId], required=True)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    add_report_flag(p)

    p = sub.add_parser("verify-reduction",
                       help="check the reduction relation with the exact solver")
    p.add_argument("graph")
    p.add_argument("--theorem", choices=[t.value for t in TheoremId], required=True)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--skip-connected", action="store_true",
                   help="skip the connected-variant equivalence check")
    add_report_flag(p)

    def add_grid_flags(p):
        p.add_argument("--grid", choices=[k.value for k in GridKind], required=True)
        p.add_argument("--radius", type=int, default=12)
        p.add_argument("--offset", type=_offset_pair, default=[0, 0])
        p.add_argument("--svg", metavar="PATH", default=None,
                       help="write a vector drawing of the window")

    p = sub.add_parser("grid-verify", help="window invariant verification")
    add_grid_flags(p)
    add_report_flag(p)

    p = sub.add_parser("grid-simulate", help="simulate grid attacks and defenses")
    add_grid_flags(p)
    p.add_argument("--script", default=None)
    p.add_argument("--random", type=int, default=None, metavar="SEED")
    p.add_argument("--adversarial", type=int, default=None, metavar="DEPTH")
    p.add_argument("--rounds", type=int, default=None)
    add_report_flag(p)

    p = sub.add_parser("grid-play", help="interactive attack REPL")
    add_grid_flags(p)
    add_report_flag(p)

    return parser


_COMMANDS = {
    "static": _cmd_static,
    "solve": _cmd_solve,
    "simulate": _cmd_simulate,
    "reduce": _cmd_reduce,
    "verify-reduction": _cmd_verify_reduction,
    "grid-verify": _cmd_grid_verify,
    "grid-simulate": _cmd_grid_simulate,
}


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None,
         stdin: TextIO = None) -> int:
    """Entry point; returns 0 on success, 1 on invariant or computational
    failure, 2 on usage errors."""
    out = out or sys.stdout
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    started = time.monotonic()
    try:
        if args.command == "grid-play":
            code, report = _cmd_grid_play(args, out, stdin)
        else:
            code, report = _COMMANDS[args.command](args, out)
    except (GraphFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (CapabilityError, EternalGuardError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    report["timings"]["total_s"] = round(time.monotonic() - started, 6)
    write_report(report, getattr(args, "report", None))
    return code


if __name__ == "__main__":
    sys.exit(main())

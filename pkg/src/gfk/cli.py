"""Command-line front end.

Exit codes: 0 success, 2 parse/validation error, 3 oracle verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

import numpy as np

from gfk.analysis import audit_fission, cut_rank, minimize_resources
from gfk.fission import FissionError, Transcript, execute_fission, iterate_fission, plan_fission, replay_transcript
from gfk.graph import GraphError, local_complement, measure_z
from gfk.io import export_dot, fission_roles, graph_to_json, parse_graph
from gfk.oracle import CapacityError, OracleError, max_qubits, verify_transcript

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_ORACLE = 3

RNG_NAME = "numpy.PCG64"
RNG_VERSION = 1
VERIFY_TOL = 1e-10


class UsageError(Exception):
    pass


def _int_list(text: str, field: str) -> list[int]:
    if text.strip() == "":
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"--{field}: expected comma-separated integers, got {text!r}") from None


def _bits(text: str, field: str) -> list[int]:
    vals = _int_list(text, field)
    if any(v not in (0, 1) for v in vals):
        raise UsageError(f"--{field}: outcomes must be 0 or 1, got {text!r}")
    return vals


def _partition(text: str) -> list[list[int]]:
    return [_int_list(block, "partition") for block in text.split("|")]


def _load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"input: cannot read {path!r}: {exc.strerror}") from None
    return parse_graph(text)


def _outcomes(args, count: int) -> tuple[list[int], dict | None]:
    if args.outcomes is not None:
        bits = _bits(args.outcomes, "outcomes")
        if len(bits) != count:
            raise UsageError(f"--outcomes: expected {count} bit(s), got {len(bits)}")
        return bits, None
    if count == 0:
        return [], None
    if args.seed is None:
        raise UsageError("--seed: required when measurement outcomes are sampled (or pass --outcomes)")
    rng = np.random.Generator(np.random.PCG64(args.seed))
    bits = [int(x) for x in rng.integers(0, 2, size=count)]
    return bits, {"name": RNG_NAME, "version": RNG_VERSION, "seed": args.seed}


def _oracle_report(graph, transcript, final) -> dict:
    qubits = final.n
    cap = max_qubits()
    if qubits > cap:
        return {"status": "oracle skipped", "qubits": qubits, "cap": cap}
    try:
        ov = verify_transcript(graph, transcript, final)
    except CapacityError:
        return {"status": "oracle skipped", "qubits": qubits, "cap": cap}
    return {"status": "passed" if ov >= 1 - VERIFY_TOL else "failed", "qubits": qubits, "overlap": round(ov, 12)}


def _run_fission(args, g):
    target = args.target
    if args.partition is not None:
        blocks = _partition(args.partition)
        if len(blocks) < 2:
            raise UsageError("--partition: needs at least two '|'-separated blocks")
        # Outcome counts per round depend on the plan, so plan on a dry run first.
        dry = iterate_fission(g, target, blocks)
        counts = []
        for s in dry.transcript.steps:
            if s.op == "attach_ancilla":
                counts.append(0)
            elif s.op == "measure_z":
                counts[-1] += 1
        bits, rng = _outcomes(args, sum(counts))
        per_round, i = [], 0
        for c in counts:
            per_round.append(bits[i : i + c])
            i += c
        res = iterate_fission(g, target, blocks, per_round)
        kept = set(blocks[0])
    else:
        if args.kept is None:
            raise UsageError("--kept: required (or pass --partition)")
        kept = _int_list(args.kept, "kept")
        spec = plan_fission(g, target, kept)
        bits, rng = _outcomes(args, len(spec.moved))
        res = execute_fission(g, spec, bits)
    return res, kept, bits, rng


def cmd_fission(args, g) -> tuple[int, dict, object]:
    res, kept, bits, rng = _run_fission(args, g)
    report: dict = {
        "graph": graph_to_json(res.graph),
        "new_vertices": list(res.new_vertices),
        "ancilla": {"qubits": res.ancilla_qubits_used, "ebits": res.ancilla_ebits_used, "rounds": res.rounds},
        "degenerate": res.degenerate,
        "outcomes": bits,
        "audit": audit_fission(g, res, args.target).to_json(),
        "transcript": res.transcript.to_json(),
    }
    if rng is not None:
        report["rng"] = rng
    status = EXIT_OK
    if args.verify:
        report["oracle"] = _oracle_report(g, res.transcript, res.graph)
        if report["oracle"]["status"] == "failed":
            status = EXIT_ORACLE
    ancillas = [v for v in range(g.n, res.graph.n) if v not in res.new_vertices]
    roles = fission_roles(res.graph, args.target, kept, res.new_vertices, ancillas)
    return status, report, export_dot(res.graph, roles)


def cmd_audit(args, g):
    res = _run_fission(args, g)[0]
    return EXIT_OK, audit_fission(g, res, args.target).to_json(), None


def cmd_minimize(args, g):
    if args.kept is None:
        raise UsageError("--kept: required")
    orbit = minimize_resources(g, args.target, _int_list(args.kept, "kept"), args.budget, args.include_target)
    report = orbit.to_json()
    report["representative"] = graph_to_json(orbit.representative)
    roles = fission_roles(orbit.representative, args.target, orbit.kept_image, ())
    return EXIT_OK, report, export_dot(orbit.representative, roles)


def cmd_verify(args, g):
    try:
        with open(args.transcript, encoding="utf-8") as fh:
            steps = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--transcript: cannot read {args.transcript!r}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--transcript: invalid JSON: {exc}") from None
    transcript = Transcript.from_json(steps)
    final = replay_transcript(g, transcript)
    report = _oracle_report(g, transcript, final)
    report["graph"] = graph_to_json(final)
    status = EXIT_ORACLE if report["status"] == "failed" else EXIT_OK
    return status, report, export_dot(final)


def cmd_lc(args, g):
    out = local_complement(g, args.vertex)
    return EXIT_OK, graph_to_json(out), export_dot(out, {args.vertex: "target"})


def cmd_measure(args, g):
    out, corr = measure_z(g, args.vertex, args.outcome)
    report = {"graph": graph_to_json(out), "corrections": corr.sorted()}
    return EXIT_OK, report, export_dot(out)


def cmd_cutrank(args, g):
    side = _int_list(args.side, "side")
    return EXIT_OK, {"side": sorted(set(side)), "cut_rank": cut_rank(g, side)}, None


COMMANDS = {
    "fission": cmd_fission,
    "audit": cmd_audit,
    "minimize": cmd_minimize,
    "verify": cmd_verify,
    "lc": cmd_lc,
    "measure": cmd_measure,
    "cutrank": cmd_cutrank,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gfk", description="Graph-state fission toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("input", help="graph file: JSON {n, edges, labels} or edge list")
        if fmt:
            p.add_argument("--format", choices=["json", "dot", "both"], default="json")
        p.add_argument("-o", "--output", help="write to this file instead of stdout")

    def fission_args(p):
        p.add_argument("--target", type=int, required=True)
        p.add_argument("--kept", help="comma-separated neighbors that move to the new qubit")
        p.add_argument("--partition", help="blocks separated by '|', e.g. '1|3,5|4'")
        p.add_argument("--seed", type=int, help="seed for sampled measurement outcomes")
        p.add_argument("--outcomes", help="explicit comma-separated outcome bits")

    p = sub.add_parser("fission", help="split a qubit")
    common(p)
    fission_args(p)
    p.add_argument("--verify", action="store_true", help="replay through the statevector oracle")

    p = sub.add_parser("audit", help="ebit audit of a fission")
    common(p, fmt=False)
    fission_args(p)

    p = sub.add_parser("minimize", help="LC-orbit search for a cheaper ancilla")
    common(p)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--kept", required=True)
    p.add_argument("--budget", type=int, default=100_000)
    p.add_argument("--include-target", action="store_true")

    p = sub.add_parser("verify", help="oracle replay of a transcript")
    common(p)
    p.add_argument("--transcript", required=True)

    p = sub.add_parser("lc", help="local complementation")
    common(p)
    p.add_argument("--vertex", type=int, required=True)

    p = sub.add_parser("measure", help="Pauli-Z measurement")
    common(p)
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--outcome", type=int, choices=[0, 1], default=0)

    p = sub.add_parser("cutrank", help="ebits across a bipartition")
    common(p, fmt=False)
    p.add_argument("--side", required=True)
    return parser


def dump_report(report: dict) -> str:
    """One top-level key per line, values compact; stable for golden files."""
    if not report:
        return "{}\n"
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v)}" for k, v in report.items())
    return "{\n" + body + "\n}\n"


def render(report: dict, dot: str | None, fmt: str) -> str:
    if fmt == "json" or dot is None:
        return dump_report(report)
    if fmt == "dot":
        return dot
    return dump_report({**report, "dot": dot})


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        g = _load(args.input)
        if getattr(args, "budget", 1) < 1:
            raise UsageError("--budget: must be at least 1")
        status, report, dot = COMMANDS[args.command](args, g)
    except (UsageError, GraphError, FissionError, OracleError) as exc:
        print(f"gfk {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    text = render(report, dot, getattr(args, "format", "json"))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())

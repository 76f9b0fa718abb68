"""Command-line driver.

    qmaxcut solve|verify|count|stats GRAPH [--mode compact|faithful] [--shots N]
        [--seed S] [--t-start T] [--strict-paper] [--memory-cap Q] [--output FILE]

Exit codes: 0 success, 2 unreadable or malformed graph, 3 memory or size cap,
4 witness failed verification, 5 counting mismatch found by ``verify``.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from typing import Optional

from . import synth
from .circuit import COMPACT, FAITHFUL, CircuitError, compact_qubit_count, faithful_qubit_count, make_layout, resource_stats
from .graph import EXHAUSTIVE_CAP, ExhaustiveCapError, Graph, GraphParseError, cut_size, cut_size_histogram, parse_graph
from .simulator import DEFAULT_MEMORY_CAP, DENSE, SPARSE, SPARSE_MAX_QUBITS, MemoryCapError
from .solver import NoCutAcceptedError, SolverConfig, VerificationError, solve_maxcut
from .verify import verify_counting

EXIT_OK, EXIT_PARSE, EXIT_CAP, EXIT_VERIFY, EXIT_COUNTING = 0, 2, 3, 4, 5
VERIFY_MAX_N = 5


@dataclass
class CliConfig:
    command: str
    graph_path: str
    mode: str = COMPACT
    shots: int = 0
    seed: int = 1
    t_start: Optional[int] = None
    strict_paper: bool = False
    memory_cap: int = DEFAULT_MEMORY_CAP
    output: Optional[str] = None
    backend: str = DENSE

    def __post_init__(self):
        if self.shots < 0:
            raise ValueError("--shots must be >= 0")
        if self.memory_cap < 1:
            raise ValueError("--memory-cap must be >= 1")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        super().__init__(message)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmaxcut", description="Grover search for an exact maximum cut.")
    parser.add_argument("command", choices=["solve", "verify", "count", "stats"])
    parser.add_argument("graph_path", metavar="graphfile")
    parser.add_argument("--mode", choices=[COMPACT, FAITHFUL], default=COMPACT)
    parser.add_argument("--shots", type=int, default=0, help="0 = exact probabilities")
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--t-start", type=int, default=None)
    parser.add_argument("--strict-paper", action="store_true", help="simulate thresholds with no solutions too")
    parser.add_argument("--memory-cap", type=int, default=DEFAULT_MEMORY_CAP, help="max qubits held by the simulator")
    parser.add_argument("--backend", choices=[DENSE, SPARSE], default=DENSE)
    parser.add_argument("--output", default=None, help="write JSON here ('-' for stdout)")
    parser.add_argument("-v", "--verbose", action="store_true")
    return parser


def load_graph(path: str) -> Graph:
    try:
        with open(path) as fh:
            return parse_graph(fh)
    except OSError as exc:
        raise CliError(EXIT_PARSE, f"cannot read {path}: {exc.strerror}") from None
    except GraphParseError as exc:
        raise CliError(EXIT_PARSE, f"{path}: {exc}") from None


def graph_summary(g: Graph) -> dict:
    return {"n": g.n, "m": g.m, "edges": [list(e) for e in g.edges]}


def _emit(cfg: CliConfig, payload: dict, text: str) -> None:
    if cfg.output == "-":
        print(json.dumps(payload, indent=2))
    elif cfg.output:
        with open(cfg.output, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
        print(text)
    else:
        print(text)


def ascii_histogram(counts: dict[str, int], shots: int, width: int = 40) -> str:
    lines = []
    for bits in sorted(counts):
        c = counts[bits]
        lines.append(f"  {bits} | {'#' * max(1, round(width * c / shots)):<{width}} {c}")
    return "\n".join(lines)


def cmd_solve(cfg: CliConfig) -> int:
    g = load_graph(cfg.graph_path)
    config = SolverConfig(
        mode=cfg.mode,
        t_start=cfg.t_start,
        strict_paper=cfg.strict_paper,
        shots=cfg.shots,
        seed=cfg.seed,
        backend=cfg.backend,
        memory_cap=cfg.memory_cap,
    )
    try:
        result = solve_maxcut(g, config)
    except MemoryCapError as exc:
        raise CliError(EXIT_CAP, str(exc)) from None
    except ExhaustiveCapError as exc:
        raise CliError(EXIT_CAP, str(exc)) from None
    except (VerificationError, NoCutAcceptedError) as exc:
        raise CliError(EXIT_VERIFY, f"internal verification failure: {exc}") from None

    report = result.report
    # checked again here, independently of the solver's own check
    if cut_size(g, report.assignment) != report.size:
        raise CliError(EXIT_VERIFY, f"witness {report.assignment} does not cut {report.size} edges")
    v1, v2 = report.assignment.vertex_sets()
    payload = {
        "graph": graph_summary(g),
        "mode": cfg.mode,
        "backend": cfg.backend,
        "shots": cfg.shots,
        "seed": cfg.seed,
        "trace": result.trace.as_dict()["steps"],
        "maxCutSize": report.size,
        "witness": str(report.assignment),
        "complement": str(report.assignment.complement()),
        "V1": v1,
        "V2": v2,
        "successProbability": result.success_probability if g.m else 1.0,
        "verified": result.trace.verified,
        "resources": None,
        "histogram": result.histogram.as_dict() if result.histogram else None,
    }
    if result.iteration_stats is not None:
        payload["resources"] = result.iteration_stats.as_dict()

    fmt = lambda vs: "{" + ", ".join(f"v{d}" for d in vs) + "}"  # noqa: E731
    lines = [
        f"graph: n={g.n} m={g.m}",
        *(
            f"  t={s.t} R={s.R} iterations={s.iterations} "
            + ("skipped" if s.skipped else f"p={s.successProbability:.6f} {'accepted' if s.accepted else 'rejected'}")
            for s in result.trace.steps
        ),
        f"max cut size: {report.size}",
        f"witness: {report.assignment} (V1={fmt(v1)}, V2={fmt(v2)}), complement {report.assignment.complement()}",
        f"success probability: {payload['successProbability']:.6f}",
    ]
    if payload["resources"]:
        r = payload["resources"]
        lines.append(f"qubits: {r['qubitCount']}, gates per Grover iteration: {r['totalGates']}")
    if result.histogram:
        lines.append(f"histogram ({cfg.shots} shots, seed {cfg.seed}):")
        lines.append(ascii_histogram(result.histogram.counts, cfg.shots))
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


def cmd_verify(cfg: CliConfig) -> int:
    g = load_graph(cfg.graph_path)
    if g.n > VERIFY_MAX_N:
        raise CliError(EXIT_CAP, f"verify sweeps every basis state; n={g.n} exceeds {VERIFY_MAX_N}")
    if g.m == 0:
        _emit(cfg, {"graph": graph_summary(g), "passed": 1 << g.n, "total": 1 << g.n, "failures": []},
              "no edges: nothing to count (pass)")
        return EXIT_OK
    layout = make_layout(cfg.mode, g.n, g.m)
    if layout.total_qubits > SPARSE_MAX_QUBITS:
        raise CliError(EXIT_CAP, f"{cfg.mode} layout needs {layout.total_qubits} qubits; basis sweep supports {SPARSE_MAX_QUBITS}")
    block = synth.synth_counting_block(g, layout)
    failures = verify_counting(g, layout, block, all_rows=False)
    bad_x = sorted({f.x for f in failures})
    total = 1 << g.n
    payload = {
        "graph": graph_summary(g),
        "mode": cfg.mode,
        "passed": total - len(bad_x),
        "total": total,
        "failures": [f.describe(g.n) for f in failures],
    }
    text = "\n".join([*(f"FAIL {f.describe(g.n)}" for f in failures),
                      f"{'pass' if not failures else 'FAIL'} ({total - len(bad_x)}/{total} basis states)"])
    _emit(cfg, payload, text)
    return EXIT_OK if not failures else EXIT_COUNTING


def cmd_count(cfg: CliConfig) -> int:
    g = load_graph(cfg.graph_path)
    try:
        hist = cut_size_histogram(g)
    except ExhaustiveCapError as exc:
        raise CliError(EXIT_CAP, str(exc)) from None
    best = max(t for t, c in enumerate(hist) if c)
    payload = {"graph": graph_summary(g), "counts": {str(t): c for t, c in enumerate(hist)}, "maxCutSize": best}
    rows = [f"  {t:>3}  {c}{'  <- max' if t == best else ''}" for t, c in enumerate(hist)]
    _emit(cfg, payload, "\n".join(["    t  count", *rows]))
    return EXIT_OK


def cmd_stats(cfg: CliConfig) -> int:
    g = load_graph(cfg.graph_path)
    payload = {"graph": graph_summary(g), "qubits": None, "gatesPerIteration": None, "candidates": []}
    lines = [f"graph: n={g.n} m={g.m}"]
    if g.m:
        payload["qubits"] = {FAITHFUL: faithful_qubit_count(g.n, g.m), COMPACT: compact_qubit_count(g.n, g.m)}
        payload["gatesPerIteration"] = {}
        for mode in (FAITHFUL, COMPACT):
            layout = make_layout(mode, g.n, g.m)
            stats = resource_stats(synth.synth_grover_iteration(g, layout, g.m))
            payload["gatesPerIteration"][mode] = stats.as_dict()
            lines.append(f"{mode}: {layout.total_qubits} qubits, {stats.total_gates} gates per Grover iteration")
    if g.n <= EXHAUSTIVE_CAP:
        lines.append("    t      R  iterations")
        for t, R in enumerate(cut_size_histogram(g)):
            iterations = synth.grover_iteration_count(g.n, R) if R else None
            payload["candidates"].append({"t": t, "R": R, "iterations": iterations})
            lines.append(f"  {t:>3}  {R:>5}  {'-' if iterations is None else iterations:>10}")
    _emit(cfg, payload, "\n".join(lines))
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "verify": cmd_verify, "count": cmd_count, "stats": cmd_stats}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = CliConfig(
            command=args.command,
            graph_path=args.graph_path,
            mode=args.mode,
            shots=args.shots,
            seed=args.seed,
            t_start=args.t_start,
            strict_paper=args.strict_paper,
            memory_cap=args.memory_cap,
            output=args.output,
            backend=args.backend,
        )
        return COMMANDS[cfg.command](cfg)
    except CliError as exc:
        print(f"qmaxcut: {exc}", file=sys.stderr)
        return exc.code
    except (ValueError, CircuitError) as exc:
        print(f"qmaxcut: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())

"""Descending-threshold Grover search for a maximum cut.

For t = t_start down to 0 the solver asks a solution counter for R, the
number of assignments cutting exactly t edges, runs floor(pi/4 sqrt(2^n/R))
Grover iterations from the uniform state, and accepts t once the
probability of measuring a size-t cut reaches one half.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Callable, Optional

import numpy as np

from .circuit import COMPACT, ResourceStats, make_layout, resource_stats
from .graph import CutAssignment, CutReport, Graph, count_cuts_of_size, cut_size, cut_size_table
from .simulator import (
    DEFAULT_MEMORY_CAP,
    DENSE,
    MeasurementHistogram,
    apply_hadamard_layer,
    init_state,
    sample_probabilities,
    x_marginal_array,
)
from .synth import grover_iteration_count, synth_counting_block, synth_grover_iteration

log = logging.getLogger(__name__)

SolutionCounter = Callable[[Graph, int], int]

SUCCESS_THRESHOLD = 0.5
# exact marked probabilities that land on 1/2 analytically come out a few ulp low
THRESHOLD_SLACK = 1e-9


class VerificationError(RuntimeError):
    """A witness failed the classical check; the synthesized circuit is wrong."""


class NoCutAcceptedError(RuntimeError):
    pass


def brute_force_counter(graph: Graph, t: int) -> int:
    return count_cuts_of_size(graph, t)


def quantum_counting_counter(graph: Graph, t: int) -> int:
    """Placeholder for estimating R with quantum counting."""
    raise NotImplementedError("quantum counting is not implemented; use brute_force_counter")


@dataclass
class SolverConfig:
    mode: str = COMPACT
    t_start: Optional[int] = None
    strict_paper: bool = False
    shots: int = 0
    seed: int = 1
    backend: str = DENSE
    memory_cap: int = DEFAULT_MEMORY_CAP
    counter: SolutionCounter = brute_force_counter
    iteration_rule: str = "floor_sqrt_ratio"

    def __post_init__(self):
        if self.shots < 0:
            raise ValueError("shots must be >= 0")
        if self.memory_cap < 1:
            raise ValueError("memory_cap must be >= 1")
        if self.iteration_rule != "floor_sqrt_ratio":
            raise ValueError(f"unknown iteration rule {self.iteration_rule!r}")


@dataclass
class TStep:
    t: int
    R: int
    iterations: int
    successProbability: float
    accepted: bool
    skipped: bool = False


@dataclass
class RunTrace:
    steps: list[TStep] = field(default_factory=list)
    maxCutSize: Optional[int] = None
    witness: Optional[str] = None
    verified: bool = False

    def as_dict(self) -> dict:
        return {
            "steps": [asdict(s) for s in self.steps],
            "final": {"maxCutSize": self.maxCutSize, "witness": self.witness, "verified": self.verified},
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict())


@dataclass
class SolveResult:
    report: CutReport
    trace: RunTrace
    marginal: Optional[dict[str, float]] = None
    histogram: Optional[MeasurementHistogram] = None
    iteration_stats: Optional[ResourceStats] = None
    qubit_count: int = 0

    @property
    def success_probability(self) -> float:
        accepted = [s for s in self.trace.steps if s.accepted]
        return accepted[-1].successProbability if accepted else 0.0


def run_grover(graph: Graph, t: int, iterations: int, config: SolverConfig):
    """Simulate ``iterations`` rounds for target ``t``; return (x marginal, layout, iteration circuit)."""
    layout = make_layout(config.mode, graph.n, graph.m)
    sv = init_state(layout, config.backend, config.memory_cap)
    apply_hadamard_layer(sv, layout)
    step = synth_grover_iteration(graph, layout, t, synth_counting_block(graph, layout))
    for _ in range(iterations):
        sv.apply_circuit(step)
    return x_marginal_array(sv, layout), layout, step


def _pick_witness(scores: np.ndarray, sizes: np.ndarray, t: int) -> int:
    # highest score first, lowest value on ties; only classically verified outcomes
    order = np.lexsort((np.arange(len(scores)), -np.round(scores, 12)))
    for v in order:
        if sizes[v] == t and scores[v] > 0:
            return int(v)
    raise VerificationError(f"no outcome with positive weight has cut size {t}")


def solve_maxcut(graph: Graph, config: SolverConfig | None = None) -> SolveResult:
    config = config or SolverConfig()
    n, m = graph.n, graph.m
    trace = RunTrace()
    if m == 0:
        trace.maxCutSize, trace.witness, trace.verified = 0, "0" * n, True
        return SolveResult(CutReport(0, CutAssignment(0, n), 2**n), trace)

    t_start = m if config.t_start is None else config.t_start
    if not 0 <= t_start <= m:
        raise ValueError(f"t_start={t_start} outside 0..{m}")
    sizes = cut_size_table(graph, cap=max(n, 1))

    for t in range(t_start, -1, -1):
        R = config.counter(graph, t)
        if R == 0 and not config.strict_paper:
            log.debug("t=%d: no cuts of this size, skipping", t)
            trace.steps.append(TStep(t, 0, 0, 0.0, False, skipped=True))
            continue
        # with R = 0 the strict loop still runs; R = 1 gives the longest schedule
        iterations = grover_iteration_count(n, max(R, 1))
        probs, layout, step = run_grover(graph, t, iterations, config)
        marked = sizes == t
        histogram = None
        if config.shots:
            histogram = sample_probabilities(probs, n, config.shots, config.seed)
            counts = np.zeros(len(probs))
            for bits, c in histogram.counts.items():
                counts[int(bits, 2)] = c
            p_success = float(counts[marked].sum() / config.shots)
            accepted = 2 * counts[marked].sum() >= config.shots
            scores = counts
        else:
            p_success = float(probs[marked].sum())
            accepted = p_success >= SUCCESS_THRESHOLD - THRESHOLD_SLACK
            scores = probs
        log.info("t=%d R=%d iterations=%d p=%.6f", t, R, iterations, p_success)
        trace.steps.append(TStep(t, R, iterations, p_success, bool(accepted)))
        if not accepted:
            continue

        witness = _pick_witness(scores, sizes, t)
        if cut_size(graph, witness) != t:
            raise VerificationError(f"witness {witness:0{n}b} does not cut {t} edges")
        assignment = CutAssignment(witness, n)
        trace.maxCutSize, trace.witness, trace.verified = t, str(assignment), True
        marginal = {format(v, f"0{n}b"): float(p) for v, p in enumerate(probs)}
        return SolveResult(
            CutReport(t, assignment, R), trace, marginal, histogram, resource_stats(step), layout.total_qubits
        )
    raise NoCutAcceptedError(f"no threshold t in {t_start}..0 reached success probability 1/2")

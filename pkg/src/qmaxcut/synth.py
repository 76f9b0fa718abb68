"""Circuit synthesis for the Grover max-cut search.

Edge predicates
    ``synth_eiiac`` writes s1 = [x_k != x_p] and ``synth_einiac`` writes
    s2 = [x_k == x_p]. Each AND term lands on a zeroed r qubit; the OR into
    an s qubit that starts at 1 uses De Morgan: s ^= NOT r_a AND NOT r_b.

Counting cascade
    Row z_{i,.} is a one-hot counter for the cut size of the first i edges.
    The first edge seeds row 1 (``synth_cfe``); every later edge i+1 moves
    the 1 at z_{i,j} to z_{i+1,j+1} when the edge is cut and to z_{i+1,j}
    otherwise (``synth_cse``). Because each row is one-hot, a Toffoli onto a
    z target never meets a second contribution, so XOR acts as OR.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .circuit import (
    COMPACT,
    Circuit,
    CircuitError,
    Gate,
    QubitLayout,
    cnot,
    h,
    mcz,
    toffoli,
    x,
)
from .graph import Graph


def _x_block(qubits) -> list[Gate]:
    return [x(q) for q in qubits]


def _or_into(r_a: int, r_b: int, s: int) -> list[Gate]:
    # s starts at 1: s ^ (NOT r_a AND NOT r_b) == r_a OR r_b
    return [x(r_a), x(r_b), toffoli(r_a, r_b, s), x(r_a), x(r_b)]


def _edge_qubits(layout: QubitLayout, edge: tuple[int, int]) -> tuple[int, int]:
    k, p = edge
    if not (1 <= k <= layout.n and 1 <= p <= layout.n):
        raise CircuitError(f"edge {edge} does not fit {layout.n} vertices")
    return layout.x[k - 1], layout.x[p - 1]


def _eiiac_gates(layout: QubitLayout, edge, app: int) -> list[Gate]:
    xk, xp = _edge_qubits(layout, edge)
    (r1, r2, _, _), (s1, _) = layout.predicate_ancillas(app)
    return [
        x(xp), toffoli(xk, xp, r1), x(xp),  # r1 = x_k AND NOT x_p
        x(xk), toffoli(xk, xp, r2), x(xk),  # r2 = NOT x_k AND x_p
        *_or_into(r1, r2, s1),
    ]


def _einiac_gates(layout: QubitLayout, edge, app: int) -> list[Gate]:
    xk, xp = _edge_qubits(layout, edge)
    (_, _, r3, r4), (_, s2) = layout.predicate_ancillas(app)
    return [
        x(xk), x(xp), toffoli(xk, xp, r3), x(xk), x(xp),  # r3 = NOT x_k AND NOT x_p
        toffoli(xk, xp, r4),  # r4 = x_k AND x_p
        *_or_into(r3, r4, s2),
    ]


def synth_eiiac(layout: QubitLayout, edge: tuple[int, int], app: int) -> Circuit:
    """Edge-in-cut predicate into s_{app,1}."""
    return Circuit(layout.total_qubits, tuple(_eiiac_gates(layout, edge, app)))


def synth_einiac(layout: QubitLayout, edge: tuple[int, int], app: int) -> Circuit:
    """Edge-not-in-cut predicate into s_{app,2}."""
    return Circuit(layout.total_qubits, tuple(_einiac_gates(layout, edge, app)))


def _predicates(layout, edge, app) -> list[Gate]:
    return _eiiac_gates(layout, edge, app) + _einiac_gates(layout, edge, app)


def _with_predicates(layout: QubitLayout, edge, app: int, body: list[Gate]) -> list[Gate]:
    pred = _predicates(layout, edge, app)
    gates = pred + body
    if layout.mode == COMPACT:
        gates += pred[::-1]
    return gates


def _cfe_gates(layout: QubitLayout, edge) -> list[Gate]:
    _, (s1, s2) = layout.predicate_ancillas(1)
    body = [cnot(s1, layout.z_index(1, 1)), cnot(s2, layout.z_index(1, 0))]
    return _with_predicates(layout, edge, 1, body)


def _cse_gates(layout: QubitLayout, edge, i: int, j: int, app: int) -> list[Gate]:
    if not 0 <= j <= i:
        raise CircuitError(f"level j={j} outside 0..{i}")
    _, (s1, s2) = layout.predicate_ancillas(app)
    zij = layout.z_index(i, j)
    body = [
        toffoli(s1, zij, layout.z_index(i + 1, j + 1)),  # cut: count + 1
        toffoli(s2, zij, layout.z_index(i + 1, j)),  # not cut: count unchanged
    ]
    return _with_predicates(layout, edge, app, body)


def synth_cfe(layout: QubitLayout, first_edge: tuple[int, int]) -> Circuit:
    return Circuit(layout.total_qubits, tuple(_cfe_gates(layout, first_edge)))


def synth_cse(layout: QubitLayout, edge: tuple[int, int], i: int, j: int, app: int) -> Circuit:
    """Fold edge ``i + 1`` into the counter at level ``j`` of row ``i``."""
    return Circuit(layout.total_qubits, tuple(_cse_gates(layout, edge, i, j, app)))


def counting_schedule(m: int) -> list[tuple[int, int, int]]:
    """(edge row i, level j, application index) for every CSE, in order.

    Application 1 belongs to the CFE, so CSEs are numbered from 2.
    """
    steps = []
    app = 2
    for i in range(1, m):
        for j in range(i, -1, -1):
            steps.append((i, j, app))
            app += 1
    return steps


def synth_counting_block(graph: Graph, layout: QubitLayout) -> Circuit:
    if graph.m == 0:
        raise CircuitError("counting block needs at least one edge")
    if (layout.n, layout.m) != (graph.n, graph.m):
        raise CircuitError(f"layout is for n={layout.n}, m={layout.m}; graph has n={graph.n}, m={graph.m}")
    gates = _cfe_gates(layout, graph.edges[0])
    for i, j, app in counting_schedule(graph.m):
        gates += _cse_gates(layout, graph.edges[i], i, j, app)
    return Circuit(layout.total_qubits, tuple(gates))


def synth_oracle(layout: QubitLayout, t: int) -> Circuit:
    """Phase kickback through aux, which must be in |->."""
    if not 0 <= t <= layout.m:
        raise CircuitError(f"target cut size t={t} outside 0..{layout.m}")
    return Circuit(layout.total_qubits, (cnot(layout.z_index(layout.m, t), layout.aux),))


def synth_diffusion(layout: QubitLayout) -> Circuit:
    """Reflection about the uniform state of the x register (up to a global -1)."""
    xs = layout.x
    gates = [h(q) for q in xs] + [x(q) for q in xs]
    gates.append(mcz(xs[1:], xs[0]))
    gates += [x(q) for q in xs] + [h(q) for q in xs]
    return Circuit(layout.total_qubits, tuple(gates))


def grover_iteration_count(n: int, R: int) -> int:
    if R < 1:
        raise ValueError("no iteration count exists for an empty solution set")
    return math.floor(math.pi / 4 * math.sqrt(2**n / R))


@dataclass(frozen=True)
class GroverPlan:
    t: int
    R: int
    iterations: int


def plan_for(n: int, t: int, R: int) -> GroverPlan:
    return GroverPlan(t, R, grover_iteration_count(n, R))


def synth_grover_iteration(graph: Graph, layout: QubitLayout, t: int, counting: Circuit | None = None) -> Circuit:
    """Counting block, oracle, uncompute, diffusion."""
    block = counting if counting is not None else synth_counting_block(graph, layout)
    return block + synth_oracle(layout, t) + block.inverse() + synth_diffusion(layout)

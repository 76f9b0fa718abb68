"""Exhaustive classical checks of the counting cascade."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, QubitLayout
from .graph import Graph
from .simulator import permute_basis, psi0_index


@dataclass(frozen=True)
class CountingFailure:
    x: int
    row: int
    expected: int
    found: tuple[int, ...]

    def describe(self, n: int) -> str:
        return f"x={self.x:0{n}b} row z_{self.row}: expected one-hot at {self.expected}, found bits {list(self.found)}"


def z_row(indices: np.ndarray, layout: QubitLayout, i: int) -> np.ndarray:
    """Bits z_{i,0..i} of each basis index, one column per level."""
    cols = [(indices >> layout.z_index(i, j)) & 1 for j in range(i + 1)]
    return np.stack(cols, axis=-1)


def prefix_cut_sizes(graph: Graph, xs: np.ndarray, i: int) -> np.ndarray:
    total = np.zeros(xs.shape, dtype=np.int64)
    for k, p in graph.edges[:i]:
        total += ((xs >> (k - 1)) ^ (xs >> (p - 1))) & 1
    return total


def verify_counting(
    graph: Graph,
    layout: QubitLayout,
    circuit: Circuit,
    xs: np.ndarray | None = None,
    all_rows: bool = True,
) -> list[CountingFailure]:
    """Run ``circuit`` on psi0 with each x loaded and check the z rows.

    Row i must be one-hot at the cut size of the first i edges. With
    ``all_rows=False`` only the final row m is checked.
    """
    if xs is None:
        xs = np.arange(1 << graph.n, dtype=np.int64)
    xs = np.asarray(xs, dtype=np.int64)
    out, sign = permute_basis(psi0_index(layout) | xs, circuit)
    failures = []
    rows = range(1, graph.m + 1) if all_rows else [graph.m]
    for i in rows:
        bits = z_row(out, layout, i)
        expected = prefix_cut_sizes(graph, xs, i)
        one_hot = np.zeros_like(bits)
        one_hot[np.arange(len(xs)), expected] = 1
        bad = np.flatnonzero((bits != one_hot).any(axis=1) | (sign != 1))
        failures += [CountingFailure(int(xs[b]), i, int(expected[b]), tuple(bits[b].tolist())) for b in bad]
    return failures

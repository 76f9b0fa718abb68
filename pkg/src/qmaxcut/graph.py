"""Graphs, cut assignments and the exhaustive classical reference solver.

Vertices are 1-indexed everywhere a user can see them. An assignment is an
n-bit integer whose bit ``d - 1`` is 1 when vertex ``d`` lies in V1; its
display string is written x_n ... x_1, so ``"010"`` puts vertex 2 in V1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TextIO

import numpy as np

EXHAUSTIVE_CAP = 24


class GraphParseError(ValueError):
    """Base class for graph-file errors; ``lineno`` is 1-based."""

    def __init__(self, lineno: int, message: str):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


class MalformedHeaderError(GraphParseError):
    pass


class MalformedEdgeError(GraphParseError):
    pass


class VertexRangeError(GraphParseError):
    pass


class SelfLoopError(GraphParseError):
    pass


class DuplicateEdgeError(GraphParseError):
    pass


class ExhaustiveCapError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"graph needs at least one vertex, got n={self.n}")
        edges = tuple((int(k), int(p)) for k, p in self.edges)
        seen = set()
        for k, p in edges:
            if not (1 <= k <= self.n and 1 <= p <= self.n):
                raise ValueError(f"edge ({k}, {p}) out of range 1..{self.n}")
            if k == p:
                raise ValueError(f"self-loop on vertex {k}")
            key = frozenset((k, p))
            if key in seen:
                raise ValueError(f"duplicate edge ({k}, {p})")
            seen.add(key)
        object.__setattr__(self, "edges", edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"] + [f"{k} {p}" for k, p in self.edges]
        return "\n".join(lines) + "\n"


@dataclass(frozen=True, order=True)
class CutAssignment:
    """An n-bit cut. ``value`` bit d-1 set means vertex d is in V1."""

    value: int
    n: int

    def __post_init__(self):
        if self.n < 1 or not 0 <= self.value < (1 << self.n):
            raise ValueError(f"value {self.value} does not fit in {self.n} bits")

    @classmethod
    def from_string(cls, bits: str) -> "CutAssignment":
        if not bits or set(bits) - {"0", "1"}:
            raise ValueError(f"not a bit string: {bits!r}")
        return cls(int(bits, 2), len(bits))

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    def bit(self, d: int) -> int:
        return (self.value >> (d - 1)) & 1

    def complement(self) -> "CutAssignment":
        return CutAssignment(self.value ^ ((1 << self.n) - 1), self.n)

    def vertex_sets(self) -> tuple[list[int], list[int]]:
        """Return (V1, V2) as sorted lists of 1-indexed vertices."""
        v1 = [d for d in range(1, self.n + 1) if self.bit(d)]
        v2 = [d for d in range(1, self.n + 1) if not self.bit(d)]
        return v1, v2


@dataclass(frozen=True)
class CutReport:
    size: int
    assignment: CutAssignment
    optimal_count: int


def parse_graph(stream: TextIO | str) -> Graph:
    """Parse the ``n m`` header plus ``m`` edge lines format.

    Blank lines and lines starting with ``#`` are skipped.
    """
    text = stream if isinstance(stream, str) else stream.read()
    header = None
    n = m = 0
    edges: list[tuple[int, int]] = []
    seen: set[frozenset[int]] = set()
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        fields = line.split()
        if header is None:
            try:
                n, m = (int(f) for f in fields)
            except ValueError:
                raise MalformedHeaderError(lineno, f"expected 'n m', got {line!r}") from None
            if n < 1 or m < 0:
                raise MalformedHeaderError(lineno, f"need n >= 1 and m >= 0, got {line!r}")
            header = lineno
            continue
        if len(edges) == m:
            raise MalformedEdgeError(lineno, f"more than the {m} edges declared in the header")
        try:
            k, p = (int(f) for f in fields)
        except ValueError:
            raise MalformedEdgeError(lineno, f"expected 'k p', got {line!r}") from None
        for v in (k, p):
            if not 1 <= v <= n:
                raise VertexRangeError(lineno, f"vertex {v} outside 1..{n}")
        if k == p:
            raise SelfLoopError(lineno, f"self-loop on vertex {k}")
        key = frozenset((k, p))
        if key in seen:
            raise DuplicateEdgeError(lineno, f"duplicate edge ({k}, {p})")
        seen.add(key)
        edges.append((k, p))
    if header is None:
        raise MalformedHeaderError(max(last, 1), "missing 'n m' header")
    if len(edges) != m:
        raise MalformedEdgeError(last + 1, f"header declares {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def edge_in_cut(xk: int, xp: int) -> int:
    return (xk & (1 - xp)) | ((1 - xk) & xp)


def edge_not_in_cut(xk: int, xp: int) -> int:
    return ((1 - xk) & (1 - xp)) | (xk & xp)


def cut_size(g: Graph, a: CutAssignment | int) -> int:
    if isinstance(a, CutAssignment):
        if a.n != g.n:
            raise ValueError(f"assignment has {a.n} bits, graph has {g.n} vertices")
        a = a.value
    return sum(edge_in_cut((a >> (k - 1)) & 1, (a >> (p - 1)) & 1) for k, p in g.edges)


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise ExhaustiveCapError(f"n={g.n} exceeds the exhaustive-search cap of {cap}")


def cut_size_table(g: Graph, cap: int = EXHAUSTIVE_CAP) -> np.ndarray:
    """Cut size of every assignment, indexed by assignment value."""
    _check_cap(g, cap)
    xs = np.arange(1 << g.n, dtype=np.int64)
    sizes = np.zeros(xs.shape, dtype=np.int16)
    for k, p in g.edges:
        sizes += ((xs >> (k - 1)) ^ (xs >> (p - 1))) & 1
    return sizes


def cut_size_histogram(g: Graph, cap: int = EXHAUSTIVE_CAP) -> list[int]:
    """Entry t is the number of assignments cutting exactly t edges, t = 0..m."""
    return np.bincount(cut_size_table(g, cap), minlength=g.m + 1).tolist()


def count_cuts_of_size(g: Graph, t: int, cap: int = EXHAUSTIVE_CAP) -> int:
    if not 0 <= t <= g.m:
        raise ValueError(f"t={t} outside 0..{g.m}")
    return cut_size_histogram(g, cap)[t]


def brute_force_max_cut(g: Graph, cap: int = EXHAUSTIVE_CAP) -> CutReport:
    sizes = cut_size_table(g, cap)
    best = int(sizes.max())
    optimal = np.flatnonzero(sizes == best)
    # flatnonzero is ascending, so optimal[0] is the lowest-valued witness
    return CutReport(best, CutAssignment(int(optimal[0]), g.n), len(optimal))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((k, p) for k in range(1, n + 1) for p in range(k + 1, n + 1)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((k, k + 1) for k in range(1, n)))

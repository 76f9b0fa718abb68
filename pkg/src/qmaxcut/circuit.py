"""Gate-list circuit IR and the qubit register layout.

Every admitted gate is an involution, so a circuit is inverted by reversing
its gate list. Qubit q is bit q of a statevector index.

Register order is fixed: x (x_1 first), aux, r quads, s pairs, then the z
triangle row by row (z_{1,0}, z_{1,1}, z_{2,0}, ...).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence

H, X, CNOT, TOFFOLI, MCX, MCZ = "H", "X", "CNOT", "Toffoli", "MCX", "MCZ"
GATE_KINDS = (H, X, CNOT, TOFFOLI, MCX, MCZ)

_CONTROL_ARITY = {H: (0, 0), X: (0, 0), CNOT: (1, 1), TOFFOLI: (2, 2), MCX: (1, None), MCZ: (0, None)}


class CircuitError(ValueError):
    pass


@dataclass(frozen=True)
class Gate:
    kind: str
    controls: tuple[int, ...]
    target: int

    def __post_init__(self):
        if self.kind not in _CONTROL_ARITY:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        controls = tuple(int(c) for c in self.controls)
        object.__setattr__(self, "controls", controls)
        lo, hi = _CONTROL_ARITY[self.kind]
        if len(controls) < lo or (hi is not None and len(controls) > hi):
            raise CircuitError(f"{self.kind} cannot take {len(controls)} controls")
        if len(set(controls)) != len(controls):
            raise CircuitError(f"repeated control in {self}")
        if self.target in controls:
            raise CircuitError(f"target {self.target} is also a control in {self.kind}")
        if self.target < 0 or any(c < 0 for c in controls):
            raise CircuitError(f"negative qubit index in {self.kind}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + (self.target,)

    def __str__(self) -> str:
        if self.controls:
            return f"{self.kind} {','.join(map(str, self.controls))} -> {self.target}"
        return f"{self.kind} -> {self.target}"


def h(q: int) -> Gate:
    return Gate(H, (), q)


def x(q: int) -> Gate:
    return Gate(X, (), q)


def cnot(c: int, t: int) -> Gate:
    return Gate(CNOT, (c,), t)


def toffoli(c1: int, c2: int, t: int) -> Gate:
    return Gate(TOFFOLI, (c1, c2), t)


def mcx(controls: Sequence[int], t: int) -> Gate:
    return Gate(MCX, tuple(controls), t)


def mcz(controls: Sequence[int], t: int) -> Gate:
    return Gate(MCZ, tuple(controls), t)


@dataclass(frozen=True)
class Circuit:
    qubit_count: int
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        if self.qubit_count < 1:
            raise CircuitError(f"qubit_count must be positive, got {self.qubit_count}")
        gates = tuple(self.gates)
        for g in gates:
            self._check(g)
        object.__setattr__(self, "gates", gates)

    def _check(self, g: Gate) -> None:
        for q in g.qubits:
            if q >= self.qubit_count:
                raise CircuitError(f"{g}: qubit {q} out of range for {self.qubit_count} qubits")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.qubit_count != self.qubit_count:
            raise CircuitError("cannot concatenate circuits of different width")
        return Circuit(self.qubit_count, self.gates + other.gates)

    def append(self, g: Gate) -> "Circuit":
        self._check(g)
        return Circuit(self.qubit_count, self.gates + (g,))

    def extend(self, gates: Iterable[Gate]) -> "Circuit":
        return Circuit(self.qubit_count, self.gates + tuple(gates))

    def inverse(self) -> "Circuit":
        return Circuit(self.qubit_count, self.gates[::-1])

    def has_superposing_gates(self) -> bool:
        return any(g.kind == H for g in self.gates)

    def dump(self) -> str:
        """One gate per line, ``KIND ctrl,... -> target``."""
        return "".join(f"{g}\n" for g in self.gates)


def inverse(c: Circuit) -> Circuit:
    return c.inverse()


def parse_netlist(text: str, qubit_count: int) -> Circuit:
    gates = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            head, target = line.split("->")
            parts = head.split()
            controls = tuple(int(c) for c in parts[1].split(",")) if len(parts) > 1 else ()
            gates.append(Gate(parts[0], controls, int(target)))
        except (ValueError, IndexError) as exc:
            raise CircuitError(f"netlist line {lineno}: {line!r}: {exc}") from None
    return Circuit(qubit_count, tuple(gates))


@dataclass(frozen=True)
class ResourceStats:
    gate_count_by_kind: dict[str, int]
    total_gates: int
    qubit_count: int

    def as_dict(self) -> dict:
        return {
            "qubitCount": self.qubit_count,
            "totalGates": self.total_gates,
            "gateCountByKind": dict(self.gate_count_by_kind),
        }


def resource_stats(c: Circuit) -> ResourceStats:
    counts = Counter(g.kind for g in c.gates)
    return ResourceStats({k: counts.get(k, 0) for k in GATE_KINDS}, len(c.gates), c.qubit_count)


FAITHFUL, COMPACT = "faithful", "compact"


@dataclass(frozen=True)
class QubitLayout:
    mode: str
    n: int
    m: int
    x: tuple[int, ...]
    aux: int
    r: tuple[tuple[int, int, int, int], ...]
    s: tuple[tuple[int, int], ...]
    z: dict[tuple[int, int], int] = field(hash=False)
    total_qubits: int

    def predicate_ancillas(self, app: int) -> tuple[tuple[int, int, int, int], tuple[int, int]]:
        """r-quad and s-pair for the 1-based predicate application ``app``.

        The compact layout owns a single slot that every application shares.
        """
        slot = 1 if self.mode == COMPACT else app
        if not 1 <= slot <= len(self.r):
            raise CircuitError(f"no predicate ancillas for application {app} in {self.mode} layout")
        return self.r[slot - 1], self.s[slot - 1]

    def z_index(self, i: int, j: int) -> int:
        try:
            return self.z[(i, j)]
        except KeyError:
            raise CircuitError(f"z_{{{i},{j}}} is not in the layout (m={self.m})") from None

    @property
    def s_qubits(self) -> list[int]:
        return [q for pair in self.s for q in pair]

    def registers(self) -> dict[str, list[int]]:
        return {
            "x": list(self.x),
            "aux": [self.aux],
            "r": [q for quad in self.r for q in quad],
            "s": self.s_qubits,
            "z": list(self.z.values()),
        }


def predicate_applications(m: int) -> int:
    """CFE plus every CSE in the counting cascade: m(m+1)/2."""
    return m * (m + 1) // 2


def z_qubit_count(m: int) -> int:
    return m * (m + 3) // 2


def faithful_qubit_count(n: int, m: int) -> int:
    return n + 1 + 3 * m * (m + 1) + z_qubit_count(m)


def compact_qubit_count(n: int, m: int) -> int:
    return n + 7 + z_qubit_count(m)


def _build_layout(mode: str, n: int, m: int, slots: int) -> QubitLayout:
    if n < 1 or m < 1:
        raise CircuitError(f"layouts need n >= 1 and m >= 1, got n={n}, m={m}")
    nxt = 0

    def take(k: int) -> tuple[int, ...]:
        nonlocal nxt
        block = tuple(range(nxt, nxt + k))
        nxt += k
        return block

    xs = take(n)
    (aux,) = take(1)
    r = tuple(take(4) for _ in range(slots))
    s = tuple(take(2) for _ in range(slots))
    z = {(i, j): take(1)[0] for i in range(1, m + 1) for j in range(i + 1)}
    return QubitLayout(mode, n, m, xs, aux, r, s, z, nxt)


def layout_faithful(n: int, m: int) -> QubitLayout:
    return _build_layout(FAITHFUL, n, m, predicate_applications(m))


def layout_compact(n: int, m: int) -> QubitLayout:
    return _build_layout(COMPACT, n, m, 1)


def make_layout(mode: str, n: int, m: int) -> QubitLayout:
    if mode == FAITHFUL:
        return layout_faithful(n, m)
    if mode == COMPACT:
        return layout_compact(n, m)
    raise CircuitError(f"unknown layout mode {mode!r}")


def layout_qubit_count(mode: str, n: int, m: int) -> int:
    if mode == FAITHFUL:
        return faithful_qubit_count(n, m)
    if mode == COMPACT:
        return compact_qubit_count(n, m)
    raise CircuitError(f"unknown layout mode {mode!r}")

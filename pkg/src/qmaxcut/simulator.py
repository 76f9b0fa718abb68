"""Statevector execution of synthesized circuits.

Two storage back ends share one interface:

``DenseState``
    All 2**Q amplitudes in a complex128 array, updated in place by numba
    kernels. Bounded by ``memory_cap_qubits`` (default 26, i.e. 1 GiB).

``SparseState``
    Only the nonzero amplitudes, as parallel ``indices``/``amplitudes``
    arrays. The Grover circuits here only superpose the x register and aux,
    so the support never exceeds 2**(n+1) entries however many ancillas the
    layout carries. The cap is checked against those n + 1 superposed qubits.

Shot sampling draws from numpy's PCG64 bit generator seeded with the
caller's integer seed, so histograms are reproducible across platforms.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import _kernels
from .circuit import CNOT, H, MCX, MCZ, TOFFOLI, X, Circuit, Gate, QubitLayout

DEFAULT_MEMORY_CAP = 26
AMPLITUDE_BYTES = 16
# sparse indices are int64, so layouts must fit below the sign bit
SPARSE_MAX_QUBITS = 62
PRUNE_TOLERANCE = 1e-12

DENSE, SPARSE = "dense", "sparse"


class MemoryCapError(RuntimeError):
    def __init__(self, required_qubits: int, cap: int, backend: str = DENSE):
        self.required_qubits = required_qubits
        self.cap = cap
        self.required_bytes = AMPLITUDE_BYTES << required_qubits
        super().__init__(
            f"{backend} state needs {required_qubits} qubits "
            f"({self.required_bytes} bytes of amplitudes) but the memory cap is {cap}; "
            f"rerun with --memory-cap {required_qubits}"
        )


class StateVector:
    qubit_count: int

    def apply_gate(self, g: Gate) -> None:
        raise NotImplementedError

    def apply_circuit(self, c: Circuit) -> "StateVector":
        if c.qubit_count != self.qubit_count:
            raise ValueError(f"circuit has {c.qubit_count} qubits, state has {self.qubit_count}")
        for g in c.gates:
            self.apply_gate(g)
        return self

    def low_marginal(self, nbits: int) -> np.ndarray:
        """Probability of each value of qubits 0..nbits-1, indexed by value."""
        raise NotImplementedError

    def norm(self) -> float:
        raise NotImplementedError

    def amplitude(self, index: int) -> complex:
        raise NotImplementedError

    def to_dense(self) -> np.ndarray:
        raise NotImplementedError

    def copy(self) -> "StateVector":
        raise NotImplementedError


class DenseState(StateVector):
    """All 2**Q amplitudes, stored under a lazy bit-flip frame.

    Uncontrolled X gates only toggle ``frame``: the amplitude of logical
    index i lives at physical index ``i ^ frame``. Controlled gates read
    their control condition through the frame; H absorbs a pending flip on
    its target in the same pass.
    """

    def __init__(self, amplitudes: np.ndarray):
        q = int(amplitudes.shape[0]).bit_length() - 1
        if amplitudes.ndim != 1 or 1 << q != amplitudes.shape[0]:
            raise ValueError("amplitude vector length must be a power of two")
        self.qubit_count = q
        self.amplitudes = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        self.frame = 0

    @classmethod
    def basis(cls, qubit_count: int, index: int, cap: int = DEFAULT_MEMORY_CAP) -> "DenseState":
        if qubit_count > cap:
            raise MemoryCapError(qubit_count, cap)
        amps = np.zeros(1 << qubit_count, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    def apply_gate(self, g: Gate) -> None:
        psi = self.amplitudes
        if g.kind == H:
            bit = 1 << g.target
            _kernels.hadamard(psi, g.target, bool(self.frame & bit))
            self.frame &= ~bit
        elif g.kind in (X, CNOT, TOFFOLI, MCX):
            if not g.controls:
                self.frame ^= 1 << g.target
                return
            positions = np.array(sorted(g.qubits), dtype=np.int64)
            cmask = sum(1 << c for c in g.controls)
            _kernels.mcx(psi, positions, cmask & ~self.frame, 1 << g.target)
        elif g.kind == MCZ:
            positions = np.array(sorted(g.qubits), dtype=np.int64)
            full = sum(1 << q for q in g.qubits)
            _kernels.mcz(psi, positions, full & ~self.frame)
        else:
            raise ValueError(f"unsupported gate {g.kind}")

    def materialize(self) -> None:
        """Apply the pending X frame to the stored amplitudes."""
        if self.frame:
            _kernels.flip_bits(self.amplitudes, self.frame)
            self.frame = 0

    def low_marginal(self, nbits: int) -> np.ndarray:
        return _kernels.low_bits_marginal(self.amplitudes, nbits, self.frame & ((1 << nbits) - 1))

    def norm(self) -> float:
        return math.sqrt(_kernels.norm_squared(self.amplitudes))

    def amplitude(self, index: int) -> complex:
        return complex(self.amplitudes[index ^ self.frame])

    def to_dense(self) -> np.ndarray:
        out = self.copy()
        out.materialize()
        return out.amplitudes

    def copy(self) -> "DenseState":
        dup = DenseState(self.amplitudes.copy())
        dup.frame = self.frame
        return dup


class SparseState(StateVector):
    def __init__(self, qubit_count: int, indices: np.ndarray, amplitudes: np.ndarray):
        if qubit_count > SPARSE_MAX_QUBITS:
            raise MemoryCapError(qubit_count, SPARSE_MAX_QUBITS, SPARSE)
        self.qubit_count = qubit_count
        self.indices = np.asarray(indices, dtype=np.int64)
        self.amplitudes = np.asarray(amplitudes, dtype=np.complex128)

    @classmethod
    def basis(cls, qubit_count: int, index: int) -> "SparseState":
        return cls(qubit_count, np.array([index]), np.array([1.0 + 0j]))

    def apply_gate(self, g: Gate) -> None:
        if g.kind == H:
            self._hadamard(g.target)
        elif g.kind in (X, CNOT, TOFFOLI, MCX):
            cmask = sum(1 << c for c in g.controls)
            if cmask:
                sel = (self.indices & cmask) == cmask
                self.indices[sel] ^= 1 << g.target
            else:
                self.indices ^= 1 << g.target
        elif g.kind == MCZ:
            full = sum(1 << q for q in g.qubits)
            sel = (self.indices & full) == full
            self.amplitudes[sel] *= -1
        else:
            raise ValueError(f"unsupported gate {g.kind}")

    def _hadamard(self, target: int) -> None:
        bit = 1 << target
        high = (self.indices & bit) != 0
        keys, inv = np.unique(self.indices & ~bit, return_inverse=True)
        a0 = np.zeros(len(keys), dtype=np.complex128)
        a1 = np.zeros(len(keys), dtype=np.complex128)
        a0[inv[~high]] = self.amplitudes[~high]
        a1[inv[high]] = self.amplitudes[high]
        s = 1 / math.sqrt(2)
        idx = np.concatenate([keys, keys | bit])
        amp = np.concatenate([(a0 + a1) * s, (a0 - a1) * s])
        keep = np.abs(amp) > PRUNE_TOLERANCE
        self.indices = idx[keep]
        self.amplitudes = amp[keep]

    def low_marginal(self, nbits: int) -> np.ndarray:
        probs = np.abs(self.amplitudes) ** 2
        return np.bincount(self.indices & ((1 << nbits) - 1), weights=probs, minlength=1 << nbits)

    def norm(self) -> float:
        return float(np.sqrt(np.sum(np.abs(self.amplitudes) ** 2)))

    def amplitude(self, index: int) -> complex:
        hit = np.flatnonzero(self.indices == index)
        return complex(self.amplitudes[hit].sum()) if hit.size else 0j

    def to_dense(self) -> np.ndarray:
        out = np.zeros(1 << self.qubit_count, dtype=np.complex128)
        np.add.at(out, self.indices, self.amplitudes)
        return out

    def copy(self) -> "SparseState":
        return SparseState(self.qubit_count, self.indices.copy(), self.amplitudes.copy())


def psi0_index(layout: QubitLayout) -> int:
    """Basis index of the initial register: aux and every s qubit at 1."""
    return (1 << layout.aux) | sum(1 << q for q in layout.s_qubits)


def check_memory(layout: QubitLayout, backend: str, cap: int) -> None:
    if backend == DENSE:
        if layout.total_qubits > cap:
            raise MemoryCapError(layout.total_qubits, cap)
    elif backend == SPARSE:
        if layout.total_qubits > SPARSE_MAX_QUBITS:
            raise MemoryCapError(layout.total_qubits, SPARSE_MAX_QUBITS, SPARSE)
        if layout.n + 1 > cap:
            raise MemoryCapError(layout.n + 1, cap, SPARSE)
    else:
        raise ValueError(f"unknown backend {backend!r}")


def init_state(layout: QubitLayout, backend: str = DENSE, cap: int = DEFAULT_MEMORY_CAP) -> StateVector:
    check_memory(layout, backend, cap)
    if backend == DENSE:
        return DenseState.basis(layout.total_qubits, psi0_index(layout), cap)
    return SparseState.basis(layout.total_qubits, psi0_index(layout))


def hadamard_layer(layout: QubitLayout) -> Circuit:
    return Circuit(layout.total_qubits, tuple(Gate(H, (), q) for q in (layout.aux, *layout.x)))


def apply_hadamard_layer(sv: StateVector, layout: QubitLayout) -> StateVector:
    return sv.apply_circuit(hadamard_layer(layout))


def apply_circuit(sv: StateVector, c: Circuit) -> StateVector:
    return sv.apply_circuit(c)


def display(value: int, n: int) -> str:
    return format(value, f"0{n}b")


def x_marginal_array(sv: StateVector, layout: QubitLayout) -> np.ndarray:
    # x occupies qubits 0..n-1 in every layout
    return sv.low_marginal(layout.n)


def x_register_marginal(sv: StateVector, layout: QubitLayout) -> dict[str, float]:
    probs = x_marginal_array(sv, layout)
    return {display(v, layout.n): float(p) for v, p in enumerate(probs)}


def marked_probability(sv: StateVector, layout: QubitLayout, predicate: Callable[[int], bool]) -> float:
    """Total x-register probability of the values accepted by ``predicate``."""
    probs = x_marginal_array(sv, layout)
    return float(sum(p for v, p in enumerate(probs) if predicate(v)))


@dataclass(frozen=True)
class MeasurementHistogram:
    counts: dict[str, int]
    shots: int
    seed: int

    def as_dict(self) -> dict:
        return {"shots": self.shots, "seed": self.seed, "counts": dict(self.counts)}

    def to_json(self) -> str:
        return json.dumps(self.as_dict())

    @classmethod
    def from_json(cls, text: str) -> "MeasurementHistogram":
        d = json.loads(text)
        return cls({str(k): int(v) for k, v in d["counts"].items()}, int(d["shots"]), int(d["seed"]))


def sample_probabilities(probs: np.ndarray, n: int, shots: int, seed: int) -> MeasurementHistogram:
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    p = np.clip(np.asarray(probs, dtype=np.float64), 0.0, None)
    p = p / p.sum()
    rng = np.random.Generator(np.random.PCG64(seed))
    draws = rng.choice(len(p), size=shots, p=p)
    values, counts = np.unique(draws, return_counts=True)
    return MeasurementHistogram(
        {display(int(v), n): int(c) for v, c in zip(values, counts)}, shots, seed
    )


def sample_shots(sv: StateVector, layout: QubitLayout, shots: int, seed: int) -> MeasurementHistogram:
    return sample_probabilities(x_marginal_array(sv, layout), layout.n, shots, seed)


def permute_basis(indices: np.ndarray, c: Circuit) -> tuple[np.ndarray, np.ndarray]:
    """Push classical basis states through an H-free circuit.

    Returns the image indices and the accumulated +-1 phase of each. This is
    the vectorized reversible-logic evaluator used by the exhaustive checks.
    """
    if c.has_superposing_gates():
        raise ValueError("circuit contains H gates; basis states would not stay classical")
    idx = np.array(indices, dtype=np.int64, copy=True)
    sign = np.ones(idx.shape, dtype=np.int8)
    for g in c.gates:
        if g.kind == MCZ:
            full = sum(1 << q for q in g.qubits)
            sign[(idx & full) == full] *= -1
            continue
        cmask = sum(1 << q for q in g.controls)
        if cmask:
            idx[(idx & cmask) == cmask] ^= 1 << g.target
        else:
            idx ^= 1 << g.target
    return idx, sign

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmaxcut.circuit import Circuit, cnot, h, layout_compact, layout_faithful, mcx, mcz, toffoli, x
from qmaxcut.graph import Graph, cut_size
from qmaxcut.simulator import (
    DenseState,
    MeasurementHistogram,
    MemoryCapError,
    SparseState,
    apply_hadamard_layer,
    init_state,
    marked_probability,
    permute_basis,
    psi0_index,
    sample_shots,
    x_register_marginal,
)
from qmaxcut.synth import synth_counting_block, synth_grover_iteration


def reference_unitary(c: Circuit) -> np.ndarray:
    """Oracle: build each gate's matrix column by column from its action on bits."""
    dim = 1 << c.qubit_count
    u = np.eye(dim, dtype=complex)
    for g in c.gates:
        m = np.zeros((dim, dim), dtype=complex)
        for col in range(dim):
            on = all((col >> q) & 1 for q in g.controls)
            if g.kind == "H":
                b = (col >> g.target) & 1
                m[col & ~(1 << g.target), col] += 1 / math.sqrt(2)
                m[col | (1 << g.target), col] += (-1 if b else 1) / math.sqrt(2)
            elif g.kind == "MCZ":
                m[col, col] = -1 if on and (col >> g.target) & 1 else 1
            else:
                m[col ^ (1 << g.target) if on else col, col] = 1
        u = m @ u
    return u


gate_lists = st.lists(
    st.one_of(
        st.builds(h, st.integers(0, 3)),
        st.builds(x, st.integers(0, 3)),
        st.lists(st.integers(0, 3), min_size=2, max_size=2, unique=True).map(lambda q: cnot(*q)),
        st.lists(st.integers(0, 3), min_size=3, max_size=3, unique=True).map(lambda q: toffoli(*q)),
        st.lists(st.integers(0, 3), min_size=2, max_size=4, unique=True).map(lambda q: mcx(q[1:], q[0])),
        st.lists(st.integers(0, 3), min_size=1, max_size=4, unique=True).map(lambda q: mcz(q[1:], q[0])),
    ),
    max_size=30,
)


@settings(max_examples=80, deadline=None)
@given(gate_lists, st.integers(0, 15))
def test_kernels_match_reference_unitary(gates, start):
    c = Circuit(4, tuple(gates))
    expected = reference_unitary(c)[:, start]
    dense = DenseState.basis(4, start).apply_circuit(c)
    sparse = SparseState.basis(4, start).apply_circuit(c)
    assert np.allclose(dense.to_dense(), expected, atol=1e-12)
    assert np.allclose(sparse.to_dense(), expected, atol=1e-12)
    assert abs(dense.norm() - 1) < 1e-9 and abs(sparse.norm() - 1) < 1e-9


@settings(max_examples=40, deadline=None)
@given(gate_lists, st.integers(0, 15))
def test_marginal_and_amplitude_respect_pending_flips(gates, start):
    c = Circuit(4, tuple(gates))
    dense = DenseState.basis(4, start).apply_circuit(c)
    full = dense.to_dense()
    probs = np.abs(full) ** 2
    assert np.allclose(dense.low_marginal(2), probs.reshape(4, 4).sum(axis=0), atol=1e-12)
    for i in range(16):
        assert abs(dense.amplitude(i) - full[i]) < 1e-12


def test_involutions():
    sv = DenseState.basis(3, 5)
    before = sv.to_dense()
    sv.apply_circuit(Circuit(3, (x(1), x(1), h(2), h(2))))
    assert np.allclose(sv.to_dense(), before, atol=1e-12)


def test_qubit_count_mismatch():
    with pytest.raises(ValueError):
        DenseState.basis(3, 0).apply_circuit(Circuit(4))


class TestInitState:
    def test_compact_psi0(self):
        lay = layout_compact(3, 2)
        sv = init_state(lay)
        index = psi0_index(lay)
        assert index == (1 << 3) | (1 << 8) | (1 << 9)
        assert sv.amplitude(index) == 1
        assert bin(index).count("1") == 3

    def test_faithful_psi0_bits(self):
        lay = layout_faithful(3, 2)
        index = psi0_index(lay)
        assert bin(index).count("1") == 7  # aux and six s qubits
        assert sorted(q for q in range(27) if index >> q & 1) == [lay.aux, *lay.s_qubits]
        assert init_state(lay, "sparse").indices.tolist() == [index]

    def test_memory_cap(self):
        with pytest.raises(MemoryCapError) as info:
            init_state(layout_faithful(3, 2))
        assert info.value.required_qubits == 27
        assert info.value.required_bytes == 16 * 2**27
        assert "27" in str(info.value)

    def test_sparse_cap_counts_superposed_qubits(self):
        init_state(layout_faithful(3, 2), "sparse", cap=4)
        with pytest.raises(MemoryCapError):
            init_state(layout_faithful(3, 2), "sparse", cap=3)


class TestHadamardLayer:
    @pytest.mark.parametrize("backend", ["dense", "sparse"])
    def test_uniform_x_and_minus_aux(self, backend):
        lay = layout_compact(3, 2)
        sv = apply_hadamard_layer(init_state(lay, backend), lay)
        marg = x_register_marginal(sv, lay)
        assert all(abs(p - 1 / 8) < 1e-12 for p in marg.values())
        base = psi0_index(lay) & ~(1 << lay.aux)
        a0 = sv.amplitude(base)
        a1 = sv.amplitude(base | 1 << lay.aux)
        assert abs(a0 - 1 / math.sqrt(16)) < 1e-12 and abs(a1 + 1 / math.sqrt(16)) < 1e-12
        aux_probs = sv.low_marginal(lay.aux + 1).reshape(2, 8).sum(axis=1)
        assert np.allclose(aux_probs, [0.5, 0.5])
        assert abs(sv.norm() - 1) < 1e-12


def _fig1_run(backend="dense"):
    g = Graph(3, [(1, 2), (2, 3)])
    lay = layout_compact(3, 2)
    sv = apply_hadamard_layer(init_state(lay, backend), lay)
    sv.apply_circuit(synth_grover_iteration(g, lay, 2))
    return g, lay, sv


class TestQueries:
    @pytest.mark.parametrize("backend", ["dense", "sparse"])
    def test_fig1_marginal(self, backend):
        g, lay, sv = _fig1_run(backend)
        marg = x_register_marginal(sv, lay)
        assert abs(marg["010"] - 0.5) < 1e-9 and abs(marg["101"] - 0.5) < 1e-9
        assert abs(sum(marg.values()) - 1) < 1e-9
        assert abs(marked_probability(sv, lay, lambda v: cut_size(g, v) == 2) - 1) < 1e-9
        assert marked_probability(sv, lay, lambda v: False) == 0.0
        assert abs(marked_probability(sv, lay, lambda v: True) - 1) < 1e-9

    def test_sampling(self):
        _, lay, sv = _fig1_run()
        hist = sample_shots(sv, lay, 1024, seed=3)
        assert set(hist.counts) <= {"010", "101"}
        assert sum(hist.counts.values()) == 1024
        assert sample_shots(sv, lay, 1024, seed=3) == hist
        one = sample_shots(sv, lay, 1, seed=9)
        assert sum(one.counts.values()) == 1 and set(one.counts) <= {"010", "101"}

    def test_histogram_json(self):
        hist = MeasurementHistogram({"010": 512, "101": 512}, 1024, 1)
        assert hist.to_json() == '{"shots": 1024, "seed": 1, "counts": {"010": 512, "101": 512}}'
        assert MeasurementHistogram.from_json(hist.to_json()) == hist

    def test_zero_shots_rejected(self):
        _, lay, sv = _fig1_run()
        with pytest.raises(ValueError):
            sample_shots(sv, lay, 0, seed=1)


class TestPermuteBasis:
    def test_counting_block_maps_basis_to_basis(self):
        g = Graph(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
        lay = layout_compact(4, 4)
        block = synth_counting_block(g, lay)
        starts = psi0_index(lay) | np.arange(16)
        idx, sign = permute_basis(starts, block)
        for s, i in zip(starts, idx):
            sv = SparseState.basis(lay.total_qubits, int(s)).apply_circuit(block)
            assert sv.indices.tolist() == [int(i)]
            assert sv.amplitude(int(i)) == 1
        assert (sign == 1).all()

    def test_rejects_hadamard(self):
        with pytest.raises(ValueError):
            permute_basis(np.array([0]), Circuit(1, (h(0),)))


def test_dense_and_sparse_agree_on_grover_runs():
    g = Graph(4, [(1, 2), (2, 3), (3, 4)])
    lay = layout_compact(4, 3)
    step = synth_grover_iteration(g, lay, 3)
    states = [apply_hadamard_layer(init_state(lay, b), lay) for b in ("dense", "sparse")]
    for _ in range(3):
        for sv in states:
            sv.apply_circuit(step)
        assert np.allclose(states[0].to_dense(), states[1].to_dense(), atol=1e-12)

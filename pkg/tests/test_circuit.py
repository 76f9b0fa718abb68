import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmaxcut.circuit import (
    Circuit,
    CircuitError,
    Gate,
    cnot,
    compact_qubit_count,
    faithful_qubit_count,
    h,
    layout_compact,
    layout_faithful,
    mcx,
    mcz,
    parse_netlist,
    resource_stats,
    toffoli,
    x,
)
from qmaxcut.graph import Graph
from qmaxcut.simulator import DenseState, SparseState
from qmaxcut.synth import synth_cfe


class TestGate:
    def test_arity(self):
        with pytest.raises(CircuitError):
            Gate("CNOT", (0, 1), 2)
        with pytest.raises(CircuitError):
            Gate("Toffoli", (0,), 2)
        with pytest.raises(CircuitError):
            Gate("MCX", (), 2)
        with pytest.raises(CircuitError):
            Gate("H", (0,), 1)
        with pytest.raises(CircuitError):
            Gate("RZ", (), 0)

    def test_collision(self):
        with pytest.raises(CircuitError):
            toffoli(0, 1, 1)
        with pytest.raises(CircuitError):
            mcx([2, 2], 0)

    def test_mcz_without_controls_is_z(self):
        assert str(mcz([], 0)) == "MCZ -> 0"


class TestAppend:
    def test_append_to_empty(self):
        c = Circuit(4).append(h(0))
        assert c.gates == (h(0),)

    def test_out_of_range(self):
        with pytest.raises(CircuitError):
            Circuit(4).append(cnot(5, 2))

    def test_is_persistent(self):
        c = Circuit(2)
        c.append(x(1))
        assert len(c) == 0


class TestInverse:
    def test_reversal(self):
        c = Circuit(2, (h(0), x(1)))
        assert c.inverse().gates == (x(1), h(0))

    def test_empty(self):
        assert Circuit(3).inverse() == Circuit(3)

    def test_cfe_uncompute_on_all_inputs(self, fig1):
        for layout in (layout_compact(3, 2), layout_faithful(3, 2)):
            block = synth_cfe(layout, fig1.edges[0])
            ident = block + block.inverse()
            for xv in range(8):
                index = xv | (1 << layout.aux) | sum(1 << q for q in layout.s_qubits)
                sv = SparseState.basis(layout.total_qubits, index).apply_circuit(ident)
                assert sv.indices.tolist() == [index]
                assert abs(sv.amplitude(index) - 1) < 1e-12


class TestResourceStats:
    def test_counts(self):
        s = resource_stats(Circuit(2, (h(0), h(1), x(0))))
        assert (s.gate_count_by_kind["H"], s.gate_count_by_kind["X"], s.total_gates) == (2, 1, 3)

    def test_empty(self):
        s = resource_stats(Circuit(1))
        assert s.total_gates == 0 and not any(s.gate_count_by_kind.values())


class TestLayout:
    def test_faithful_fig1(self):
        lay = layout_faithful(3, 2)
        assert lay.total_qubits == 27 == 3 + 1 + 18 + 5
        assert sorted(lay.z) == [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]
        assert len(lay.r) == len(lay.s) == 3

    def test_faithful_single_edge(self):
        assert layout_faithful(2, 1).total_qubits == 11

    def test_compact(self):
        assert layout_compact(3, 2).total_qubits == 15
        assert layout_compact(2, 1).total_qubits == 11
        assert len(layout_compact(3, 2).r) == 1

    def test_z_shared_between_modes(self):
        assert sorted(layout_compact(3, 2).z) == sorted(layout_faithful(3, 2).z)

    def test_register_order(self):
        lay = layout_compact(3, 2)
        assert lay.x == (0, 1, 2) and lay.aux == 3
        assert lay.r == ((4, 5, 6, 7),) and lay.s == ((8, 9),)
        assert lay.z[(1, 0)] == 10 and lay.z[(2, 2)] == 14

    @pytest.mark.parametrize("m", range(1, 11))
    def test_faithful_closed_form(self, m):
        n = 4
        lay = layout_faithful(n, m)
        assert lay.total_qubits == n + 1 + 3 * m * (m + 1) + m * (m + 3) // 2 == faithful_qubit_count(n, m)
        assert layout_compact(n, m).total_qubits == compact_qubit_count(n, m)

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 8), st.integers(1, 9), st.sampled_from(["faithful", "compact"]))
    def test_registers_partition_the_index_range(self, n, m, mode):
        lay = layout_faithful(n, m) if mode == "faithful" else layout_compact(n, m)
        regs = lay.registers()
        flat = [q for qs in regs.values() for q in qs]
        assert sorted(flat) == list(range(lay.total_qubits))
        assert len(regs["z"]) == m * (m + 3) // 2

    def test_unassigned_ancillas(self):
        lay = layout_faithful(3, 2)
        with pytest.raises(CircuitError):
            lay.predicate_ancillas(4)
        with pytest.raises(CircuitError):
            lay.z_index(3, 0)

    def test_needs_an_edge(self):
        with pytest.raises(CircuitError):
            layout_compact(3, 0)


gates_strategy = st.lists(
    st.one_of(
        st.builds(h, st.integers(0, 4)),
        st.builds(x, st.integers(0, 4)),
        st.lists(st.integers(0, 4), min_size=2, max_size=2, unique=True).map(lambda q: cnot(*q)),
        st.lists(st.integers(0, 4), min_size=3, max_size=3, unique=True).map(lambda q: toffoli(*q)),
        st.lists(st.integers(0, 4), min_size=1, max_size=5, unique=True).map(lambda q: mcz(q[1:], q[0])),
    ),
    max_size=25,
)


@settings(max_examples=50, deadline=None)
@given(gates_strategy)
def test_inverse_is_involution_and_undoes(gates):
    c = Circuit(5, tuple(gates))
    assert c.inverse().inverse() == c
    rng = np.random.default_rng(len(gates))
    psi = rng.normal(size=32) + 1j * rng.normal(size=32)
    psi /= np.linalg.norm(psi)
    sv = DenseState(psi.copy()).apply_circuit(c + c.inverse())
    assert np.allclose(sv.to_dense(), psi, atol=1e-12)


@settings(max_examples=30, deadline=None)
@given(gates_strategy)
def test_netlist_roundtrip(gates):
    c = Circuit(5, tuple(gates))
    assert parse_netlist(c.dump(), 5) == c


def test_dump_format():
    c = Circuit(4, (h(0), toffoli(0, 1, 3)))
    assert c.dump() == "H -> 0\nToffoli 0,1 -> 3\n"

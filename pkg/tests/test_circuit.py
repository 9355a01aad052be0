import random

import numpy as np
import pytest

from conftest import phase_aligned_distance, random_circuit
from qkcolor.circuit import (Circuit, Control, Gate, GateKind, QubitLayout,
                             Role, gCX, gH, gMCT, gRX, gSWAP, gX)
from qkcolor.errors import IndexOutOfRange, OverlappingOperands
from qkcolor.simulator import unitary_of


def test_gate_operand_arity_enforced():
    with pytest.raises(ValueError):
        Gate(GateKind.X, targets=(0, 1))
    with pytest.raises(ValueError):
        Gate(GateKind.CX, targets=(0,))
    with pytest.raises(ValueError):
        Gate(GateKind.SWAP, targets=(0,))
    with pytest.raises(ValueError):
        Gate(GateKind.MCT, controls=(Control(0),), targets=(1, 2))


def test_gate_angle_rules():
    with pytest.raises(ValueError):
        Gate(GateKind.X, targets=(0,), angle=1.0)
    with pytest.raises(ValueError):
        Gate(GateKind.RX, targets=(0,))
    assert gRX(0, 0.5).angle == 0.5


def test_negative_polarity_only_on_multi_controlled():
    with pytest.raises(ValueError):
        Gate(GateKind.CX, controls=(Control(0, positive=False),), targets=(1,))
    g = gMCT([(0, False), 1], 2)
    assert [c.positive for c in g.controls] == [False, True]


def test_overlapping_operands_rejected():
    with pytest.raises(OverlappingOperands):
        gCX(1, 1)
    with pytest.raises(OverlappingOperands):
        gMCT([0, 1], 1)


def test_adjoint_pairs():
    assert Gate(GateKind.S, targets=(0,)).adjoint().kind is GateKind.SDG
    assert Gate(GateKind.SDG, targets=(0,)).adjoint().kind is GateKind.S
    assert Gate(GateKind.T, targets=(0,)).adjoint().kind is GateKind.TDG
    assert Gate(GateKind.TDG, targets=(0,)).adjoint().kind is GateKind.T
    assert gRX(0, 0.7).adjoint().angle == -0.7
    assert gX(0).adjoint() == gX(0)


def test_remapped():
    g = gMCT([(2, False), 0], 1).remapped({0: 5, 1: 3, 2: 4})
    assert g.operands == (4, 5, 3)
    assert [c.positive for c in g.controls] == [False, True]


def test_circuit_bounds_checked():
    circ = Circuit(2)
    with pytest.raises(IndexOutOfRange):
        circ.append(gX(2))
    with pytest.raises(IndexOutOfRange):
        Circuit(0)
    with pytest.raises(IndexOutOfRange):
        Circuit(2, roles=[Role.DATA])


def test_compose_width_mismatch():
    with pytest.raises(IndexOutOfRange):
        Circuit(2).compose(Circuit(3))


def test_compose_inverse_is_identity():
    rng = random.Random(7)
    eye = np.eye(16)
    for _ in range(100):
        circ = random_circuit(4, rng.randint(1, 12), rng)
        u = unitary_of(circ.compose(circ.inverse()))
        assert phase_aligned_distance(u, eye) < 1e-9


def test_stats():
    circ = Circuit(4)
    circ.extend([gH(0), gCX(0, 1), gSWAP(2, 3), gMCT([0, 1], 2),
                 gMCT([0, 1, 3], 2), gX(3)])
    st = circ.stats()
    assert st.gate_count == 6
    assert st.two_qubit_count == 2
    assert st.mct_count_by_arity == {2: 1, 3: 1}
    # longest chain: h; cx; mct; mct; x
    assert st.depth == 5


def test_layout_roles_and_initials():
    layout = QubitLayout(n=2, c=2, data=range(0, 4), edge_ancilla=range(4, 5),
                         invalid_ancilla=None, valid_flags=range(5, 7),
                         output=7)
    roles = layout.roles()
    assert roles[:4] == [Role.DATA] * 4
    assert roles[4] is Role.EDGE_ANCILLA
    assert roles[5] is Role.VALID_FLAG
    assert roles[7] is Role.OUTPUT
    init = layout.initial_state()
    assert init == [0, 0, 0, 0, 1, 1, 1, 1]
    assert list(layout.vertex_qubits(1)) == [2, 3]
    assert layout.num_qubits == 8
    assert layout.num_data == 4

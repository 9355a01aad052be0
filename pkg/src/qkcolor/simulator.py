"""Dense statevector simulator used as the verification engine.

Bit convention: qubit 0 is the most significant bit of the basis-state
index, so ``format(index, f"0{q}b")`` reads off qubit values in register
order.  MCT/MCZ and negative controls are applied directly from the IR --
no lowering is required, which keeps the simulator independent of the
lowering pass it is used to check.
"""
from __future__ import annotations

import math
import os

import numpy as np

from .circuit import Circuit, Gate, GateKind, QubitLayout
from .errors import AncillaLeak, TooManyQubits

DEFAULT_CEILING = 24
UNITARY_CEILING = 12

_INV_SQRT2 = 1.0 / math.sqrt(2.0)

_FIXED_1Q = {
    GateKind.X: np.array([[0, 1], [1, 0]], dtype=complex),
    GateKind.H: np.array([[_INV_SQRT2, _INV_SQRT2], [_INV_SQRT2, -_INV_SQRT2]], dtype=complex),
    GateKind.Z: np.array([[1, 0], [0, -1]], dtype=complex),
    GateKind.S: np.array([[1, 0], [0, 1j]], dtype=complex),
    GateKind.SDG: np.array([[1, 0], [0, -1j]], dtype=complex),
    GateKind.T: np.array([[1, 0], [0, np.exp(1j * math.pi / 4)]], dtype=complex),
    GateKind.TDG: np.array([[1, 0], [0, np.exp(-1j * math.pi / 4)]], dtype=complex),
}


def qubit_ceiling() -> int:
    return int(os.environ.get("GKC_QUBIT_CEILING", DEFAULT_CEILING))


def _rotation_matrix(kind: GateKind, angle: float) -> np.ndarray:
    half = angle / 2.0
    c, s = math.cos(half), math.sin(half)
    if kind in (GateKind.RX, GateKind.CRX):
        return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
    if kind is GateKind.RY:
        return np.array([[c, -s], [s, c]], dtype=complex)
    return np.array([[np.exp(-1j * half), 0], [0, np.exp(1j * half)]], dtype=complex)


def gate_1q_matrix(gate: Gate) -> np.ndarray:
    """2x2 matrix applied to the target (controls handled separately)."""
    if gate.kind in _FIXED_1Q:
        return _FIXED_1Q[gate.kind]
    if gate.kind in (GateKind.RX, GateKind.RY, GateKind.RZ, GateKind.CRX):
        return _rotation_matrix(gate.kind, gate.angle)
    if gate.kind is GateKind.CX or gate.kind is GateKind.MCT:
        return _FIXED_1Q[GateKind.X]
    if gate.kind is GateKind.CZ or gate.kind is GateKind.MCZ:
        return _FIXED_1Q[GateKind.Z]
    raise ValueError(f"no 1q matrix for {gate.kind}")


class Statevector:
    """Unit-norm complex amplitude array over 2**q basis states."""

    def __init__(self, num_qubits: int, amplitudes: np.ndarray | None = None):
        if num_qubits > qubit_ceiling():
            raise TooManyQubits(
                f"{num_qubits} qubits exceeds ceiling {qubit_ceiling()}")
        self.num_qubits = num_qubits
        if amplitudes is None:
            amplitudes = np.zeros(2 ** num_qubits, dtype=complex)
            amplitudes[0] = 1.0
        self.amplitudes = np.asarray(amplitudes, dtype=complex)

    @classmethod
    def from_basis(cls, num_qubits: int, bits) -> "Statevector":
        """Basis state from per-qubit bit values (qubit 0 first)."""
        index = 0
        for q, b in enumerate(bits):
            if b:
                index |= 1 << (num_qubits - 1 - q)
        amps = np.zeros(2 ** num_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    def norm(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def bitstring(self, index: int) -> str:
        return format(index, f"0{self.num_qubits}b")


def _apply_gate(amps: np.ndarray, num_qubits: int, gate: Gate) -> None:
    """Apply one gate in place.  ``amps`` has shape (2**q,) or (2**q, batch)."""
    dim = 2 ** num_qubits
    idx = np.arange(dim)
    ok = np.ones(dim, dtype=bool)
    for ctl in gate.controls:
        bit = (idx >> (num_qubits - 1 - ctl.qubit)) & 1
        ok &= (bit == 1) if ctl.positive else (bit == 0)

    if gate.kind is GateKind.SWAP:
        a, b = gate.targets
        mask_a = 1 << (num_qubits - 1 - a)
        mask_b = 1 << (num_qubits - 1 - b)
        sel = ok & ((idx & mask_a) != 0) & ((idx & mask_b) == 0)
        i10 = idx[sel]
        i01 = (i10 ^ mask_a) | mask_b
        tmp = amps[i10].copy()
        amps[i10] = amps[i01]
        amps[i01] = tmp
        return

    m = gate_1q_matrix(gate)
    t = gate.targets[0]
    mask_t = 1 << (num_qubits - 1 - t)
    sel = ok & ((idx & mask_t) == 0)
    i0 = idx[sel]
    i1 = i0 | mask_t
    a0 = amps[i0].copy()
    a1 = amps[i1].copy()
    amps[i0] = m[0, 0] * a0 + m[0, 1] * a1
    amps[i1] = m[1, 0] * a0 + m[1, 1] * a1


def run(circuit: Circuit, initial=None) -> Statevector:
    """Simulate the circuit.

    ``initial`` may be a basis-state index, a bit sequence, a Statevector,
    or None (use the circuit's declared initial_state).
    """
    q = circuit.num_qubits
    if q > qubit_ceiling():
        raise TooManyQubits(f"{q} qubits exceeds ceiling {qubit_ceiling()}")
    if initial is None:
        state = Statevector.from_basis(q, circuit.initial_state)
    elif isinstance(initial, Statevector):
        state = Statevector(q, initial.amplitudes.copy())
    elif isinstance(initial, int):
        amps = np.zeros(2 ** q, dtype=complex)
        amps[initial] = 1.0
        state = Statevector(q, amps)
    else:
        state = Statevector.from_basis(q, initial)
    for gate in circuit.gates:
        _apply_gate(state.amplitudes, q, gate)
    return state


def run_batch(circuit: Circuit, columns: np.ndarray) -> np.ndarray:
    """Simulate many initial vectors at once; columns has shape (2**q, b)."""
    q = circuit.num_qubits
    if q > qubit_ceiling():
        raise TooManyQubits(f"{q} qubits exceeds ceiling {qubit_ceiling()}")
    amps = np.array(columns, dtype=complex)
    for gate in circuit.gates:
        _apply_gate(amps, q, gate)
    return amps


def probabilities(state: Statevector, qubit_subset=None) -> dict[str, float]:
    """Marginal Born-rule distribution over the given qubits (register
    order preserved)."""
    q = state.num_qubits
    if qubit_subset is None:
        qubit_subset = list(range(q))
    subset = list(qubit_subset)
    probs = np.abs(state.amplitudes.reshape([2] * q)) ** 2
    drop = tuple(ax for ax in range(q) if ax not in subset)
    marginal = probs.sum(axis=drop) if drop else probs
    # axes after summing are the kept qubits in ascending order
    kept_sorted = sorted(subset)
    order = [kept_sorted.index(s) for s in subset]
    marginal = np.transpose(marginal, order).reshape(-1)
    width = len(subset)
    return {format(i, f"0{width}b"): float(p) for i, p in enumerate(marginal)}


def unitary_of(circuit: Circuit) -> np.ndarray:
    """Dense matrix of the circuit, one simulated basis column at a time."""
    q = circuit.num_qubits
    if q > UNITARY_CEILING:
        raise TooManyQubits(f"unitary_of limited to {UNITARY_CEILING} qubits")
    return run_batch(circuit, np.eye(2 ** q, dtype=complex))


def phase_pattern(oracle: Circuit, layout: QubitLayout,
                  tol: float = 1e-9,
                  allow_global_phase: bool = False) -> set[str]:
    """Data basis strings whose phase the oracle flips.

    For each data string x the initial state is |x> on data qubits, the
    layout's declared ancilla initials, and |-> on the output qubit.  The
    oracle must act diagonally: any amplitude outside the prepared
    (x, ancilla, output) pair is an ancilla leak.

    Lowered circuits acquire a circuit-wide global phase from the
    Rx-based multi-controlled synthesis.  ``allow_global_phase=True``
    divides it out, anchored so the all-zeros data string counts as
    unflipped; use it only to compare two patterns relative to each
    other.

    Registers small enough for a full per-basis batch are checked
    exactly; larger ones are checked with two superposition probes
    (uniform plus seeded distinct weights), which reads off the same
    per-string signs with two simulations instead of 2**m.
    """
    q = oracle.num_qubits
    m = layout.num_data
    dim = 2 ** q
    n_data = 2 ** m

    anc_bits = layout.initial_state()
    base = 0
    for qubit, bit in enumerate(anc_bits):
        if bit and qubit not in layout.data and qubit != layout.output:
            base |= 1 << (q - 1 - qubit)
    out_mask = 1 << (q - 1 - layout.output)

    data_shifts = [q - 1 - dq for dq in layout.data]

    def data_index(x: int) -> int:
        s = 0
        for pos, shift in enumerate(data_shifts):
            if (x >> (m - 1 - pos)) & 1:
                s |= 1 << shift
        return s

    rows0 = np.empty(n_data, dtype=np.int64)
    for x in range(n_data):
        rows0[x] = base | data_index(x)

    if dim * n_data <= _EXACT_PATTERN_LIMIT:
        signs = _pattern_exact(oracle, dim, rows0, out_mask, tol,
                               allow_global_phase)
    else:
        signs = _pattern_probed(oracle, dim, rows0, out_mask, tol,
                                allow_global_phase)
    return {format(x, f"0{m}b") for x in range(n_data) if signs[x] < 0}


_EXACT_PATTERN_LIMIT = 2 ** 20


def _pattern_exact(oracle, dim, rows0, out_mask, tol, allow_global_phase):
    """One basis column per data string."""
    n_data = len(rows0)
    cols = np.zeros((dim, n_data), dtype=complex)
    for x in range(n_data):
        cols[rows0[x], x] = _INV_SQRT2    # output |0> component of |->
        cols[rows0[x] | out_mask, x] = -_INV_SQRT2
    out = run_batch(oracle, cols)

    if allow_global_phase:
        ref = out[rows0[0], 0] / _INV_SQRT2
        if abs(abs(ref) - 1.0) > tol:
            raise AncillaLeak("oracle output is not a pure phase on x=0")
        out = out / ref

    signs = np.empty(n_data, dtype=np.int8)
    for x in range(n_data):
        r0 = rows0[x]
        a0 = out[r0, x]
        a1 = out[r0 | out_mask, x]
        residual = out[:, x].copy()
        residual[r0] = 0.0
        residual[r0 | out_mask] = 0.0
        if np.max(np.abs(residual)) > tol:
            raise AncillaLeak(
                f"oracle leaves support outside the prepared subspace for x={x}")
        if abs(a0 - _INV_SQRT2) < tol and abs(a1 + _INV_SQRT2) < tol:
            signs[x] = 1
        elif abs(a0 + _INV_SQRT2) < tol and abs(a1 - _INV_SQRT2) < tol:
            signs[x] = -1
        else:
            raise AncillaLeak(f"oracle is not a +/-1 phase on data string x={x}")
    return signs


def _pattern_probed(oracle, dim, rows0, out_mask, tol, allow_global_phase):
    """Two superposition probes instead of 2**m basis columns.

    Column 0 weights every data string uniformly; column 1 uses seeded,
    pairwise-distinct weights so a hidden data permutation cannot mimic a
    diagonal phase action.  Both must report the same sign per string.
    """
    n_data = len(rows0)
    rng = np.random.default_rng(0x6b636f6c)
    w = (0.5 + rng.random(n_data)) * np.exp(2j * np.pi * rng.random(n_data))
    w /= np.linalg.norm(w)
    u = np.full(n_data, 1.0 / math.sqrt(n_data))

    cols = np.zeros((dim, 2), dtype=complex)
    rows1 = rows0 | out_mask
    cols[rows0, 0] = u * _INV_SQRT2
    cols[rows1, 0] = -u * _INV_SQRT2
    cols[rows0, 1] = w * _INV_SQRT2
    cols[rows1, 1] = -w * _INV_SQRT2
    out = run_batch(oracle, cols)

    if allow_global_phase:
        ref = out[rows0[0], 0] / (u[0] * _INV_SQRT2)
        if abs(abs(ref) - 1.0) > tol:
            raise AncillaLeak("oracle output is not a pure phase on x=0")
        out = out / ref

    support = np.zeros(dim, dtype=bool)
    support[rows0] = True
    support[rows1] = True
    leak = np.max(np.abs(out[~support, :])) if dim > 2 * n_data else 0.0
    if leak > tol:
        raise AncillaLeak("oracle leaves support outside the prepared subspace")

    signs = np.empty(n_data, dtype=np.int8)
    for x in range(n_data):
        expect0 = u[x] * _INV_SQRT2
        expect1 = w[x] * _INV_SQRT2
        got0 = out[rows0[x], 0]
        got1 = out[rows0[x], 1]
        if (abs(got0 - expect0) < tol and abs(got1 - expect1) < tol
                and abs(out[rows1[x], 0] + expect0) < tol
                and abs(out[rows1[x], 1] + expect1) < tol):
            signs[x] = 1
        elif (abs(got0 + expect0) < tol and abs(got1 + expect1) < tol
                and abs(out[rows1[x], 0] - expect0) < tol
                and abs(out[rows1[x], 1] - expect1) < tol):
            signs[x] = -1
        else:
            raise AncillaLeak(f"oracle is not a +/-1 phase on data string x={x}")
    return signs

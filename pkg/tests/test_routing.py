import random

import pytest

from conftest import random_circuit, routed_max_error
from qkcolor.circuit import Circuit, gCX, gH, gMCT
from qkcolor.errors import (Disconnected, IndexOutOfRange,
                            TooFewPhysicalQubits, UnloweredGate)
from qkcolor.routing import (CouplingGraph, grid_coupling, line_coupling,
                             parse_coupling, ring_coupling, sabre_route,
                             verify_constraints)

# Gate pool without MCT/MCZ/negative controls: routing input must be lowered.
LOWERED_POOL = ("x", "h", "z", "s", "t", "sdg", "tdg", "rx", "ry", "rz",
                "cx", "cz", "crx", "swap")


def test_coupling_constructors():
    line = line_coupling(4)
    assert line.coupled(1, 2) and not line.coupled(0, 3)
    assert line.distance[0][3] == 3

    ring = ring_coupling(5)
    assert ring.coupled(4, 0)
    assert ring.distance[0][3] == 2

    grid = grid_coupling(2, 3)
    assert grid.num_physical == 6
    assert grid.coupled(0, 3) and grid.coupled(1, 2)
    assert grid.distance[0][5] == 3


def test_coupling_validation():
    with pytest.raises(IndexOutOfRange):
        CouplingGraph.from_pairs(2, [(0, 2)])
    with pytest.raises(IndexOutOfRange):
        CouplingGraph.from_pairs(2, [(1, 1)])
    with pytest.raises(Disconnected):
        CouplingGraph.from_pairs(4, [(0, 1), (2, 3)])


def test_parse_coupling():
    cg = parse_coupling("# line of three\n3\n0 1\n1 2  # tail\n")
    assert cg.num_physical == 3
    assert cg.pairs == frozenset({(0, 1), (1, 2)})
    with pytest.raises(IndexOutOfRange):
        parse_coupling("0 1\n1 2\n")  # missing count line


def test_verify_constraints():
    circ = Circuit(3)
    circ.append(gCX(0, 2))
    assert not verify_constraints(circ, line_coupling(3))
    assert verify_constraints(circ, ring_coupling(3))


def test_distant_cx_costs_at_most_one_swap():
    # the reverse traversal may find a mapping needing no swap at all
    circ = Circuit(3)
    circ.append(gCX(0, 2))
    result = sabre_route(circ, line_coupling(3))
    assert result.swap_count <= 1
    assert verify_constraints(result.routed, line_coupling(3))
    assert routed_max_error(circ, result, 3) < 1e-12


def test_adjacent_circuit_needs_no_swaps():
    circ = Circuit(3)
    circ.extend([gH(0), gCX(0, 1), gCX(1, 2)])
    result = sabre_route(circ, line_coupling(3))
    assert result.swap_count == 0
    assert result.initial.logical_to_physical == result.final.logical_to_physical


def test_rejects_unlowered_input():
    circ = Circuit(3)
    circ.append(gMCT([0, 1], 2))
    with pytest.raises(UnloweredGate):
        sabre_route(circ, line_coupling(3))
    neg = Circuit(2)
    neg.append(gMCT([(0, False)], 1))
    with pytest.raises(UnloweredGate):
        sabre_route(neg, line_coupling(2))


def test_rejects_small_device():
    with pytest.raises(TooFewPhysicalQubits):
        sabre_route(Circuit(4), line_coupling(3))


def test_determinism_per_seed():
    rng = random.Random(99)
    circ = random_circuit(5, 30, rng, pool=LOWERED_POOL)
    coupling = ring_coupling(6)
    first = sabre_route(circ, coupling, seed=13)
    second = sabre_route(circ, coupling, seed=13)
    assert first.routed.gates == second.routed.gates
    assert first.initial == second.initial
    assert first.final == second.final


def test_extra_physical_qubits_stay_idle():
    circ = Circuit(2)
    circ.append(gCX(0, 1))
    result = sabre_route(circ, line_coupling(5))
    assert result.routed.num_qubits == 5
    assert verify_constraints(result.routed, line_coupling(5))
    assert routed_max_error(circ, result, 5) < 1e-12


@pytest.mark.parametrize("seed", range(5))
def test_random_circuits_route_correctly(seed):
    rng = random.Random(1000 + seed)
    width = rng.randint(4, 7)
    circ = random_circuit(width, 25, rng, pool=LOWERED_POOL)
    for coupling in (line_coupling(width), ring_coupling(width),
                     grid_coupling(2, (width + 1) // 2)):
        result = sabre_route(circ, coupling, seed=seed)
        assert verify_constraints(result.routed, coupling)
        assert routed_max_error(circ, result, coupling.num_physical) < 1e-9

"""Diffusion synthesis, iteration count, and full Grover assembly."""
from __future__ import annotations

import math
from dataclasses import dataclass

from . import classical
from .circuit import Circuit, Gate, GateKind, Control, gH, gX
from .errors import NoSolutions
from .graphs import Instance
from .oracle import OraclePlan, build_oracle, plan_layout


@dataclass(frozen=True)
class GroverJob:
    oracle: Circuit
    plan: OraclePlan
    data_width: int
    iterations: int
    solution_count: int | None


def build_diffusion(data_width: int) -> Circuit:
    """Inversion about the average on ``data_width`` qubits.

    H then X on every qubit, a (m-1)-controlled Z on the last qubit, then
    the X and H layers again.  Equals 2|s><s| - I up to global phase.
    """
    if data_width < 1:
        raise ValueError("diffusion needs at least one qubit")
    m = data_width
    circ = Circuit(m)
    for q in range(m):
        circ.append(gH(q))
    for q in range(m):
        circ.append(gX(q))
    circ.append(Gate(GateKind.MCZ,
                     controls=tuple(Control(q) for q in range(m - 1)),
                     targets=(m - 1,)))
    for q in range(m):
        circ.append(gX(q))
    for q in range(m):
        circ.append(gH(q))
    return circ


def optimal_iterations(N: int, M: int) -> int:
    """floor((pi/4) * sqrt(N/M)); the floor governs even when M >= N/2."""
    if M == 0:
        raise NoSolutions("no marked states: graph is unsatisfiable at this k")
    if not (1 <= M <= N):
        raise ValueError(f"need 1 <= M <= N, got M={M}, N={N}")
    return int(math.floor((math.pi / 4.0) * math.sqrt(N / M)))


def success_probability(N: int, M: int, t: int) -> float:
    """Closed-form Grover success: sin^2((2t+1) * asin(sqrt(M/N)))."""
    theta = math.asin(math.sqrt(M / N))
    return math.sin((2 * t + 1) * theta) ** 2


def make_job(instance: Instance, mode: str = "strict",
             iterations: int | None = None) -> GroverJob:
    """Resolve the oracle, layout and iteration count for an instance.

    M defaults to the brute-force solution count; an explicit iteration
    override skips that lookup only if provided.
    """
    if iterations is not None and iterations < 0:
        raise ValueError(f"iteration count must be >= 0, got {iterations}")
    plan = plan_layout(instance, mode)
    oracle = build_oracle(instance, mode, plan)
    m = plan.layout.num_data
    N = 2 ** m
    M: int | None = None
    if iterations is None:
        M = len(classical.solutions(instance))
        iterations = optimal_iterations(N, M)
    return GroverJob(oracle=oracle, plan=plan, data_width=m,
                     iterations=iterations, solution_count=M)


def build_grover(instance: Instance, mode: str = "strict",
                 iterations: int | None = None) -> Circuit:
    job = make_job(instance, mode, iterations)
    return assemble(job)


def assemble(job: GroverJob) -> Circuit:
    """State preparation followed by t repetitions of oracle + diffusion.

    The register starts in |0...0>; ancilla/output qubits declared |1> by
    the layout are set with explicit X gates so the circuit is
    self-contained on hardware and in simulation alike.
    """
    layout = job.plan.layout
    circ = Circuit(layout.num_qubits, roles=layout.roles(),
                   initial_state=[0] * layout.num_qubits)
    for q, bit in enumerate(layout.initial_state()):
        if bit:
            circ.append(gX(q))
    for q in layout.data:
        circ.append(gH(q))
    circ.append(gH(layout.output))

    diffusion = build_diffusion(job.data_width)
    for _ in range(job.iterations):
        circ.extend(job.oracle.gates)
        circ.extend(diffusion.gates)  # data qubits are indices 0..m-1
    return circ

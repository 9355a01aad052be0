"""Brute-force coloring ground truth.

Fixes the bit-ordering convention for the whole pipeline: vertex 0's
color bits come first in every data bitstring, most significant bit of
each color first.
"""
from __future__ import annotations

from itertools import product

from .errors import TooLarge
from .graphs import Graph, Instance

ENUMERATION_CEILING = 24  # data qubits


def is_proper(graph: Graph, assignment, k: int) -> bool:
    """True iff every color is < k and every edge is bichromatic."""
    colors = list(assignment)
    if any(c >= k for c in colors):
        return False
    return all(colors[i] != colors[j] for i, j in graph.edges)


def encode_assignment(assignment, c: int) -> str:
    """Data bitstring for a color assignment (vertex 0 first, MSB first)."""
    return "".join(format(color, f"0{c}b") for color in assignment)


def decode_bitstring(bits: str, n: int, c: int) -> list[int]:
    return [int(bits[v * c:(v + 1) * c], 2) for v in range(n)]


def solutions(instance: Instance) -> set[str]:
    """All data bitstrings encoding proper k-colorings; M = len(result)."""
    n, c = instance.graph.n, instance.c
    if n * c > ENUMERATION_CEILING:
        raise TooLarge(f"{n * c} data qubits exceeds enumeration ceiling")
    out = set()
    for assignment in product(range(2 ** c), repeat=n):
        if is_proper(instance.graph, assignment, instance.k):
            out.add(encode_assignment(assignment, c))
    return out

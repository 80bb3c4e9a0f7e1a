"""Mapping quantum circuits onto multi-core quantum architectures."""

from .circuit import Circuit, Gate, TimeslicedCircuit, lookahead_weights, slice_circuit
from .mappers import Architecture, map_fgp_roee, map_hqa, map_naive

__version__ = "0.1.0"

__all__ = [
    "Architecture",
    "Circuit",
    "Gate",
    "TimeslicedCircuit",
    "lookahead_weights",
    "map_fgp_roee",
    "map_hqa",
    "map_naive",
    "slice_circuit",
]

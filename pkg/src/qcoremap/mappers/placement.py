"""Initial qubit placement from the circuit's aggregate interaction graph."""

from __future__ import annotations

import numpy as np

from ..circuit import TimeslicedCircuit, aggregate_interactions
from ..partition import Partition, oee_partition
from .base import Architecture


def oee_partition_for(tsc: TimeslicedCircuit, arch: Architecture, rng: np.random.Generator) -> Partition:
    """OEE-refined balanced partition of all physical slots.

    Slots beyond the circuit's qubits act as isolated phantom nodes, so the
    partition stays balanced when the architecture has spare capacity.
    """
    start = Partition.random(arch.slots, arch.n_cores, rng)
    return oee_partition(aggregate_interactions(tsc), arch.n_cores, start)


def oee_placement(tsc: TimeslicedCircuit, arch: Architecture, rng: np.random.Generator) -> list[int]:
    return list(oee_partition_for(tsc, arch, rng).assignment[: tsc.num_qubits])

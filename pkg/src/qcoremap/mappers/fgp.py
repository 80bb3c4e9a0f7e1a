"""Fine-grained partitioning with relaxed OEE (FGP-rOEE).

Every slice is re-partitioned with rOEE, starting from the previous slice's
partition and using that slice's look-ahead graph.
"""

from __future__ import annotations

import time

import numpy as np

from ..circuit import DEFAULT_SIGMA, InteractionGraph, TimeslicedCircuit, future_weights
from ..partition import DEFAULT_MAX_ROUNDS, Partition, RoeeValidityError, roee_partition
from .base import (
    Architecture,
    Assignment,
    AssignmentSequence,
    MappingResult,
    count_comms,
    fit_slices,
    repair,
)
from .placement import oee_partition_for


def map_fgp_roee(
    tsc: TimeslicedCircuit,
    arch: Architecture,
    sigma: int | None = DEFAULT_SIGMA,
    seed: int = 0,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> MappingResult:
    """Map with FGP-rOEE.

    Unused physical slots are filled with phantom qubits so the partition
    can stay exactly balanced; phantoms never appear in the result.  A slice
    on which rOEE cannot reach validity is fixed with the greedy repair and
    counted in ``repairs``.
    """
    arch.check_fits(tsc.num_qubits)
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    tsc = fit_slices(tsc, arch)
    q, k = tsc.num_qubits, arch.n_cores
    part = oee_partition_for(tsc, arch, rng)
    pairs_per_slice = tsc.slice_pairs()
    per_slice = []
    repairs = 0
    for t, s in enumerate(tsc):
        graph = InteractionGraph(
            arch.slots, future_weights(pairs_per_slice, t, sigma), frozenset(pairs_per_slice[t])
        )
        try:
            part = roee_partition(graph, k, part, max_rounds)
        except RoeeValidityError:
            repairs += 1
            fixed = repair(part.assignment, s.pairs, arch)
            part = Partition(tuple(fixed), k, arch.capacity)
        per_slice.append(Assignment(part.assignment[:q]))

    seq = AssignmentSequence(tuple(per_slice))
    elapsed = time.perf_counter() - start
    return MappingResult(seq, count_comms(seq), elapsed, "fgp-roee", seed, repairs, tsc)

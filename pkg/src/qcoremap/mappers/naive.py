"""Baseline mapper: fix each unfeasible gate by swapping with a random qubit."""

from __future__ import annotations

import time
from typing import Sequence

import numpy as np

from ..circuit import TimeslicedCircuit
from .base import (
    Architecture,
    Assignment,
    AssignmentSequence,
    MappingResult,
    check_placement,
    count_comms,
    fit_slices,
    random_placement,
    repair,
)


def map_naive(
    tsc: TimeslicedCircuit,
    arch: Architecture,
    seed: int = 0,
    initial: Sequence[int] | None = None,
) -> MappingResult:
    """Random initial placement, then per unfeasible gate ``(qA, qB)``:
    send ``qB`` to ``qA``'s core and a random other resident of that core
    back to ``qB``'s core.

    The displaced qubit is never ``qA`` nor a qubit already paired up
    earlier in the same slice.  If ``qA``'s core has an empty slot no qubit
    is displaced.  ``initial`` overrides the random starting placement.
    """
    arch.check_fits(tsc.num_qubits)
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    tsc = fit_slices(tsc, arch)
    if initial is None:
        core = random_placement(tsc.num_qubits, arch, rng)
    else:
        core = check_placement(initial, tsc.num_qubits, arch)
    members: list[set[int]] = [set() for _ in range(arch.n_cores)]
    for q, c in enumerate(core):
        members[c].add(q)

    def move(q: int, dst: int) -> None:
        members[core[q]].discard(q)
        members[dst].add(q)
        core[q] = dst

    per_slice = []
    repairs = 0
    for s in tsc:
        before = list(core)
        settled: set[int] = set()
        stuck = False
        for g in s.gates:
            if not g.is_two_qubit:
                continue
            a, b = g.qubits
            ca, cb = core[a], core[b]
            if ca != cb:
                if len(members[ca]) < arch.capacity:
                    move(b, ca)
                else:
                    pool = sorted(members[ca] - settled - {a})
                    if not pool:
                        stuck = True
                        break
                    aux = pool[int(rng.integers(len(pool)))]
                    move(aux, cb)
                    move(b, ca)
            settled.update((a, b))
        if stuck:
            repairs += 1
            core[:] = repair(before, s.pairs, arch)
            for m in members:
                m.clear()
            for q, c in enumerate(core):
                members[c].add(q)
        per_slice.append(Assignment(tuple(core)))

    seq = AssignmentSequence(tuple(per_slice))
    elapsed = time.perf_counter() - start
    return MappingResult(seq, count_comms(seq), elapsed, "naive", seed, repairs, tsc)

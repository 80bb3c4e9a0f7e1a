"""Architecture model, assignment containers and shared mapper utilities."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from ..circuit import Gate, Timeslice, TimeslicedCircuit


class MappingError(ValueError):
    pass


@dataclass(frozen=True)
class Architecture:
    """``n_cores`` all-to-all connected cores of ``capacity`` qubits each."""

    n_cores: int
    capacity: int

    def __post_init__(self) -> None:
        if self.n_cores < 1 or self.capacity < 1:
            raise MappingError("n_cores and capacity must be >= 1")

    @property
    def slots(self) -> int:
        return self.n_cores * self.capacity

    @property
    def pair_capacity(self) -> int:
        """Most two-qubit gates a single slice can hold."""
        return self.n_cores * (self.capacity // 2)

    def check_fits(self, num_qubits: int) -> None:
        if num_qubits > self.slots:
            raise MappingError(
                f"{num_qubits} qubits do not fit {self.n_cores} cores x {self.capacity}"
            )


@dataclass(frozen=True)
class Assignment:
    core_of: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "core_of", tuple(int(c) for c in self.core_of))

    def __iter__(self) -> Iterator[int]:
        return iter(self.core_of)

    def __len__(self) -> int:
        return len(self.core_of)

    def __getitem__(self, qubit: int) -> int:
        return self.core_of[qubit]

    def occupancy(self, n_cores: int) -> list[int]:
        counts = [0] * n_cores
        for c in self.core_of:
            counts[c] += 1
        return counts


@dataclass(frozen=True)
class AssignmentSequence:
    per_slice: tuple[Assignment, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "per_slice", tuple(self.per_slice))

    def __iter__(self) -> Iterator[Assignment]:
        return iter(self.per_slice)

    def __len__(self) -> int:
        return len(self.per_slice)

    def __getitem__(self, t: int) -> Assignment:
        return self.per_slice[t]


@dataclass(frozen=True)
class MappingResult:
    sequence: AssignmentSequence
    nonlocal_comms: int
    wall_time: float
    algorithm: str
    seed: int
    repairs: int = 0
    # slices actually mapped; differs from the input only if an
    # over-full slice had to be split to fit the architecture
    circuit: TimeslicedCircuit | None = field(default=None, compare=False, repr=False)


def is_valid(slice_: Timeslice, assignment: Assignment, arch: Architecture) -> bool:
    """Capacity respected and every two-qubit gate's operands share a core."""
    counts = [0] * arch.n_cores
    for c in assignment.core_of:
        if not 0 <= c < arch.n_cores:
            return False
        counts[c] += 1
    if max(counts, default=0) > arch.capacity:
        return False
    return all(assignment[a] == assignment[b] for a, b in slice_.pairs)


def count_comms(seq: AssignmentSequence) -> int:
    """Qubit relocations between consecutive slices."""
    total = 0
    for prev, cur in zip(seq.per_slice, seq.per_slice[1:]):
        total += sum(1 for x, y in zip(prev.core_of, cur.core_of) if x != y)
    return total


def fit_slices(tsc: TimeslicedCircuit, arch: Architecture) -> TimeslicedCircuit:
    """Split slices with more two-qubit gates than the architecture can co-locate.

    Only odd capacities can hit this.  Gates of one slice touch disjoint
    qubits, so any split keeps per-qubit order.
    """
    limit = arch.pair_capacity
    if limit < 1 and any(s.pairs for s in tsc):
        raise MappingError("capacity 1 cores cannot host two-qubit gates")
    if all(len(s.pairs) <= limit for s in tsc):
        return tsc
    groups: list[list[Gate]] = []
    for s in tsc:
        chunks: list[list[Gate]] = [[]]
        used = 0
        for g in s.gates:
            if g.is_two_qubit:
                if used == limit:
                    chunks.append([])
                    used = 0
                used += 1
            chunks[-1].append(g)
        groups.extend(chunks)
    return tsc.with_slices(groups)


def random_placement(num_qubits: int, arch: Architecture, rng: np.random.Generator) -> list[int]:
    """Uniformly random qubit placement over the architecture's physical slots."""
    slots = rng.permutation(arch.slots)[:num_qubits]
    return [int(s) // arch.capacity for s in slots]


def check_placement(core_of: Sequence[int], num_qubits: int, arch: Architecture) -> list[int]:
    core = [int(c) for c in core_of]
    if len(core) != num_qubits:
        raise MappingError(f"placement covers {len(core)} qubits, circuit has {num_qubits}")
    if any(not 0 <= c < arch.n_cores for c in core):
        raise MappingError("placement references a core outside the architecture")
    if max(Assignment(tuple(core)).occupancy(arch.n_cores), default=0) > arch.capacity:
        raise MappingError("placement exceeds core capacity")
    return core


def repair(
    core_of: Sequence[int],
    pairs: Sequence[tuple[int, int]],
    arch: Architecture,
) -> list[int]:
    """Greedy fallback producing a valid assignment for one slice.

    Keeps co-located pairs in place, moves each split pair into a core with
    room (preferring one already holding an operand), and evicts
    non-interacting qubits only when no core has two free slots.  Succeeds
    whenever the slice has at most ``arch.pair_capacity`` pairs.
    """
    core = list(core_of)
    n_cores, cap = arch.n_cores, arch.capacity
    if len(pairs) > arch.pair_capacity:
        raise MappingError("slice holds more pairs than the architecture can co-locate")
    locked: set[int] = set()
    split = []
    for a, b in pairs:
        if core[a] == core[b]:
            locked.update((a, b))
        else:
            split.append((a, b))
    origin = {x: core[x] for pair in split for x in pair}
    for x in origin:
        core[x] = -1
    members: list[list[int]] = [[] for _ in range(n_cores)]
    for x, c in enumerate(core):
        if c >= 0:
            members[c].append(x)
    interacting = {x for pair in pairs for x in pair}
    homeless: list[int] = []
    for a, b in split:
        free = [cap - len(m) for m in members]
        singles = [[x for x in m if x not in interacting and x not in locked] for m in members]

        def rank(c: int) -> tuple[int, int]:
            home = origin[a] == c or origin[b] == c
            return (0 if free[c] >= 2 else 1, 0 if home else 1)

        candidates = [c for c in range(n_cores) if free[c] + len(singles[c]) >= 2]
        target = min(candidates, key=lambda c: (rank(c), c))
        for _ in range(max(0, 2 - free[target])):
            x = singles[target].pop(0)
            members[target].remove(x)
            core[x] = -1
            homeless.append(x)
        for x in (a, b):
            core[x] = target
            members[target].append(x)
            locked.add(x)
    for x in homeless:
        target = min(c for c in range(n_cores) if len(members[c]) < cap)
        core[x] = target
        members[target].append(x)
    return core

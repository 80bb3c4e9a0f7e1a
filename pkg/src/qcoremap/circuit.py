"""Circuit IR, timeslicing and interaction graphs.

A :class:`Circuit` is an ordered list of one- and two-qubit gates over
virtual qubits.  :func:`slice_circuit` layers it into timeslices (sets of
gates that touch disjoint qubits) which are the unit every mapper works on.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator

ONE_QUBIT_GATES = frozenset({"h", "x", "y", "z", "s", "sdg", "t", "tdg", "rx", "ry", "rz", "u1"})
TWO_QUBIT_GATES = frozenset({"cx", "cz", "swap", "cp", "cu1"})
PARAM_GATES = frozenset({"rx", "ry", "rz", "u1", "cp", "cu1"})

DEFAULT_SIGMA = 20


class CircuitError(ValueError):
    """Raised when a gate or circuit violates its structural invariants."""


def gate_arity(kind: str) -> int:
    if kind in ONE_QUBIT_GATES:
        return 1
    if kind in TWO_QUBIT_GATES:
        return 2
    raise CircuitError(f"unknown gate kind {kind!r}")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    param: float | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = gate_arity(self.kind)
        if len(self.qubits) != arity:
            raise CircuitError(f"{self.kind} takes {arity} qubit(s), got {len(self.qubits)}")
        if len(set(self.qubits)) != len(self.qubits):
            raise CircuitError(f"duplicate qubit in {self.kind}{self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise CircuitError(f"negative qubit index in {self.kind}{self.qubits}")
        if self.kind in PARAM_GATES:
            if self.param is None:
                raise CircuitError(f"{self.kind} requires an angle")
            object.__setattr__(self, "param", float(self.param))
        elif self.param is not None:
            raise CircuitError(f"{self.kind} takes no angle")

    @property
    def is_two_qubit(self) -> bool:
        return len(self.qubits) == 2

    @property
    def pair(self) -> tuple[int, int]:
        """Operands as a sorted pair; only meaningful for two-qubit gates."""
        a, b = self.qubits
        return (a, b) if a < b else (b, a)

    def __repr__(self) -> str:
        args = ",".join(map(str, self.qubits))
        if self.param is None:
            return f"{self.kind.upper()}({args})"
        return f"{self.kind.upper()}[{self.param:.6g}]({args})"


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over ``num_qubits`` virtual qubits.

    ``barriers`` holds gate positions that are preceded by a barrier; the
    slicer never lets a gate at or after such a position share a slice with
    a gate before it.
    """

    num_qubits: int
    gates: tuple[Gate, ...] = ()
    barriers: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "barriers", tuple(sorted(set(self.barriers))))
        if self.num_qubits < 0:
            raise CircuitError("num_qubits must be non-negative")
        for pos, gate in enumerate(self.gates):
            if max(gate.qubits) >= self.num_qubits:
                raise CircuitError(
                    f"gate {pos} {gate!r} references qubit >= num_qubits={self.num_qubits}"
                )
        if self.barriers and not 0 <= self.barriers[0] <= self.barriers[-1] <= len(self.gates):
            raise CircuitError("barrier position outside the gate list")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    @property
    def two_qubit_gates(self) -> list[Gate]:
        return [g for g in self.gates if g.is_two_qubit]


@dataclass(frozen=True)
class Timeslice:
    index: int
    gates: tuple[Gate, ...]

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        """Sorted operand pairs of the two-qubit gates, in program order."""
        return [g.pair for g in self.gates if g.is_two_qubit]

    @property
    def qubits(self) -> list[int]:
        return [q for g in self.gates for q in g.qubits]


@dataclass(frozen=True)
class TimeslicedCircuit:
    num_qubits: int
    slices: tuple[Timeslice, ...]

    def __len__(self) -> int:
        return len(self.slices)

    def __iter__(self) -> Iterator[Timeslice]:
        return iter(self.slices)

    def __getitem__(self, t: int) -> Timeslice:
        return self.slices[t]

    @property
    def gates(self) -> list[Gate]:
        return [g for s in self.slices for g in s.gates]

    def slice_pairs(self) -> list[list[tuple[int, int]]]:
        return [s.pairs for s in self.slices]

    def with_slices(self, groups: Iterable[Iterable[Gate]]) -> TimeslicedCircuit:
        """Rebuild from explicit gate groups, renumbering slice indices."""
        slices = tuple(Timeslice(i, tuple(g)) for i, g in enumerate(groups))
        return TimeslicedCircuit(self.num_qubits, slices)


def slice_circuit(circuit: Circuit) -> TimeslicedCircuit:
    """Greedy ASAP layering respecting per-qubit program order and barriers."""
    frontier = [-1] * circuit.num_qubits  # last slice touching each qubit
    floor = 0
    deepest = -1
    barriers = set(circuit.barriers)
    layers: list[list[Gate]] = []
    for pos, gate in enumerate(circuit.gates):
        if pos in barriers:
            floor = deepest + 1
        layer = max(floor, 1 + max(frontier[q] for q in gate.qubits))
        if layer == len(layers):
            layers.append([])
        layers[layer].append(gate)
        for q in gate.qubits:
            frontier[q] = layer
        deepest = max(deepest, layer)
    return TimeslicedCircuit(
        circuit.num_qubits, tuple(Timeslice(i, tuple(gs)) for i, gs in enumerate(layers))
    )


def two_qubit_gate_fraction(circuit: Circuit) -> float:
    if not circuit.gates:
        raise CircuitError("two-qubit fraction undefined for an empty circuit")
    return sum(g.is_two_qubit for g in circuit.gates) / len(circuit.gates)


class _MustJoin:
    __slots__ = ()

    def __repr__(self) -> str:
        return "MUST_JOIN"


MUST_JOIN = _MustJoin()


def _key(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise CircuitError("interaction graphs have no self-edges")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class InteractionGraph:
    """Weighted qubit interaction graph.

    ``weights`` holds the finite (look-ahead) weight of every pair that has
    one; ``must_join`` holds pairs that interact in the current slice.  A
    must-join pair may also carry a finite weight from later slices, which
    :meth:`weight` exposes but :meth:`__getitem__` masks with ``MUST_JOIN``.
    """

    num_qubits: int
    weights: dict[tuple[int, int], float] = field(default_factory=dict)
    must_join: frozenset[tuple[int, int]] = frozenset()

    def __post_init__(self) -> None:
        seen: set[int] = set()
        for i, j in self.must_join:
            if i in seen or j in seen:
                raise CircuitError("must-join pairs must form a matching")
            seen.update((i, j))

    def __getitem__(self, pair: tuple[int, int]) -> float | _MustJoin:
        key = _key(*pair)
        if key in self.must_join:
            return MUST_JOIN
        return self.weights.get(key, 0.0)

    def weight(self, i: int, j: int) -> float:
        return self.weights.get(_key(i, j), 0.0)

    def is_must_join(self, i: int, j: int) -> bool:
        return _key(i, j) in self.must_join

    def neighbours(self) -> list[dict[int, float]]:
        """Adjacency view of the finite weights."""
        adj: list[dict[int, float]] = [{} for _ in range(self.num_qubits)]
        for (i, j), w in self.weights.items():
            adj[i][j] = w
            adj[j][i] = w
        return adj

    def max_weight(self) -> float:
        return max(self.weights.values(), default=0.0)


def future_weights(
    pairs_per_slice: list[list[tuple[int, int]]], t: int, sigma: int | None = DEFAULT_SIGMA
) -> dict[tuple[int, int], float]:
    last = len(pairs_per_slice) - 1 if sigma is None else min(len(pairs_per_slice) - 1, t + sigma)
    weights: dict[tuple[int, int], float] = defaultdict(float)
    for m in range(t + 1, last + 1):
        decay = 2.0 ** -(m - t)
        for pair in pairs_per_slice[m]:
            weights[pair] += decay
    return dict(weights)


def lookahead_weights(
    tsc: TimeslicedCircuit, t: int, sigma: int | None = DEFAULT_SIGMA
) -> InteractionGraph:
    """Exponentially decayed future interactions seen from slice ``t``.

    Pairs interacting in slice ``t`` itself are marked must-join.  ``sigma``
    truncates the horizon; ``None`` sums to the end of the circuit.
    """
    if not 0 <= t < len(tsc):
        raise IndexError(f"slice index {t} out of range for {len(tsc)} slices")
    if sigma is not None and sigma < 0:
        raise ValueError("sigma must be non-negative")
    pairs = tsc.slice_pairs()
    return InteractionGraph(
        tsc.num_qubits, future_weights(pairs, t, sigma), frozenset(pairs[t])
    )


def aggregate_interactions(circuit: Circuit | TimeslicedCircuit) -> InteractionGraph:
    """Total two-qubit interaction counts per qubit pair."""
    gates = circuit.gates
    counts: dict[tuple[int, int], float] = defaultdict(float)
    for g in gates:
        if g.is_two_qubit:
            counts[g.pair] += 1.0
    return InteractionGraph(circuit.num_qubits, dict(counts))

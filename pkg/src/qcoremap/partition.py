"""Balanced k-way partition refinement by pairwise exchanges (OEE / rOEE).

A round repeatedly applies the best-gain exchange between two unlocked
vertices in different blocks, locks both, and finally rolls back to the
prefix with the highest cumulative gain.  Rounds repeat while they improve
the cut.  The relaxed variant stops the moment every must-join pair shares
a block.

Must-join edges are given the finite weight ``W_INF = 1e6 * (1 + max
finite weight)`` so gains stay ordinary floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import InteractionGraph

DEFAULT_MAX_ROUNDS = 20
_EPS = 1e-9


class PartitionError(ValueError):
    pass


class RoeeValidityError(PartitionError):
    """rOEE could not co-locate every must-join pair."""

    def __init__(self, partition: Partition):
        self.partition = partition
        super().__init__("rOEE failed to reach a valid partition")


@dataclass(frozen=True)
class Partition:
    assignment: tuple[int, ...]
    k: int
    block_size: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "assignment", tuple(int(b) for b in self.assignment))
        if self.k < 1 or self.block_size < 1:
            raise PartitionError("k and block_size must be positive")
        if self.k * self.block_size != len(self.assignment):
            raise PartitionError(
                f"{self.k} blocks of {self.block_size} do not cover {len(self.assignment)} nodes"
            )
        counts = np.bincount(np.asarray(self.assignment, dtype=int), minlength=self.k)
        if len(counts) != self.k or (counts != self.block_size).any():
            raise PartitionError("partition is not balanced")

    @classmethod
    def from_blocks(cls, blocks: Sequence[Sequence[int]]) -> Partition:
        n = sum(len(b) for b in blocks)
        assignment = [-1] * n
        for idx, block in enumerate(blocks):
            for v in block:
                assignment[v] = idx
        return cls(tuple(assignment), len(blocks), n // max(len(blocks), 1))

    @classmethod
    def random(cls, n: int, k: int, rng: np.random.Generator) -> Partition:
        if n % k:
            raise PartitionError(f"k={k} does not divide {n} nodes")
        order = rng.permutation(n)
        assignment = [0] * n
        for pos, v in enumerate(order):
            assignment[int(v)] = pos // (n // k)
        return cls(tuple(assignment), k, n // k)

    def __len__(self) -> int:
        return len(self.assignment)

    def blocks(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.k)]
        for v, b in enumerate(self.assignment):
            out[b].append(v)
        return out


def weight_matrix(graph: InteractionGraph, n_nodes: int | None = None) -> np.ndarray:
    """Dense symmetric weight matrix with must-join pairs at ``W_INF``."""
    n = graph.num_qubits if n_nodes is None else n_nodes
    if n < graph.num_qubits:
        raise PartitionError("fewer nodes than graph qubits")
    w = np.zeros((n, n))
    for (i, j), x in graph.weights.items():
        w[i, j] = w[j, i] = x
    if graph.must_join:
        w_inf = 1e6 * (1.0 + graph.max_weight())
        for i, j in graph.must_join:
            w[i, j] = w[j, i] = w_inf
    return w


def cut_weight(graph: InteractionGraph, partition: Partition, include_must_join: bool = False) -> float:
    """Sum of finite edge weights crossing blocks (must-join edges optional)."""
    blk = partition.assignment
    total = sum(w for (i, j), w in graph.weights.items() if blk[i] != blk[j])
    if include_must_join:
        w_inf = 1e6 * (1.0 + graph.max_weight())
        total += w_inf * sum(1 for i, j in graph.must_join if blk[i] != blk[j])
    return total


def is_valid_partition(graph: InteractionGraph, partition: Partition) -> bool:
    blk = partition.assignment
    return all(blk[i] == blk[j] for i, j in graph.must_join)


class _Exchanger:
    """Exchange state: block labels plus per-vertex block connectivity."""

    def __init__(self, w: np.ndarray, assignment: Sequence[int], k: int):
        self.w = w
        self.n = w.shape[0]
        self.k = k
        self.blk = np.asarray(assignment, dtype=np.intp).copy()
        # conn[v, b]: total weight from v to members of block b
        onehot = np.zeros((self.n, k))
        onehot[np.arange(self.n), self.blk] = 1.0
        self.conn = w @ onehot
        self.upper = np.triu(np.ones((self.n, self.n), dtype=bool), 1)

    def best_exchange(self, locked: np.ndarray) -> tuple[int, int, float] | None:
        blk = self.blk
        internal = self.conn[np.arange(self.n), blk]
        # ext[a, b]: gain for moving a into b's block, ignoring the a-b edge
        ext = self.conn[:, blk] - internal[:, None]
        gain = ext + ext.T - 2.0 * self.w
        free = ~locked
        mask = self.upper & (blk[:, None] != blk[None, :]) & free[:, None] & free[None, :]
        if not mask.any():
            return None
        gain = np.where(mask, gain, -np.inf)
        flat = int(np.argmax(gain))
        a, b = divmod(flat, self.n)
        return a, b, float(gain[a, b])

    def swap(self, a: int, b: int) -> None:
        x, y = self.blk[a], self.blk[b]
        delta = self.w[:, b] - self.w[:, a]
        self.conn[:, x] += delta
        self.conn[:, y] -= delta
        self.blk[a], self.blk[b] = y, x


def _refine(
    graph: InteractionGraph,
    k: int,
    initial: Partition,
    max_rounds: int,
    relaxed: bool,
) -> tuple[Partition, bool, int]:
    n = len(initial)
    if n % k:
        raise PartitionError(f"k={k} does not divide {n} nodes")
    if initial.k != k:
        raise PartitionError(f"initial partition has {initial.k} blocks, expected {k}")
    mj = np.array(sorted(graph.must_join), dtype=np.intp).reshape(-1, 2)

    def valid(blk: np.ndarray) -> bool:
        return bool(np.all(blk[mj[:, 0]] == blk[mj[:, 1]]))

    if relaxed and valid(np.asarray(initial.assignment)):
        return initial, True, 0
    if not graph.weights and not graph.must_join:
        return initial, True, 0

    state = _Exchanger(weight_matrix(graph, n), initial.assignment, k)
    exchanges = 0
    for _ in range(max_rounds):
        locked = np.zeros(n, dtype=bool)
        history: list[tuple[int, int]] = []
        cum = best = 0.0
        best_len = 0
        while True:
            step = state.best_exchange(locked)
            if step is None:
                break
            a, b, gain = step
            state.swap(a, b)
            exchanges += 1
            locked[a] = locked[b] = True
            history.append((a, b))
            cum += gain
            if relaxed and valid(state.blk):
                return Partition(tuple(state.blk.tolist()), k, n // k), True, exchanges
            if cum > best + _EPS:
                best, best_len = cum, len(history)
        for a, b in reversed(history[best_len:]):
            state.swap(a, b)
        if best <= _EPS:
            break
    result = Partition(tuple(state.blk.tolist()), k, n // k)
    return result, valid(state.blk), exchanges


def oee_partition(
    graph: InteractionGraph,
    k: int,
    initial: Partition,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Partition:
    """Refine ``initial`` into a balanced partition with no larger cut."""
    return _refine(graph, k, initial, max_rounds, relaxed=False)[0]


def roee_partition(
    graph: InteractionGraph,
    k: int,
    initial: Partition,
    max_rounds: int = DEFAULT_MAX_ROUNDS,
) -> Partition:
    """Exchange from ``initial`` until every must-join pair shares a block.

    Raises :class:`RoeeValidityError` (carrying the best partition found)
    when no valid partition is reached.
    """
    result, ok, _ = _refine(graph, k, initial, max_rounds, relaxed=True)
    if not ok:
        raise RoeeValidityError(result)
    return result

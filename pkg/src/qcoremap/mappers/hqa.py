"""Hungarian Qubit Assignment.

Instead of re-partitioning qubits, each slice's unfeasible two-qubit gates
are treated as operations to be placed whole into cores.  Each round builds
an operation x core cost matrix and lets the Hungarian solver give every
core with room at most one operation; rounds repeat until all are placed.
"""

from __future__ import annotations

import time
from typing import Literal, Sequence

import numpy as np

from ..assignment import FORBIDDEN, CostMatrix, solve_assignment
from ..circuit import DEFAULT_SIGMA, InteractionGraph, TimeslicedCircuit, future_weights
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
from .placement import oee_placement

_ATTR_SCALE = 0.99
_ATTR_EPS = 1e-9


def hqa_attraction(
    op: tuple[int, int], core: int, graph: InteractionGraph, a: Assignment | Sequence[int]
) -> float:
    """Mean pull of the two operands of ``op`` toward the residents of ``core``.

    Qubits placed at core ``-1`` count as unplaced.  Returns the raw value;
    the mapper rescales it per cost matrix.
    """
    residents = [q for q, c in enumerate(a) if c == core]

    def pull(x: int) -> float:
        return sum(graph.weight(x, r) for r in residents if r != x)

    qa, qb = op
    return (pull(qa) + pull(qb)) / 2


def _attraction_matrix(
    ops: list[tuple[int, int]], core: list[int], adj: dict[int, dict[int, float]], n_cores: int
) -> np.ndarray:
    out = np.zeros((len(ops), n_cores))
    for i, (a, b) in enumerate(ops):
        for x in (a, b):
            for y, w in adj.get(x, {}).items():
                c = core[y]
                if c >= 0:
                    out[i, c] += w
    return out / 2


def _adjacency(weights: dict[tuple[int, int], float]) -> dict[int, dict[int, float]]:
    adj: dict[int, dict[int, float]] = {}
    for (i, j), w in weights.items():
        adj.setdefault(i, {})[j] = w
        adj.setdefault(j, {})[i] = w
    return adj


def build_cost_matrix(
    ops: list[tuple[int, int]],
    previous: Sequence[int],
    free: Sequence[int],
    attraction: np.ndarray | None = None,
) -> CostMatrix:
    """Operation x core costs.

    Forbidden when the core has fewer than two free slots, 1 when an operand
    was in that core before the slice, 2 otherwise.  With ``attraction`` the
    values are rescaled to ``[0, 0.99]`` by the matrix maximum and
    subtracted.
    """
    n_cores = len(free)
    cost = np.empty((len(ops), n_cores))
    for i, (a, b) in enumerate(ops):
        for c in range(n_cores):
            if free[c] < 2:
                cost[i, c] = FORBIDDEN
            elif previous[a] == c or previous[b] == c:
                cost[i, c] = 1.0
            else:
                cost[i, c] = 2.0
    if attraction is not None and attraction.size:
        top = float(attraction.max())
        if top > 0:
            cost = cost - _ATTR_SCALE * attraction / (top + _ATTR_EPS)
    return CostMatrix(cost)


def _parity_fix(
    ops: list[tuple[int, int]],
    core: list[int],
    free: list[int],
    interacting: set[int],
    n_cores: int,
    adj: dict[int, dict[int, float]] | None = None,
    previous: Sequence[int] | None = None,
) -> None:
    """Pair up cores with an odd number of free slots.

    For each pair of odd cores (ascending), one non-interacting resident of
    each is freed and the two are bundled into an auxiliary operation.  If
    only one of the two cores has such a resident it is moved straight into
    the other core.  Stops once every operation can fit.

    The resident picked is the one least attracted to its own core under
    ``adj`` (lowest index on ties, or always without look-ahead weights).
    Attraction is measured against ``previous``, the placement before this
    slice's operands were freed, so partners in transit still count.
    """
    home = core if previous is None else previous

    def room() -> int:
        return sum(f // 2 for f in free)

    def spare(c: int) -> int | None:
        residents = [q for q, qc in enumerate(core) if qc == c and q not in interacting]
        if not residents or adj is None:
            return residents[0] if residents else None
        pull = [sum(w for y, w in adj.get(q, {}).items() if home[y] == c) for q in residents]
        return residents[int(np.argmin(pull))]

    if room() >= len(ops):
        return
    odd = [c for c in range(n_cores) if free[c] % 2]
    for A, B in zip(odd[0::2], odd[1::2]):
        if room() >= len(ops):
            break
        sa, sb = spare(A), spare(B)
        if sa is not None and sb is not None:
            for s in (sa, sb):
                free[core[s]] += 1
                core[s] = -1
            ops.append((sa, sb))
        elif sa is not None or sb is not None:
            s, src, dst = (sa, A, B) if sa is not None else (sb, B, A)
            core[s] = dst
            free[src] += 1
            free[dst] -= 1


def map_hqa(
    tsc: TimeslicedCircuit,
    arch: Architecture,
    use_attraction: bool = True,
    initial: Literal["oee", "random"] | Sequence[int] = "oee",
    sigma: int | None = DEFAULT_SIGMA,
    seed: int = 0,
) -> MappingResult:
    arch.check_fits(tsc.num_qubits)
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    tsc = fit_slices(tsc, arch)
    if isinstance(initial, str):
        if initial == "oee":
            core = oee_placement(tsc, arch, rng)
        elif initial == "random":
            core = random_placement(tsc.num_qubits, arch, rng)
        else:
            raise ValueError(f"unknown initial placement {initial!r}")
    else:
        core = check_placement(initial, tsc.num_qubits, arch)

    n_cores, cap = arch.n_cores, arch.capacity
    pairs_per_slice = tsc.slice_pairs()
    per_slice = []
    repairs = 0
    for t, s in enumerate(tsc):
        previous = list(core)
        ordered = [g.qubits for g in s.gates if g.is_two_qubit]
        ops = [(a, b) for a, b in ordered if core[a] != core[b]]
        if ops:
            free = [cap] * n_cores
            for c in core:
                free[c] -= 1
            for op in ops:
                for x in op:
                    free[core[x]] += 1
                    core[x] = -1
            interacting = {x for pair in ordered for x in pair}
            adj = _adjacency(future_weights(pairs_per_slice, t, sigma)) if use_attraction else None
            _parity_fix(ops, core, free, interacting, n_cores, adj, previous)
            stuck = sum(f // 2 for f in free) < len(ops)
            while ops and not stuck:
                attr = _attraction_matrix(ops, core, adj, n_cores) if adj is not None else None
                chosen, _ = solve_assignment(build_cost_matrix(ops, previous, free, attr))
                if not chosen:
                    stuck = True
                    break
                for i, c in chosen.items():
                    for x in ops[i]:
                        core[x] = c
                    free[c] -= 2
                ops = [op for i, op in enumerate(ops) if i not in chosen]
            if stuck:
                repairs += 1
                core = repair(previous, s.pairs, arch)
        per_slice.append(Assignment(tuple(core)))

    seq = AssignmentSequence(tuple(per_slice))
    elapsed = time.perf_counter() - start
    name = "hqa" if use_attraction else "hqa-noattr"
    if isinstance(initial, str) and initial == "random":
        name += "-random-init"
    return MappingResult(seq, count_comms(seq), elapsed, name, seed, repairs, tsc)

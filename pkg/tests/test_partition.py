from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcoremap.circuit import InteractionGraph
from qcoremap.partition import (
    Partition,
    PartitionError,
    RoeeValidityError,
    cut_weight,
    is_valid_partition,
    oee_partition,
    roee_partition,
    weight_matrix,
)

from oracles import balanced_partitions, cut_of


def same_grouping(p: Partition, blocks) -> bool:
    return sorted(map(sorted, p.blocks())) == sorted(map(sorted, blocks))


# -- Partition type ------------------------------------------------------------

def test_partition_must_be_balanced():
    with pytest.raises(PartitionError):
        Partition((0, 0, 0, 1), 2, 2)
    with pytest.raises(PartitionError):
        Partition((0, 1, 2), 2, 2)
    with pytest.raises(PartitionError):
        Partition.random(5, 2, np.random.default_rng(0))


def test_from_blocks_and_random():
    p = Partition.from_blocks([[0, 2], [1, 3]])
    assert p.assignment == (0, 1, 0, 1) and p.block_size == 2
    r = Partition.random(12, 3, np.random.default_rng(1))
    assert sorted(len(b) for b in r.blocks()) == [4, 4, 4]


def test_weight_matrix_must_join_dominates():
    g = InteractionGraph(3, {(0, 1): 2.0, (1, 2): 0.5}, frozenset({(0, 2)}))
    w = weight_matrix(g)
    assert w[0, 2] == w[2, 0] == 1e6 * 3.0
    assert w[0, 1] == 2.0 and w[2, 1] == 0.5
    assert weight_matrix(g, 5).shape == (5, 5)
    with pytest.raises(PartitionError):
        weight_matrix(g, 2)


# -- OEE ------------------------------------------------------------------------

def test_oee_example():
    weights = {(0, 1): 10.0, (2, 3): 10.0, (0, 2): 1.0}
    g = InteractionGraph(4, weights)
    # brute-force optimum over the three balanced bipartitions
    best = min(cut_of(b, weights) for b in balanced_partitions(4, 2))
    out = oee_partition(g, 2, Partition.from_blocks([[0, 2], [1, 3]]))
    assert same_grouping(out, [[0, 1], [2, 3]])
    assert cut_weight(g, out) == best == 1.0


def test_oee_edgeless_is_identity():
    init = Partition.from_blocks([[3, 1], [0, 2]])
    assert oee_partition(InteractionGraph(4), 2, init) == init


def test_oee_complete_graph():
    n, w = 6, 0.5
    g = InteractionGraph(n, {(i, j): w for i, j in itertools.combinations(range(n), 2)})
    init = Partition.random(n, 2, np.random.default_rng(3))
    out = oee_partition(g, 2, init)
    assert cut_weight(g, out) == (n // 2) ** 2 * w


def test_oee_k_must_divide():
    with pytest.raises(PartitionError):
        oee_partition(InteractionGraph(4), 3, Partition.from_blocks([[0, 1], [2, 3]]))
    with pytest.raises(PartitionError):
        oee_partition(InteractionGraph(4), 4, Partition.from_blocks([[0, 1], [2, 3]]))


@st.composite
def graphs(draw, max_nodes=8, must_join=False):
    k = draw(st.sampled_from([2, 2, 3, 4]))
    size = draw(st.integers(1, max_nodes // k))
    n = k * size
    pairs = list(itertools.combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs))) if pairs else []
    weights = {p: float(draw(st.integers(1, 9))) for p in chosen}
    mj = set()
    if must_join:
        perm = draw(st.permutations(range(n)))
        for a, b in zip(perm[0::2], perm[1::2]):
            if draw(st.booleans()):
                mj.add((min(a, b), max(a, b)))
    seed = draw(st.integers(0, 2**16))
    return InteractionGraph(n, weights, frozenset(mj)), k, Partition.random(n, k, np.random.default_rng(seed))


@given(graphs())
def test_oee_balanced_and_not_worse(case):
    g, k, init = case
    out = oee_partition(g, k, init)
    assert out.k == k and out.block_size == init.block_size
    assert cut_weight(g, out) <= cut_weight(g, init)
    assert init == Partition(init.assignment, k, init.block_size), "input untouched"


@given(graphs())
def test_oee_swap_local_optimum(case):
    """After convergence no single exchange lowers the cut (brute force over swaps)."""
    g, k, init = case
    out = oee_partition(g, k, init, max_rounds=200)
    base = cut_weight(g, out)
    blk = list(out.assignment)
    for a, b in itertools.combinations(range(len(blk)), 2):
        if blk[a] == blk[b]:
            continue
        swapped = blk.copy()
        swapped[a], swapped[b] = swapped[b], swapped[a]
        assert cut_weight(g, Partition(tuple(swapped), k, out.block_size)) >= base - 1e-9


@given(graphs(max_nodes=8))
def test_oee_small_bipartition_near_brute_force(case):
    g, k, init = case
    if k != 2:
        return
    out = oee_partition(g, k, init, max_rounds=200)
    cuts = sorted(cut_of(b, g.weights) for b in balanced_partitions(len(init), 2))
    assert cuts[0] <= cut_weight(g, out)


def test_oee_deterministic():
    rng = np.random.default_rng(9)
    weights = {(int(a), int(b)): float(w) for a, b, w in zip(rng.integers(0, 6, 30), rng.integers(6, 12, 30), rng.integers(1, 5, 30))}
    g = InteractionGraph(12, weights)
    init = Partition.random(12, 3, np.random.default_rng(2))
    assert oee_partition(g, 3, init) == oee_partition(g, 3, init)


# -- rOEE ------------------------------------------------------------------------

def test_roee_valid_initial_returned():
    g = InteractionGraph(4, {(0, 2): 5.0}, frozenset({(0, 1)}))
    init = Partition.from_blocks([[0, 1], [2, 3]])
    assert roee_partition(g, 2, init) is init


def test_roee_single_swap_example():
    weights = {(1, 2): 3.0, (0, 3): 1.0, (2, 3): 2.0}
    g = InteractionGraph(4, weights, frozenset({(0, 1)}))
    init = Partition.from_blocks([[0, 2], [1, 3]])
    out = roee_partition(g, 2, init)
    assert is_valid_partition(g, out)
    # enumerate the four cross-block exchanges and keep the valid ones
    repairs = []
    for a, b in [(0, 1), (0, 3), (2, 1), (2, 3)]:
        blk = list(init.assignment)
        blk[a], blk[b] = blk[b], blk[a]
        p = Partition(tuple(blk), 2, 2)
        if is_valid_partition(g, p):
            repairs.append(cut_weight(g, p))
    assert repairs
    assert cut_weight(g, out) == min(repairs)


def test_roee_stops_at_first_valid_partition():
    # two must-join pairs both split; a single swap fixes both, later swaps would lower the cut further
    weights = {(0, 3): 1.0}
    g = InteractionGraph(4, weights, frozenset({(0, 1), (2, 3)}))
    out = roee_partition(g, 2, Partition.from_blocks([[0, 2], [1, 3]]))
    assert is_valid_partition(g, out)


def test_roee_raises_with_best_partition():
    g = InteractionGraph(4, {}, frozenset({(0, 1), (2, 3)}))
    with pytest.raises(RoeeValidityError) as info:
        roee_partition(g, 2, Partition.from_blocks([[0, 2], [1, 3]]), max_rounds=0)
    assert isinstance(info.value.partition, Partition)


@given(graphs(must_join=True))
def test_roee_output_valid_or_error(case):
    g, k, init = case
    try:
        out = roee_partition(g, k, init)
    except RoeeValidityError as exc:
        assert not is_valid_partition(g, exc.partition)
        return
    assert is_valid_partition(g, out)
    assert sorted(np.bincount(out.assignment, minlength=k)) == [out.block_size] * k


def test_cut_weight_with_must_join():
    g = InteractionGraph(4, {(0, 2): 2.0}, frozenset({(0, 1)}))
    p = Partition.from_blocks([[0, 2], [1, 3]])
    assert cut_weight(g, p) == 0.0
    assert cut_weight(g, p, include_must_join=True) == 1e6 * 3.0

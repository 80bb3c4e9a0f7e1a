from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qcoremap.benchgen import (
    BENCHMARKS,
    cuccaro_adder,
    draper_adder,
    generate,
    qft,
    quantum_volume,
    random_by_depth,
    random_qgf,
)
from qcoremap.circuit import Gate, slice_circuit, two_qubit_gate_fraction


def n_two(c):
    return sum(g.is_two_qubit for g in c.gates)


def test_qgf_empty():
    c = random_qgf(4, 0, 0.5, seed=1)
    assert c.num_qubits == 4 and c.gates == ()


def test_qgf_forced_pair():
    c = random_qgf(2, 100, 1.0, seed=3)
    assert len(c.gates) == 100
    assert all(g.kind == "cx" and g.pair == (0, 1) for g in c.gates)


def test_qgf_fraction_concentrates():
    fracs = [two_qubit_gate_fraction(random_qgf(120, 2000, 0.5, seed=s)) for s in range(20)]
    assert abs(np.mean(fracs) - 0.5) <= 0.03
    assert all(abs(x - 0.5) <= 0.05 for x in fracs)


def test_qgf_expected_two_qubit_count():
    q, g, f = 30, 400, 0.3
    counts = [n_two(random_qgf(q, g, f, seed=s)) for s in range(50)]
    sd_of_mean = math.sqrt(g * f * (1 - f) / len(counts))
    assert abs(np.mean(counts) - g * f) <= 3 * sd_of_mean


def test_qgf_pairs_are_uniform():
    """Every unordered pair is drawn; chi-square against the uniform law."""
    q = 5
    counts = {}
    for s in range(20):
        for gate in random_qgf(q, 500, 1.0, seed=s).gates:
            counts[gate.pair] = counts.get(gate.pair, 0) + 1
    assert len(counts) == q * (q - 1) // 2
    obs = np.array(list(counts.values()), dtype=float)
    exp = obs.sum() / len(obs)
    chi2 = float(((obs - exp) ** 2 / exp).sum())
    assert chi2 < 27.9  # 9 dof, p = 0.001


def test_qgf_rejects_bad_inputs():
    with pytest.raises(ValueError):
        random_qgf(1, 5, 0.5)
    with pytest.raises(ValueError):
        random_qgf(4, 5, 1.5)


def test_random_by_depth_examples():
    assert random_by_depth(4, 0).gates == ()
    c = random_by_depth(2, 3, f=1.0, seed=0)
    assert [g.kind for g in c.gates] == ["cx"] * 3
    assert len(slice_circuit(random_by_depth(6, 12, seed=7))) == 12


@given(st.integers(2, 9), st.integers(0, 10), st.floats(0, 1), st.integers(0, 2**32))
def test_random_by_depth_slice_count(q, depth, f, seed):
    assert len(slice_circuit(random_by_depth(q, depth, f, seed))) == depth


def test_qft_examples():
    assert qft(1).gates == (Gate("h", (0,)),)
    assert n_two(qft(4)) == 6
    assert {g.pair for g in qft(3).gates if g.is_two_qubit} == {(0, 1), (0, 2), (1, 2)}
    assert n_two(qft(9)) == 9 * 8 // 2
    angles = [g.param for g in qft(3).gates if g.is_two_qubit]
    assert angles == pytest.approx([math.pi / 2, math.pi / 4, math.pi / 2])


def test_cuccaro_sizes():
    for n in (1, 2, 5):
        c = cuccaro_adder(n)
        assert c.num_qubits == 2 * n + 2
        assert all(len(g.qubits) <= 2 for g in c.gates)
        # 2n MAJ/UMA blocks of 2 CX + one 6-CX Toffoli each, plus the carry-out CX
        assert n_two(c) == 2 * n * 8 + 1
    with pytest.raises(ValueError):
        cuccaro_adder(0)


def test_draper_counts():
    c = draper_adder(2)
    assert c.num_qubits == 4
    assert sum(g.kind == "cp" for g in c.gates) == 5
    assert all(len(g.qubits) <= 2 for g in c.gates)
    n = 4
    assert n_two(draper_adder(n)) == n * (n - 1) + n * (n + 1) // 2


def test_quantum_volume_examples():
    c = quantum_volume(2, seed=1)
    assert n_two(c) == 2 * 3
    c5 = quantum_volume(5, seed=2)
    assert n_two(c5) == 5 * 2 * 3
    assert sum(g.kind == "cx" for g in quantum_volume(8, seed=11).gates) == 96


def test_quantum_volume_layer_structure():
    """Each layer's blocks touch disjoint pairs, leaving one idle qubit for odd q."""
    q = 5
    c = quantum_volume(q, seed=4)
    cxs = [g for g in c.gates if g.kind == "cx"]
    per_layer = 2 * 3
    for layer in range(q):
        blocks = cxs[layer * per_layer:(layer + 1) * per_layer]
        pairs = {g.pair for g in blocks}
        assert len(pairs) == 2
        touched = [x for p in pairs for x in p]
        assert len(set(touched)) == 4


@pytest.mark.parametrize("name", BENCHMARKS)
def test_generators_deterministic_and_well_formed(name):
    a = generate(name, 12, seed=5)
    b = generate(name, 12, seed=5)
    assert a == b
    assert a.num_qubits <= 12
    assert all(max(g.qubits) < a.num_qubits for g in a.gates)
    assert all(len(g.qubits) <= 2 for g in a.gates)


def test_random_generators_vary_with_seed():
    assert generate("qgf", 10, seed=1) != generate("qgf", 10, seed=2)
    assert generate("qv", 10, seed=1) != generate("qv", 10, seed=2)


def test_generate_sizes():
    assert generate("cuccaro", 20).num_qubits == 20
    assert generate("cuccaro", 21).num_qubits == 20
    assert generate("draper", 21).num_qubits == 20
    assert len(generate("qgf", 10, g=30).gates) == 30
    assert len(slice_circuit(generate("random", 10))) == 20
    with pytest.raises(ValueError):
        generate("nope", 4)

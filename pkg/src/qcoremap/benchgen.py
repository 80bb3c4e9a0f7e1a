"""Benchmark circuit generators.

All random generators take an integer seed and draw from a private
``numpy.random.Generator``, so identical arguments give identical circuits.
"""

from __future__ import annotations

import math

import numpy as np

from .circuit import Circuit, Gate
from .ingest import toffoli_decomposition


def _rng(seed: int) -> np.random.Generator:
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


def random_qgf(q: int, g: int, f: float, seed: int = 0) -> Circuit:
    """(q, g, f) random circuit.

    Each of the ``g`` gates is, with probability ``f``, a CX on a uniformly
    random pair of distinct qubits, otherwise an H on a uniformly random
    qubit.
    """
    if not 0.0 <= f <= 1.0:
        raise ValueError("f must lie in [0, 1]")
    if g < 0:
        raise ValueError("g must be non-negative")
    if q < 2 and f > 0:
        raise ValueError("two-qubit gates need at least 2 qubits")
    if q < 1 and g > 0:
        raise ValueError("gates need at least one qubit")
    rng = _rng(seed)
    gates = []
    for _ in range(g):
        if rng.random() < f:
            a, b = rng.choice(q, size=2, replace=False)
            gates.append(Gate("cx", (min(a, b), max(a, b))))
        else:
            gates.append(Gate("h", (int(rng.integers(q)),)))
    return Circuit(q, tuple(gates))


def random_by_depth(q: int, depth: int, f: float = 0.5, seed: int = 0) -> Circuit:
    """Layered random circuit whose ASAP slicing has exactly ``depth`` slices.

    Every layer touches every qubit: a random permutation is paired off,
    each pair becomes a CX with probability ``f`` and every other qubit
    gets an H.
    """
    if q < 2:
        raise ValueError("random_by_depth needs at least 2 qubits")
    if depth < 0:
        raise ValueError("depth must be non-negative")
    rng = _rng(seed)
    gates = []
    for _ in range(depth):
        perm = rng.permutation(q)
        for k in range(0, q - 1, 2):
            a, b = int(perm[k]), int(perm[k + 1])
            if rng.random() < f:
                gates.append(Gate("cx", (a, b)))
            else:
                gates += [Gate("h", (a,)), Gate("h", (b,))]
        if q % 2:
            gates.append(Gate("h", (int(perm[-1]),)))
    return Circuit(q, tuple(gates))


def _qft_gates(qubits: list[int], inverse: bool = False) -> list[Gate]:
    gates = []
    n = len(qubits)
    for i in range(n):
        gates.append(Gate("h", (qubits[i],)))
        for j in range(i + 1, n):
            gates.append(Gate("cp", (qubits[j], qubits[i]), math.pi / 2 ** (j - i)))
    if inverse:
        gates = [
            Gate(g.kind, g.qubits, None if g.param is None else -g.param) for g in reversed(gates)
        ]
    return gates


def qft(q: int) -> Circuit:
    """Quantum Fourier transform without the final qubit-reversal swaps."""
    if q < 1:
        raise ValueError("qft needs at least one qubit")
    return Circuit(q, tuple(_qft_gates(list(range(q)))))


def _maj(c: int, b: int, a: int) -> list[Gate]:
    return [Gate("cx", (a, b)), Gate("cx", (a, c)), *toffoli_decomposition(c, b, a)]


def _uma(c: int, b: int, a: int) -> list[Gate]:
    return [*toffoli_decomposition(c, b, a), Gate("cx", (a, c)), Gate("cx", (c, b))]


def cuccaro_adder(n: int) -> Circuit:
    """Ripple-carry adder on ``2n + 2`` qubits.

    Layout: carry-in at 0, then ``b_i, a_i`` interleaved, carry-out last.
    """
    if n < 1:
        raise ValueError("operand width must be >= 1")
    cin, cout = 0, 2 * n + 1
    b = [1 + 2 * i for i in range(n)]
    a = [2 + 2 * i for i in range(n)]
    gates = _maj(cin, b[0], a[0])
    for i in range(1, n):
        gates += _maj(a[i - 1], b[i], a[i])
    gates.append(Gate("cx", (a[n - 1], cout)))
    for i in range(n - 1, 0, -1):
        gates += _uma(a[i - 1], b[i], a[i])
    gates += _uma(cin, b[0], a[0])
    return Circuit(2 * n + 2, tuple(gates))


def draper_adder(n: int) -> Circuit:
    """QFT adder: ``a`` on qubits ``0..n-1``, ``b`` (the sum register) on ``n..2n-1``."""
    if n < 1:
        raise ValueError("operand width must be >= 1")
    a = list(range(n))
    b = list(range(n, 2 * n))
    gates = _qft_gates(b)
    for j in range(n):
        for i in range(j, n):
            gates.append(Gate("cp", (a[i], b[j]), math.pi / 2 ** (i - j)))
    gates += _qft_gates(b, inverse=True)
    return Circuit(2 * n, tuple(gates))


def _su4_block(a: int, b: int, angles: np.ndarray) -> list[Gate]:
    # 3-CX skeleton of a generic two-qubit unitary
    r = iter(float(x) for x in angles)
    return [
        Gate("rz", (a,), next(r)), Gate("ry", (b,), next(r)),
        Gate("cx", (a, b)),
        Gate("ry", (a,), next(r)), Gate("rz", (b,), next(r)),
        Gate("cx", (b, a)),
        Gate("ry", (a,), next(r)),
        Gate("cx", (a, b)),
        Gate("rz", (a,), next(r)), Gate("ry", (b,), next(r)),
    ]


def quantum_volume(q: int, seed: int = 0) -> Circuit:
    """Square quantum-volume model circuit with 3-CX two-qubit blocks."""
    if q < 2:
        raise ValueError("quantum volume needs at least 2 qubits")
    rng = _rng(seed)
    gates = []
    for _ in range(q):
        perm = rng.permutation(q)
        for k in range(q // 2):
            angles = rng.uniform(0, 2 * math.pi, size=7)
            gates += _su4_block(int(perm[2 * k]), int(perm[2 * k + 1]), angles)
    return Circuit(q, tuple(gates))


BENCHMARKS = ("qgf", "random", "qft", "draper", "cuccaro", "qv")


def generate(name: str, q: int, seed: int = 0, **params: float) -> Circuit:
    """Build a named benchmark sized to at most ``q`` qubits.

    Adders round down to the nearest size their layout allows.
    """
    if name == "qgf":
        g = int(params.get("g", 20 * q))
        return random_qgf(q, g, float(params.get("f", 0.5)), seed)
    if name == "random":
        depth = int(params.get("depth", params.get("depth_factor", 2) * q))
        return random_by_depth(q, depth, float(params.get("f", 0.5)), seed)
    if name == "qft":
        return qft(q)
    if name == "draper":
        return draper_adder(q // 2)
    if name == "cuccaro":
        return cuccaro_adder((q - 2) // 2)
    if name == "qv":
        return quantum_volume(q, seed)
    raise ValueError(f"unknown benchmark {name!r}; choose from {', '.join(BENCHMARKS)}")

"""Closed-form non-local communication estimates for (q, g, f) random circuits.

The architecture is assumed to be ``n_cores`` equal cores of ``q / n_cores``
qubits each, fully occupied by the circuit's qubits.
"""

from __future__ import annotations

from dataclasses import dataclass


def _check(q: int, g: float, f: float, n_cores: int) -> None:
    if q < 2:
        raise ValueError("q must be >= 2")
    if n_cores < 1:
        raise ValueError("n_cores must be >= 1")
    if q % n_cores:
        raise ValueError(f"q={q} is not divisible by n_cores={n_cores}")
    if not 0.0 <= f <= 1.0:
        raise ValueError("f must lie in [0, 1]")
    if g < 0:
        raise ValueError("g must be non-negative")


def expected_unfeasible_qubits_per_slice(q: int, g: float, f: float, n_cores: int, t: float) -> float:
    """Expected qubits in cross-core two-qubit gates per slice of a ``t``-slice circuit."""
    _check(q, g, f, n_cores)
    if t < 1:
        raise ValueError("t must be >= 1")
    return 2 * (n_cores - 1) * g * f * q / (n_cores * (q - 1) * t)


def comm_upper_bound(q: int, g: float, f: float, n_cores: int) -> float:
    """Expected communications of the naive mapper: two moves per unfeasible gate."""
    _check(q, g, f, n_cores)
    return 2 * (n_cores - 1) * g * f * q / (n_cores * (q - 1))


def comm_lower_bound(q: int, g: float, f: float, n_cores: int) -> float:
    """One move per unfeasible gate; the best any look-ahead-free mapper can expect."""
    _check(q, g, f, n_cores)
    return (n_cores - 1) * g * f * q / (n_cores * (q - 1))


@dataclass(frozen=True)
class BoundsReport:
    q: int
    g: float
    f: float
    n_cores: int
    lower: float
    upper: float
    expected_unfeasible_per_slice: float | None = None


def bounds_report(q: int, g: float, f: float, n_cores: int, t: float | None = None) -> BoundsReport:
    per_slice = None if t is None else expected_unfeasible_qubits_per_slice(q, g, f, n_cores, t)
    return BoundsReport(
        q, g, f, n_cores,
        comm_lower_bound(q, g, f, n_cores),
        comm_upper_bound(q, g, f, n_cores),
        per_slice,
    )


def sweep_cores(q: int, g: float, f: float, cores: list[int]) -> list[BoundsReport]:
    """Fixed architecture size split over a varying number of cores."""
    return [bounds_report(q, g, f, n) for n in cores if q % n == 0]


def sweep_strong(capacity: int, f: float, cores: list[int], gates_per_qubit: float = 20) -> list[BoundsReport]:
    """Fixed core size; circuit grows with the architecture (``g = 20 q`` by default)."""
    out = []
    for n in cores:
        q = n * capacity
        out.append(bounds_report(q, gates_per_qubit * q, f, n))
    return out

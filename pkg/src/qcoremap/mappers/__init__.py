"""Multi-core mappers and the shared assignment model."""

from __future__ import annotations

from ..circuit import DEFAULT_SIGMA, TimeslicedCircuit
from .base import (
    Architecture,
    Assignment,
    AssignmentSequence,
    MappingError,
    MappingResult,
    count_comms,
    fit_slices,
    is_valid,
    repair,
)
from .fgp import map_fgp_roee
from .hqa import build_cost_matrix, hqa_attraction, map_hqa
from .naive import map_naive

ALGORITHMS = ("naive", "fgp-roee", "hqa", "hqa-noattr", "hqa-random-init")


def run_mapper(
    algorithm: str,
    tsc: TimeslicedCircuit,
    arch: Architecture,
    seed: int = 0,
    sigma: int | None = DEFAULT_SIGMA,
) -> MappingResult:
    """Dispatch by algorithm name (see ``ALGORITHMS``)."""
    if algorithm == "naive":
        return map_naive(tsc, arch, seed)
    if algorithm == "fgp-roee":
        return map_fgp_roee(tsc, arch, sigma, seed)
    if algorithm == "hqa":
        return map_hqa(tsc, arch, True, "oee", sigma, seed)
    if algorithm == "hqa-noattr":
        return map_hqa(tsc, arch, False, "oee", sigma, seed)
    if algorithm == "hqa-random-init":
        return map_hqa(tsc, arch, True, "random", sigma, seed)
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {', '.join(ALGORITHMS)}")


__all__ = [
    "ALGORITHMS",
    "Architecture",
    "Assignment",
    "AssignmentSequence",
    "MappingError",
    "MappingResult",
    "build_cost_matrix",
    "count_comms",
    "fit_slices",
    "hqa_attraction",
    "is_valid",
    "map_fgp_roee",
    "map_hqa",
    "map_naive",
    "repair",
    "run_mapper",
]

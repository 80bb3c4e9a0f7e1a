"""Exact rectangular linear assignment (Hungarian / shortest augmenting path).

Forbidden entries are ``math.inf`` in a :class:`CostMatrix`.  The solver
replaces them with a finite sentinel large enough that any matching using
fewer forbidden cells is cheaper, then rejects solutions that still pick
one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

FORBIDDEN = math.inf


class InfeasibleAssignmentError(ValueError):
    def __init__(self, row: int):
        self.row = row
        super().__init__(f"row {row} cannot be assigned without using a forbidden entry")


@dataclass(frozen=True)
class CostMatrix:
    cost: np.ndarray

    def __post_init__(self) -> None:
        arr = np.array(self.cost, dtype=float)
        if arr.size == 0 and arr.ndim != 2:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("cost matrix must be 2-D")
        finite = arr[np.isfinite(arr)]
        if np.isnan(arr).any() or (finite < 0).any() or (np.isinf(arr) & (arr < 0)).any():
            raise ValueError("costs must be non-negative (or FORBIDDEN)")
        arr.setflags(write=False)
        object.__setattr__(self, "cost", arr)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[float]], n_cols: int | None = None) -> CostMatrix:
        if not rows:
            return cls(np.zeros((0, n_cols or 0)))
        return cls(np.array(rows, dtype=float))

    @property
    def rows(self) -> int:
        return self.cost.shape[0]

    @property
    def cols(self) -> int:
        return self.cost.shape[1]


def _hungarian(a: list[list[float]]) -> list[int]:
    """Min-cost matching of every row of an ``n x m`` matrix, ``n <= m``.

    Classic potentials formulation; ties resolve to the lowest column index.
    Returns the column assigned to each row.
    """
    n, m = len(a), len(a[0])
    inf = math.inf
    u = [0.0] * (n + 1)
    v = [0.0] * (m + 1)
    p = [0] * (m + 1)  # p[j]: row (1-based) matched to column j
    way = [0] * (m + 1)
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            row = a[i0 - 1]
            ui0 = u[i0]
            delta = inf
            j1 = 0
            for j in range(1, m + 1):
                if not used[j]:
                    cur = row[j - 1] - ui0 - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    col_of = [-1] * n
    for j in range(1, m + 1):
        if p[j]:
            col_of[p[j] - 1] = j - 1
    return col_of


def solve_assignment(matrix: CostMatrix | Sequence[Sequence[float]]) -> tuple[dict[int, int], float]:
    """Minimum-cost injective matching between rows and columns.

    Matches ``min(rows, usable columns)`` pairs, where a column is usable
    unless every entry in it is forbidden.  With more rows than usable
    columns each usable column receives exactly one row and the remaining
    rows are left out of the returned map.

    Raises :class:`InfeasibleAssignmentError` if no such matching avoids
    forbidden entries.
    """
    if not isinstance(matrix, CostMatrix):
        matrix = CostMatrix(matrix)
    cost = matrix.cost
    if cost.shape[0] == 0 or cost.shape[1] == 0:
        return {}, 0.0
    allowed = np.isfinite(cost)
    usable = np.flatnonzero(allowed.any(axis=0))
    if usable.size == 0:
        raise InfeasibleAssignmentError(0)
    sub = cost[:, usable]
    sub_allowed = allowed[:, usable]
    finite = sub[sub_allowed]
    sentinel = (sub.shape[0] + sub.shape[1]) * (1.0 + float(finite.max()))
    work = np.where(sub_allowed, sub, sentinel)

    transposed = work.shape[0] > work.shape[1]
    grid = (work.T if transposed else work).tolist()
    matched = _hungarian(grid)
    if transposed:
        pairs = [(r, c) for c, r in enumerate(matched)]
    else:
        pairs = list(enumerate(matched))

    mapping: dict[int, int] = {}
    total = 0.0
    for r, c in sorted(pairs):
        if not sub_allowed[r, c]:
            raise InfeasibleAssignmentError(r)
        mapping[r] = int(usable[c])
        total += float(sub[r, c])
    return mapping, total

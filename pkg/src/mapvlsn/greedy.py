"""Greedy MAP heuristic: take the cheapest cell still compatible with the
cells already chosen, n times.
"""

from __future__ import annotations

import numpy as np

from .tensor import Assignment, CostTensor, evaluate


def greedy_solve(tensor: CostTensor) -> tuple[Assignment, float]:
    """Return the greedy assignment and its objective.

    Cells are visited once in ascending cost order (a stable sort, so equal
    costs keep lexicographic index order); a cell is taken when none of its
    coordinates is used yet. This picks exactly the minimum of the surviving
    submatrix at every round without copying it.
    """
    n, m = tensor.card, tensor.dims
    flat = tensor.costs.ravel()
    order = np.argsort(flat, kind="stable")
    used = np.zeros((m, n), dtype=bool)
    chosen = np.empty((n, m), dtype=np.intp)
    picked = 0
    dim_rows = np.arange(m)
    # Walk the sorted cells in blocks to keep the Python loop short.
    block = max(4 * n, 1024)
    for start in range(0, flat.size, block):
        coords = np.stack(np.unravel_index(order[start : start + block], tensor.costs.shape), axis=1)
        while picked < n and len(coords):
            free = ~used[dim_rows, coords].any(axis=1)
            if not free.any():
                break
            first = int(np.argmax(free))
            cell = coords[first]
            used[dim_rows, cell] = True
            chosen[picked] = cell
            picked += 1
            coords = coords[first + 1 :]
        if picked == n:
            break
    assignment = Assignment.from_cells(chosen)
    return assignment, evaluate(tensor, assignment)


def greedy_reference(tensor: CostTensor) -> tuple[Assignment, float]:
    """Round-by-round greedy that re-scans the surviving submatrix each round.

    Slow (n full scans); kept as an independent check of ``greedy_solve``.
    """
    n, m = tensor.card, tensor.dims
    avail = [list(range(n)) for _ in range(m)]
    chosen = []
    for _ in range(n):
        sub = tensor.costs[np.ix_(*avail)]
        local = np.unravel_index(int(np.argmin(sub)), sub.shape)
        cell = [avail[d][local[d]] for d in range(m)]
        chosen.append(cell)
        for d in range(m):
            avail[d].remove(cell[d])
    assignment = Assignment.from_cells(chosen)
    return assignment, evaluate(tensor, assignment)

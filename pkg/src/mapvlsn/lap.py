"""Exact linear assignment (the VLSN inner kernel).

A shortest-augmenting-path Hungarian method with dual potentials, O(n^3).
Ties are resolved afterwards: among all optimal permutations the
lexicographically smallest one is returned, found as the lexicographically
smallest perfect matching in the graph of zero-reduced-cost edges.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyMatrixError, ValidationError


@dataclass(frozen=True)
class LapSolution:
    perm: np.ndarray  # perm[i] = column assigned to row i (0-based)
    value: float

    def one_based(self) -> tuple[int, ...]:
        return tuple(int(j) + 1 for j in self.perm)


def _hungarian(a: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Return (row -> column assignment, row potentials, column potentials).

    Reduced costs ``a[i, j] - u[i] - v[j]`` are >= 0 up to rounding and zero
    on assigned edges.
    """
    n = a.shape[0]
    inf = np.inf
    # 1-based with a sentinel column 0, as in the classical formulation.
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    p = np.zeros(n + 1, dtype=np.intp)  # p[j]: row matched to column j
    way = np.zeros(n + 1, dtype=np.intp)
    cost = np.zeros((n + 1, n + 1))
    cost[1:, 1:] = a
    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = np.full(n + 1, inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = p[j0]
            free = ~used
            free[0] = False
            cur = cost[i0] - u[i0] - v
            better = free & (cur < minv)
            minv[better] = cur[better]
            way[better] = j0
            cand = np.where(free, minv, inf)
            j1 = int(np.argmin(cand))
            delta = cand[j1]
            u[p[used]] += delta
            v[used] -= delta
            minv[free] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
    row_to_col = np.empty(n, dtype=np.intp)
    row_to_col[p[1:] - 1] = np.arange(n)
    return row_to_col, u[1:], v[1:]


def _lex_smallest_matching(tight: np.ndarray, row_to_col: np.ndarray) -> np.ndarray:
    """Lexicographically smallest perfect matching of a bipartite graph.

    ``tight`` is the boolean adjacency matrix; ``row_to_col`` is any perfect
    matching inside it. Rows are fixed in order; row ``i`` takes the
    smallest column for which an alternating cycle through the unfixed part
    of the graph exists.
    """
    n = tight.shape[0]
    match_row = row_to_col.copy()
    match_col = np.empty(n, dtype=np.intp)
    match_col[match_row] = np.arange(n)
    col_fixed = np.zeros(n, dtype=bool)
    adj = [np.flatnonzero(tight[i]) for i in range(n)]
    for i in range(n):
        target = match_row[i]
        for j in adj[i]:
            if col_fixed[j] or j == target:
                if j == target:
                    break
                continue
            # Re-home the row holding j, ending at the column i gives up.
            start = match_col[j]
            parent = {}  # column -> (row that reaches it)
            seen = np.zeros(n, dtype=bool)
            seen[j] = True
            frontier = [start]
            found = False
            while frontier and not found:
                nxt = []
                for r in frontier:
                    for c in adj[r]:
                        if col_fixed[c] or seen[c]:
                            continue
                        seen[c] = True
                        parent[c] = r
                        if c == target:
                            found = True
                            break
                        nxt.append(match_col[c])
                    if found:
                        break
                frontier = nxt
            if not found:
                continue
            c = target
            while True:
                r = parent[c]
                prev = match_row[r]
                match_row[r] = c
                match_col[c] = r
                if r == start:
                    break
                c = prev
            match_row[i] = j
            match_col[j] = i
            break
        col_fixed[match_row[i]] = True
    return match_row


def solve_lap(matrix) -> LapSolution:
    """Minimize ``sum_i b[i, perm[i]]`` over permutations of a square matrix.

    Negative entries are allowed. The returned permutation is the
    lexicographically smallest optimal one.
    """
    b = np.asarray(matrix, dtype=np.float64)
    if b.size == 0:
        raise EmptyMatrixError("cannot solve an empty assignment problem")
    if b.ndim != 2 or b.shape[0] != b.shape[1]:
        raise ValidationError(f"LAP matrix must be square, got shape {b.shape}")
    if not np.all(np.isfinite(b)):
        raise ValidationError("LAP matrix entries must be finite")
    n = b.shape[0]
    if n == 1:
        return LapSolution(np.zeros(1, dtype=np.intp), float(b[0, 0]))

    rows = np.arange(n)
    base, u, v = _hungarian(b)
    base_value = float(b[rows, base].sum())

    reduced = b - u[:, None] - v[None, :]
    tol = 1e-11 * n * (1.0 + float(np.abs(b).max()))
    tight = reduced <= tol
    tight[rows, base] = True
    perm = _lex_smallest_matching(tight, base)
    value = float(b[rows, perm].sum())
    if value > base_value:
        # Rounding admitted an edge that is not truly optimal.
        perm, value = base, base_value
    return LapSolution(perm, value)


def brute_force_lap(matrix) -> LapSolution:
    """Reference solver enumerating all n! permutations in lexicographic order."""
    from itertools import permutations

    b = np.asarray(matrix, dtype=np.float64)
    n = b.shape[0]
    if n == 0:
        raise EmptyMatrixError("cannot solve an empty assignment problem")
    perms = np.array(list(permutations(range(n))), dtype=np.intp)
    values = b[np.arange(n), perms].sum(axis=1)
    best = int(np.argmin(values))
    return LapSolution(perms[best], float(values[best]))

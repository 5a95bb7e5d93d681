"""Exact MAP solutions for small instances and LP-format export."""

from __future__ import annotations

import itertools
import math
import os

import numpy as np

from .errors import TooLargeForExactError
from .tensor import Assignment, CostTensor, format_number

DEFAULT_ENUMERATION_CAP = 10**8


def brute_force(tensor: CostTensor, cap: int = DEFAULT_ENUMERATION_CAP) -> tuple[Assignment, float]:
    """Global optimum by enumerating all (n!)^(M-1) permutation tuples.

    Tuples are visited in lexicographic order and only a strictly better
    value replaces the incumbent, so ties go to the lexicographically
    smallest tuple. The last dimension is vectorized over all n!
    permutations at once.
    """
    n, m = tensor.card, tensor.dims
    total = math.factorial(n) ** (m - 1)
    if total > cap:
        raise TooLargeForExactError(f"(n!)^(M-1) = {total} assignments exceeds the enumeration cap of {cap}")
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
    rows = np.arange(n)
    costs = tensor.costs
    best_value = np.inf
    best = None
    for prefix in itertools.product(range(len(perms)), repeat=m - 2):
        idx = (rows,) + tuple(perms[p] for p in prefix) + (perms,)
        values = costs[idx].sum(axis=1)
        j = int(np.argmin(values))
        if values[j] < best_value:
            best_value = float(values[j])
            best = prefix + (j,)
    assignment = Assignment(np.array([perms[p] for p in best]))
    return assignment, best_value


def _var(cell) -> str:
    return "x_" + "_".join(str(int(i) + 1) for i in cell)


def format_lp(tensor: CostTensor) -> str:
    """The MAP as a 0-1 integer program in CPLEX LP text format."""
    n, m = tensor.card, tensor.dims
    cells = list(itertools.product(range(n), repeat=m))
    lines = [f"\\ axial MAP, M = {m}, n = {n}", "Minimize"]
    terms = [f"{format_number(tensor.costs[c])} {_var(c)}" for c in cells]
    lines.append(" obj: " + _wrap(terms))
    lines.append("Subject To")
    for d in range(m):
        for i in range(n):
            members = [_var(c) for c in cells if c[d] == i]
            lines.append(f" d{d + 1}_{i + 1}: " + _wrap(members, joiner=" + ") + " = 1")
    lines.append("Binary")
    lines.extend(" " + _var(c) for c in cells)
    lines.append("End")
    return "\n".join(lines) + "\n"


def _wrap(terms: list[str], joiner: str = " + ", width: int = 8) -> str:
    # LP readers cap line length; break long sums over continuation lines.
    chunks = [joiner.join(terms[i : i + width]) for i in range(0, len(terms), width)]
    return (joiner.rstrip() + "\n   ").join(chunks).replace("+ -", "- ")


def export_ilp(tensor: CostTensor, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_lp(tensor))

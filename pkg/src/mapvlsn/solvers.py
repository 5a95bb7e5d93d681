"""Uniform entry point for every MAP algorithm by name."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ValidationError
from .exact import brute_force
from .genetic import evolve, preset
from .greedy import greedy_solve
from .multistart import StartStrategy, multi_start_solve
from .tensor import Assignment, CostTensor
from .vlsn import DescentTrace, VlsnConfig

ALGORITHMS = ("greedy", "vlsn1", "vlsnms", "grid-vlsn", "greedy-vlsn", "ga1", "ga2", "exact")
VLSN_ALGORITHMS = ("vlsn1", "vlsnms", "grid-vlsn", "greedy-vlsn")


@dataclass
class SolveResult:
    algo: str
    assignment: Assignment
    value: float
    nodes: int  # LAP solves (VLSN), fitness evaluations (GA), enumerated tuples (exact), picks (greedy)
    traces: list[DescentTrace] = field(default_factory=list)
    best_index: int = 0


def run(
    tensor: CostTensor,
    algo: str,
    *,
    variant: str = "steepest",
    starts: int = 8,
    grid_cap: int | None = None,
    budget: int | None = None,
    seed: int = 0,
    threads: int = 1,
) -> SolveResult:
    if algo == "greedy":
        assignment, value = greedy_solve(tensor)
        return SolveResult(algo, assignment, value, tensor.card)
    if algo == "exact":
        assignment, value = brute_force(tensor)
        return SolveResult(algo, assignment, value, math.factorial(tensor.card) ** (tensor.dims - 1))
    if algo in ("ga1", "ga2"):
        res = evolve(tensor, preset(algo, seed=seed))
        return SolveResult(algo, res.assignment, res.value, res.evaluations)
    strategies = {
        "vlsn1": StartStrategy("single-identity"),
        "vlsnms": StartStrategy("random", count=starts, seed=seed),
        "grid-vlsn": StartStrategy("grid", cap=grid_cap),
        "greedy-vlsn": StartStrategy("greedy-start"),
    }
    if algo not in strategies:
        raise ValidationError(f"unknown algorithm {algo!r}; expected one of {ALGORITHMS}")
    config = VlsnConfig(variant=variant, budget=budget, seed=seed)
    res = multi_start_solve(tensor, strategies[algo], config, threads=threads)
    return SolveResult(algo, res.assignment, res.value, res.lap_solves, res.traces, res.best_index)

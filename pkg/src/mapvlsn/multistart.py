"""Starting-solution strategies and multi-start VLSN runs."""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import ValidationError
from .greedy import greedy_solve
from .tensor import Assignment, CostTensor
from .vlsn import DescentTrace, VlsnConfig, descend

STRATEGIES = ("single-identity", "random", "grid", "greedy-start")


def push_up(perm: Sequence, k: int) -> tuple:
    """Cyclic shift: ``out[i] = perm[i + k]`` with wrap-around."""
    n = len(perm)
    if not 1 <= k <= n - 1:
        raise ValidationError(f"push offset must be in 1..{n - 1}, got {k}")
    return tuple(perm[k:]) + tuple(perm[:k])


def push_down(perm: Sequence, k: int) -> tuple:
    """Inverse of :func:`push_up`: ``out[i] = perm[i - k]`` with wrap-around."""
    n = len(perm)
    if not 1 <= k <= n - 1:
        raise ValidationError(f"push offset must be in 1..{n - 1}, got {k}")
    return tuple(perm[n - k :]) + tuple(perm[: n - k])


def _normalize(first: np.ndarray, others: Sequence[np.ndarray]) -> Assignment:
    # Rows (first[i], others[0][i], ...) re-keyed so dimension 1 is the identity.
    inv = np.argsort(first)
    return Assignment(np.array([p[inv] for p in others]))


def grid_starts(dims: int, card: int, base: Sequence[int] | None = None, cap: int | None = None) -> Iterator[Assignment]:
    """Lazily enumerate the deterministic grid of starting solutions.

    ``base`` is 0-based (default identity). Every free dimension takes one of
    the n cyclic shifts of ``base`` (shift 0 first); tuples are produced in
    lexicographic order of the shift offsets, n^(M-1) of them unless capped.
    """
    base_arr = np.arange(card) if base is None else np.asarray(base, dtype=np.intp)
    if sorted(base_arr.tolist()) != list(range(card)):
        raise ValidationError("base must be a permutation")
    shifts = [base_arr] + [np.asarray(push_up(base_arr, k), dtype=np.intp) for k in range(1, card)]
    choices = itertools.product(range(card), repeat=dims - 1)
    if cap is not None:
        choices = itertools.islice(choices, cap)
    for combo in choices:
        yield _normalize(base_arr, [shifts[c] for c in combo])


def grid_size(dims: int, card: int, cap: int | None = None) -> int:
    full = card ** (dims - 1)
    return full if cap is None else min(cap, full)


def random_starts(dims: int, card: int, count: int, seed: int) -> list[Assignment]:
    """``count`` solutions of M-1 independent uniform permutations each."""
    if count < 1:
        raise ValidationError("need at least one random start")
    rng = np.random.default_rng(seed)
    return [Assignment(np.array([rng.permutation(card) for _ in range(dims - 1)])) for _ in range(count)]


@dataclass(frozen=True)
class StartStrategy:
    tag: str = "single-identity"
    count: int = 1  # random starts
    cap: int | None = None  # grid truncation
    seed: int = 0

    def __post_init__(self):
        if self.tag not in STRATEGIES:
            raise ValidationError(f"unknown start strategy {self.tag!r}")
        if self.tag == "random" and self.count < 1:
            raise ValidationError("random strategy needs count >= 1")
        if self.cap is not None and self.cap < 1:
            raise ValidationError("grid cap must be >= 1")

    def starts(self, tensor: CostTensor) -> list[Assignment]:
        m, n = tensor.dims, tensor.card
        if self.tag == "single-identity":
            return [Assignment.identity(m, n)]
        if self.tag == "random":
            return random_starts(m, n, self.count, self.seed)
        if self.tag == "grid":
            return list(grid_starts(m, n, cap=self.cap))
        return [greedy_solve(tensor)[0]]


@dataclass
class MultiStartResult:
    assignment: Assignment
    value: float
    traces: list[DescentTrace]
    best_index: int

    @property
    def lap_solves(self) -> int:
        return sum(t.lap_solves for t in self.traces)


def multi_start_solve(
    tensor: CostTensor,
    strategy: StartStrategy,
    config: VlsnConfig | None = None,
    threads: int = 1,
) -> MultiStartResult:
    """Descend from every start; keep the best (earliest start on ties)."""
    config = config or VlsnConfig()
    starts = strategy.starts(tensor)

    def run(start):
        return descend(tensor, start, config)

    if threads > 1 and len(starts) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, starts))
    else:
        results = [run(s) for s in starts]

    best = 0
    for i, (_, value, _) in enumerate(results):
        if value < results[best][1]:
            best = i
    assignment, value, _ = results[best]
    return MultiStartResult(assignment, value, [r[2] for r in results], best)

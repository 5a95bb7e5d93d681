"""Very large-scale neighborhood (VLSN) descent for the axial MAP.

A move frees one dimension k of the current solution, projects the tensor
onto an n x n matrix along the other dimensions and re-optimizes that
dimension's permutation exactly with a LAP solve. Each move therefore scans
n! neighbors at once.

The module also records, for every accepted move, how many dimensions were
improving before it (the solution's "level"), and turns batches of such
traces into the expected-transition bound of the level Markov chain.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionError, UndefinedBoundError, ValidationError
from .lap import solve_lap
from .tensor import Assignment, CostTensor, check_compatible, evaluate, format_number

VARIANT_ALIASES = {
    "steepest": "steepest",
    "best": "best",
    "best-improvement-taboo": "best",
    "first": "first",
    "first-improvement-taboo": "first",
    "random": "random",
    "random-improving-taboo": "random",
}
SCAN_ORDERS = ("ascending", "restart")


@dataclass(frozen=True)
class VlsnConfig:
    """Descent settings.

    ``budget`` caps the number of LAP solves (explored neighborhoods) of one
    descent. ``scan`` only matters for the first-improvement variant:
    ``"ascending"`` continues cyclically after the last moved dimension,
    ``"restart"`` always scans from dimension 1. ``track_levels`` makes the
    first-improvement variant solve the dimensions it skipped so that every
    step carries an exact level; those extra solves are instrumentation and
    are not charged to the budget.
    """

    variant: str = "steepest"
    budget: int | None = None
    seed: int = 0
    scan: str = "ascending"
    track_levels: bool = False

    def __post_init__(self):
        if self.variant not in VARIANT_ALIASES:
            raise ValidationError(f"unknown VLSN variant {self.variant!r}")
        object.__setattr__(self, "variant", VARIANT_ALIASES[self.variant])
        if self.budget is not None and self.budget < 1:
            raise ValidationError("budget must be >= 1")
        if self.scan not in SCAN_ORDERS:
            raise ValidationError(f"unknown scan order {self.scan!r}")


@dataclass(frozen=True)
class TraceStep:
    iteration: int
    dim: int  # 1-based dimension that was re-optimized
    objective: float  # objective after the move
    level: int | None  # improving dimensions before the move


@dataclass
class DescentTrace:
    start: float
    final: float = float("nan")
    steps: list[TraceStep] = field(default_factory=list)
    lap_solves: int = 0
    projections: int = 0
    instrument_solves: int = 0
    budget_terminated: bool = False
    final_level: int | None = None  # 0 when the descent ended at a local optimum

    @property
    def moves(self) -> int:
        return len(self.steps)

    def levels(self) -> list[int | None]:
        """Level sequence including the terminal node (when known)."""
        seq = [s.level for s in self.steps]
        if not self.budget_terminated:
            seq.append(self.final_level)
        return seq


def project(tensor: CostTensor, solution: Assignment, k: int) -> np.ndarray:
    """n x n matrix obtained by freeing dimension ``k`` (1-based) of ``solution``.

    For k >= 2 entry [i, j] is the cost of row i's cell with coordinate k
    replaced by j. For k = 1 entry [i, j] is the cost of the cell of row j
    with its first coordinate replaced by i.
    """
    check_compatible(tensor, solution)
    m, n = tensor.dims, tensor.card
    if not 1 <= k <= m:
        raise DimensionError(f"dimension {k} out of range 1..{m}")
    ar = np.arange(n)
    perms = solution.perms
    if k == 1:
        idx = (ar[:, None],) + tuple(p[None, :] for p in perms)
    else:
        idx = [ar[:, None]] + [p[:, None] for p in perms]
        idx[k - 1] = ar[None, :]
        idx = tuple(idx)
    return tensor.costs[idx]


def _apply(perms: np.ndarray, k: int, sigma: np.ndarray) -> np.ndarray:
    if k == 1:
        # Row i now takes the old cell of row sigma[i] in dimensions 2..M,
        # which keeps dimension 1 as the identity.
        return perms[:, sigma]
    out = perms.copy()
    out[k - 2] = sigma
    return out


def _solve_dim(tensor, perms, k):
    return solve_lap(project(tensor, Assignment(perms), k))


def count_improving_dimensions(tensor: CostTensor, solution: Assignment) -> int:
    """Number of dimensions whose LAP re-solve strictly lowers the objective."""
    y = evaluate(tensor, solution)
    perms = solution.perms
    return sum(_solve_dim(tensor, perms, k).value < y for k in range(1, tensor.dims + 1))


def descend(
    tensor: CostTensor, start: Assignment, config: VlsnConfig | None = None
) -> tuple[Assignment, float, DescentTrace]:
    """Run one VLSN descent from ``start`` until no dimension improves.

    Moves are accepted only when they strictly lower the objective. The
    ``best``, ``first`` and ``random`` variants skip the dimension moved last
    for exactly one iteration (it cannot improve right after being solved).
    """
    config = config or VlsnConfig()
    check_compatible(tensor, start)
    m = tensor.dims
    rng = np.random.default_rng(config.seed)
    perms = np.array(start.perms)
    y = evaluate(tensor, start)
    trace = DescentTrace(start=y)
    taboo: int | None = None
    last: int | None = None
    iteration = 0

    while True:
        if config.variant == "steepest" or taboo is None:
            candidates = list(range(1, m + 1))
        else:
            candidates = [k for k in range(1, m + 1) if k != taboo]
        if config.variant == "first":
            if config.scan == "ascending" and last is not None:
                candidates.sort(key=lambda k: (k - last - 1) % m)

        solved: dict[int, tuple[np.ndarray, float]] = {}
        exhausted = False
        chosen: int | None = None
        for k in candidates:
            if config.budget is not None and trace.lap_solves >= config.budget:
                exhausted = True
                break
            sol = _solve_dim(tensor, perms, k)
            trace.projections += 1
            trace.lap_solves += 1
            solved[k] = (sol.perm, sol.value)
            if config.variant == "first" and sol.value < y:
                chosen = k
                break

        if exhausted:
            trace.budget_terminated = True
            break

        if config.variant == "first":
            level = None
            if chosen is None:
                level = 0
            elif config.track_levels:
                for k in candidates:
                    if k not in solved:
                        sol = _solve_dim(tensor, perms, k)
                        trace.instrument_solves += 1
                        solved[k] = (sol.perm, sol.value)
                level = sum(v < y for _, v in solved.values())
        else:
            improving = [k for k in candidates if solved[k][1] < y]
            level = len(improving)
            if improving:
                if config.variant == "random":
                    chosen = improving[int(rng.integers(len(improving)))]
                else:
                    # min over dimensions; lowest dimension on ties
                    chosen = min(improving, key=lambda k: (solved[k][1], k))

        if chosen is None:
            trace.final_level = 0
            break

        sigma, y_new = solved[chosen]
        perms = _apply(perms, chosen, sigma)
        y = y_new
        iteration += 1
        trace.steps.append(TraceStep(iteration, chosen, y, level))
        last = chosen
        taboo = chosen

    trace.final = y
    return Assignment(perms), y, trace


def level_bound(p_diag: Sequence[float], m: int) -> np.ndarray:
    """Expected transitions nu_0..nu_M of the simplified level chain.

    ``p_diag[i]`` is the probability of staying at level i, for 1 <= i < M
    (other entries are ignored).
    """
    nu = np.zeros(m + 1)
    for i in range(1, m):
        p = float(p_diag[i])
        if p >= 1.0:
            raise UndefinedBoundError(i)
        nu[i] = nu[i - 1] + 1.0 / (1.0 - p)
    nu[m] = 1.0 + nu[m - 1]
    return nu


def estimate_level_bound(traces: Iterable[DescentTrace], m: int) -> tuple[np.ndarray, np.ndarray]:
    """Estimate self-transition probabilities from traces and return (p_hat, nu).

    ``p_hat[i]`` = (moves from level i that stay at level i) / (moves from
    level i) for 1 <= i < M. Levels never departed from get 0. ``p_hat[0]``
    is 1 (absorbing) and ``p_hat[M]`` is 0 (the top level is always left).
    """
    departures = np.zeros(m + 1, dtype=np.int64)
    stays = np.zeros(m + 1, dtype=np.int64)
    for trace in traces:
        seq = trace.levels()
        if any(level is None for level in seq):
            raise ValidationError("trace has steps without a recorded level")
        for a, b in zip(seq, seq[1:]):
            if 0 < a < m:
                departures[a] += 1
                stays[a] += a == b
    p_hat = np.zeros(m + 1)
    p_hat[0] = 1.0
    mask = departures > 0
    p_hat[mask] = stays[mask] / departures[mask]
    p_hat[0], p_hat[m] = 1.0, 0.0
    return p_hat, level_bound(p_hat, m)


def format_trace(trace: DescentTrace) -> str:
    out = [
        f"trace start {format_number(trace.start)} final {format_number(trace.final)} "
        f"lap_solves {trace.lap_solves} budget_terminated {int(trace.budget_terminated)}"
    ]
    for s in trace.steps:
        level = "-" if s.level is None else str(s.level)
        out.append(f"{s.iteration} {s.dim} {format_number(s.objective)} {level}")
    return "\n".join(out) + "\n"


def parse_trace(text: str) -> DescentTrace:
    lines = text.splitlines()
    head = lines[0].split()
    if len(head) != 9 or head[0] != "trace":
        raise ValidationError(f"malformed trace header {lines[0]!r}")
    trace = DescentTrace(
        start=float(head[2]),
        final=float(head[4]),
        lap_solves=int(head[6]),
        budget_terminated=bool(int(head[8])),
    )
    for line in lines[1:]:
        if not line.strip():
            continue
        it, dim, obj, level = line.split()
        trace.steps.append(TraceStep(int(it), int(dim), float(obj), None if level == "-" else int(level)))
    if not trace.budget_terminated:
        trace.final_level = 0
    return trace


def write_trace(trace: DescentTrace, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_trace(trace))

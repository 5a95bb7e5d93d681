"""Column-permutation genetic algorithms (GA1 / GA2 presets).

A chromosome is an ``n x M`` integer matrix whose columns are permutations;
row r is one selected cell. Crossover copies whole columns from either
parent, so children are always feasible. There is no mutation operator;
fresh random chromosomes refill the population every generation.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import ValidationError
from .tensor import Assignment, CostTensor, evaluate


@dataclass(frozen=True)
class GaParams:
    elite: float = 60.0  # p: parent pool, percent of population
    carry: float = 20.0  # q: survivors copied unchanged, percent
    crossover: float = 60.0  # r: offspring, percent
    generations: int = 2000
    population: int = 100
    seed: int = 0

    def __post_init__(self):
        for name in ("elite", "carry", "crossover"):
            value = getattr(self, name)
            if not 0 < value <= 100:
                raise ValidationError(f"{name} must be in (0, 100], got {value}")
        if not self.carry < self.elite:
            raise ValidationError("carry-over fraction must be below the elite fraction")
        if self.generations < 1 or self.population < 1:
            raise ValidationError("generations and population must be >= 1")

    def counts(self) -> tuple[int, int, int]:
        """(parent pool, survivors, offspring) sizes for one generation.

        Fractions are floored; pool and survivors never drop below one so the
        best individual always survives.
        """
        pop = self.population
        pool = max(1, int(self.elite * pop // 100))
        keep = max(1, int(self.carry * pop // 100))
        kids = min(int(self.crossover * pop // 100), pop - keep)
        return pool, keep, kids


PRESETS = {
    "ga1": GaParams(elite=60.0, carry=20.0, crossover=60.0, generations=2000),
    "ga2": GaParams(elite=40.0, carry=20.0, crossover=60.0, generations=5000),
}


def preset(name: str, **overrides) -> GaParams:
    try:
        base = PRESETS[name.lower()]
    except KeyError:
        raise ValidationError(f"unknown GA preset {name!r}; expected one of {sorted(PRESETS)}") from None
    return replace(base, **overrides)


def check_chromosome(chrom: np.ndarray, dims: int, card: int) -> None:
    if chrom.shape != (card, dims):
        raise ValidationError(f"chromosome shape {chrom.shape} does not match ({card}, {dims})")
    expected = np.arange(card)
    for j in range(dims):
        if not np.array_equal(np.sort(chrom[:, j]), expected):
            raise ValidationError(f"chromosome column {j + 1} is not a permutation")


def fitness(tensor: CostTensor, chrom) -> float:
    chrom = np.asarray(chrom, dtype=np.intp)
    check_chromosome(chrom, tensor.dims, tensor.card)
    return float(tensor.costs[tuple(chrom.T)].sum())


def decode(chrom) -> Assignment:
    """Equivalent Assignment: rows re-keyed by their first coordinate."""
    return Assignment.from_cells(np.asarray(chrom, dtype=np.intp))


def encode(assignment: Assignment) -> np.ndarray:
    return assignment.cells()


def random_chromosome(rng: np.random.Generator, dims: int, card: int) -> np.ndarray:
    return np.column_stack([rng.permutation(card) for _ in range(dims)])


def _random_population(rng: np.random.Generator, count: int, dims: int, card: int) -> np.ndarray:
    # argsort of iid keys gives an independent uniform permutation per column
    return rng.random((count, card, dims)).argsort(axis=1)


def crossover(parent_a, parent_b, seed) -> np.ndarray:
    """Child whose column j comes whole from parent a or b with probability 1/2.

    ``seed`` may be an int or a ``numpy.random.Generator``.
    """
    a = np.asarray(parent_a)
    b = np.asarray(parent_b)
    if a.shape != b.shape:
        raise ValidationError(f"parent shapes differ: {a.shape} vs {b.shape}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    take_a = rng.random(a.shape[1]) < 0.5
    return np.where(take_a[None, :], a, b)


@dataclass
class GaResult:
    assignment: Assignment
    value: float
    curve: np.ndarray  # best value after each generation (index 0 = initial population)
    evaluations: int


def _population_fitness(flat_costs: np.ndarray, strides: np.ndarray, pop: np.ndarray) -> np.ndarray:
    # pop: (P, n, M); cells are looked up by their flat C-order index
    return flat_costs[pop @ strides].sum(axis=1)


def evolve(tensor: CostTensor, params: GaParams) -> GaResult:
    m, n = tensor.dims, tensor.card
    rng = np.random.default_rng(params.seed)
    size = params.population
    pool, keep, kids = params.counts()

    flat_costs = tensor.costs.ravel()
    strides = n ** np.arange(m - 1, -1, -1)
    pop = _random_population(rng, size, m, n)
    fit = _population_fitness(flat_costs, strides, pop)
    evaluations = size
    curve = np.empty(params.generations + 1)
    order = np.argsort(fit, kind="stable")
    curve[0] = fit[order[0]]

    for gen in range(1, params.generations + 1):
        survivors = pop[order[:keep]]
        parents = pop[order[:pool]]
        fresh = size - keep - kids
        pa = parents[rng.integers(pool, size=kids)]
        pb = parents[rng.integers(pool, size=kids)]
        take_a = rng.random((kids, m)) < 0.5
        children = np.where(take_a[:, None, :], pa, pb)
        randoms = _random_population(rng, fresh, m, n)
        pop = np.concatenate([survivors, children, randoms])
        new_fit = _population_fitness(flat_costs, strides, pop[keep:])
        evaluations += size - keep
        fit = np.concatenate([fit[order[:keep]], new_fit])
        order = np.argsort(fit, kind="stable")
        curve[gen] = fit[order[0]]

    assignment = decode(pop[order[0]])
    # Re-evaluated so the value matches evaluate() to the last bit.
    return GaResult(assignment, evaluate(tensor, assignment), curve, evaluations)

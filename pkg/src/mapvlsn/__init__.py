"""Solvers for the axial multidimensional assignment problem and their use
for multipartite record linkage."""

from .errors import MapError
from .exact import brute_force, export_ilp
from .genetic import GaParams, crossover, evolve, fitness, preset
from .greedy import greedy_solve
from .lap import LapSolution, solve_lap
from .multistart import StartStrategy, grid_starts, multi_start_solve, push_down, push_up, random_starts
from .tensor import (
    Assignment,
    CostTensor,
    InstanceSeedSpec,
    evaluate,
    generate_instance,
    read_instance,
    read_solution,
    write_instance,
    write_solution,
)
from .vlsn import (
    DescentTrace,
    VlsnConfig,
    count_improving_dimensions,
    descend,
    estimate_level_bound,
    project,
)

__version__ = "0.1.0"

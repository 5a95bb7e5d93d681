"""MAP instances (dense cost tensors), solutions, objective evaluation and file I/O.

Indices are 0-based inside numpy arrays. Every text format written or read
here uses 1-based indices.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    InstanceMismatchError,
    InstanceTooLargeError,
    ParseError,
    ValidationError,
)

DISTRIBUTIONS = ("uniform01", "uint1e6")

# Largest tensor generate_instance will allocate (number of cells).
DEFAULT_MAX_CELLS = 50_000_000


class CostTensor:
    """Dense ``n x n x ... x n`` cost array of an axial MAP instance.

    The underlying array is made read-only so a tensor can be shared freely.
    """

    __slots__ = ("_costs",)

    def __init__(self, costs):
        arr = np.array(costs, dtype=np.float64)  # always a private copy
        if arr.ndim < 2:
            raise ValidationError(f"a MAP instance needs at least 2 dimensions, got {arr.ndim}")
        n = arr.shape[0]
        if n < 1 or any(s != n for s in arr.shape):
            raise ValidationError(f"all dimensions must share one cardinality, got shape {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("costs must be finite")
        arr.setflags(write=False)
        self._costs = arr

    @classmethod
    def from_flat(cls, dims: int, card: int, values: Sequence[float]) -> "CostTensor":
        """Build from a flat lexicographic list (last index varies fastest)."""
        values = np.asarray(values, dtype=np.float64)
        if values.size != card**dims:
            raise ValidationError(f"expected {card**dims} values for M={dims}, n={card}, got {values.size}")
        return cls(values.reshape((card,) * dims))

    @property
    def costs(self) -> np.ndarray:
        return self._costs

    @property
    def dims(self) -> int:
        return self._costs.ndim

    @property
    def card(self) -> int:
        return self._costs.shape[0]

    def __getitem__(self, idx):
        return self._costs[idx]

    def __eq__(self, other):
        if not isinstance(other, CostTensor):
            return NotImplemented
        return self._costs.shape == other._costs.shape and bool(np.array_equal(self._costs, other._costs))

    def __hash__(self):
        return hash((self._costs.shape, self._costs.tobytes()))

    def __repr__(self):
        return f"CostTensor(dims={self.dims}, card={self.card})"


class Assignment:
    """A feasible MAP solution as ``M-1`` permutations.

    ``perms[k]`` holds the permutation of dimension ``k + 2``; dimension 1 is
    the identity and is not stored. Row ``i`` selects the cell
    ``(i, perms[0][i], ..., perms[M-2][i])``.
    """

    __slots__ = ("_perms",)

    def __init__(self, perms):
        arr = np.array(perms, dtype=np.intp)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValidationError(f"perms must be a non-empty (M-1) x n array, got shape {arr.shape}")
        n = arr.shape[1]
        expected = np.arange(n)
        for k, row in enumerate(arr):
            if not np.array_equal(np.sort(row), expected):
                raise ValidationError(f"dimension {k + 2} is not a permutation of 1..{n}: {(row + 1).tolist()}")
        arr.setflags(write=False)
        self._perms = arr

    @classmethod
    def identity(cls, dims: int, card: int) -> "Assignment":
        return cls(np.tile(np.arange(card), (dims - 1, 1)))

    @classmethod
    def from_one_based(cls, perms: Iterable[Sequence[int]]) -> "Assignment":
        return cls(np.asarray([list(p) for p in perms], dtype=np.intp) - 1)

    @classmethod
    def from_cells(cls, cells) -> "Assignment":
        """Build from an ``n x M`` array whose rows are selected cells (any row order)."""
        cells = np.asarray(cells, dtype=np.intp)
        n = cells.shape[0]
        if not np.array_equal(np.sort(cells[:, 0]), np.arange(n)):
            raise ValidationError("first column of cells is not a permutation")
        order = np.argsort(cells[:, 0])
        return cls(cells[order, 1:].T)

    @property
    def perms(self) -> np.ndarray:
        return self._perms

    @property
    def dims(self) -> int:
        return self._perms.shape[0] + 1

    @property
    def card(self) -> int:
        return self._perms.shape[1]

    def cells(self) -> np.ndarray:
        """``n x M`` array of selected cells, row ``i`` starting with ``i``."""
        return np.column_stack([np.arange(self.card), self._perms.T])

    def index(self) -> tuple[np.ndarray, ...]:
        """Fancy index selecting the n chosen cells of a tensor."""
        return (np.arange(self.card),) + tuple(self._perms)

    def one_based(self) -> list[list[int]]:
        return (self._perms + 1).tolist()

    def replace(self, dim: int, perm) -> "Assignment":
        """Copy with the permutation of dimension ``dim`` (2..M) swapped out."""
        perms = self._perms.copy()
        perms[dim - 2] = perm
        return Assignment(perms)

    def __eq__(self, other):
        if not isinstance(other, Assignment):
            return NotImplemented
        return np.array_equal(self._perms, other._perms)

    def __hash__(self):
        return hash((self._perms.shape, self._perms.tobytes()))

    def __repr__(self):
        return f"Assignment({self.one_based()})"


@dataclass(frozen=True)
class InstanceSeedSpec:
    dims: int
    card: int
    seed: int
    dist: str = "uniform01"


def check_compatible(tensor: CostTensor, assignment: Assignment) -> None:
    if assignment.dims != tensor.dims or assignment.card != tensor.card:
        raise InstanceMismatchError(
            f"assignment is M={assignment.dims}, n={assignment.card} "
            f"but tensor is M={tensor.dims}, n={tensor.card}"
        )


def evaluate(tensor: CostTensor, assignment: Assignment) -> float:
    """Objective value: sum of the n cells selected by ``assignment``."""
    check_compatible(tensor, assignment)
    return float(tensor.costs[assignment.index()].sum())


def generate_instance(spec: InstanceSeedSpec, max_cells: int = DEFAULT_MAX_CELLS) -> CostTensor:
    if spec.dims < 2 or spec.card < 1:
        raise ValidationError(f"need dims >= 2 and card >= 1, got dims={spec.dims}, card={spec.card}")
    size = spec.card**spec.dims
    if size > max_cells:
        raise InstanceTooLargeError(f"{spec.card}^{spec.dims} = {size} cells exceeds the cap of {max_cells}")
    rng = np.random.default_rng(spec.seed)
    shape = (spec.card,) * spec.dims
    if spec.dist == "uniform01":
        costs = rng.random(shape)
    elif spec.dist == "uint1e6":
        costs = rng.integers(0, 10**6, size=shape).astype(np.float64)
    else:
        raise ValidationError(f"unknown distribution {spec.dist!r}; expected one of {DISTRIBUTIONS}")
    return CostTensor(costs)


def format_number(x: float) -> str:
    """Shortest decimal that round-trips; integral values lose the '.0'."""
    x = float(x)
    if x.is_integer() and abs(x) < 2**53:
        return str(int(x))
    return repr(x)


def _parse_float(token: str, line: int, column: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise ParseError(f"non-numeric token {token!r}", line, column) from None
    if not np.isfinite(value):
        raise ParseError(f"non-finite cost {token!r}", line, column)
    return value


def _parse_int(token: str, line: int, column: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", line, column) from None


def parse_instance(text: str) -> CostTensor:
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty file, expected header 'MAP <M> <n>'", 1)
    header = lines[0].split()
    if len(header) != 3 or header[0] != "MAP":
        raise ParseError(f"malformed header {lines[0]!r}, expected 'MAP <M> <n>'", 1)
    dims = _parse_int(header[1], 1, 2)
    card = _parse_int(header[2], 1, 3)
    if dims < 2 or card < 1:
        raise ParseError(f"need M >= 2 and n >= 1, got M={dims}, n={card}", 1)
    expected = card**dims
    values: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        for col, token in enumerate(line.split(), start=1):
            if len(values) == expected:
                raise ParseError(f"too many values (expected {expected})", lineno, col)
            values.append(_parse_float(token, lineno, col))
    if len(values) != expected:
        raise ParseError(f"found {len(values)} values, expected {expected}", len(lines))
    return CostTensor.from_flat(dims, card, values)


def read_instance(path: str | os.PathLike) -> CostTensor:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def format_instance(tensor: CostTensor) -> str:
    out = [f"MAP {tensor.dims} {tensor.card}"]
    rows = tensor.costs.reshape(-1, tensor.card)
    out.extend(" ".join(format_number(v) for v in row) for row in rows)
    return "\n".join(out) + "\n"


def write_instance(tensor: CostTensor, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_instance(tensor))


def format_solution(assignment: Assignment, objective: float) -> str:
    n = assignment.card
    out = [f"objective {format_number(objective)}", " ".join(str(i) for i in range(1, n + 1))]
    out.extend(" ".join(str(v) for v in row) for row in assignment.one_based())
    return "\n".join(out) + "\n"


def write_solution(assignment: Assignment, objective: float, path: str | os.PathLike) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_solution(assignment, objective))


def parse_solution(text: str) -> tuple[Assignment, float]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ParseError("empty solution file", 1)
    head = lines[0].split()
    if len(head) != 2 or head[0] != "objective":
        raise ParseError(f"malformed header {lines[0]!r}, expected 'objective <value>'", 1)
    objective = _parse_float(head[1], 1, 2)
    if len(lines) < 3:
        raise ParseError("expected at least two permutation rows", len(lines))
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        rows.append([_parse_int(tok, lineno, col) for col, tok in enumerate(line.split(), start=1)])
    n = len(rows[0])
    for lineno, row in enumerate(rows, start=2):
        if len(row) != n:
            raise ValidationError(f"line {lineno}: expected {n} entries, got {len(row)}")
        if sorted(row) != list(range(1, n + 1)):
            raise ValidationError(f"line {lineno}: {row} is not a permutation of 1..{n}")
    if rows[0] != list(range(1, n + 1)):
        raise ValidationError("line 2 (dimension 1) must be the identity permutation")
    return Assignment.from_one_based(rows[1:]), objective


def read_solution(path: str | os.PathLike) -> tuple[Assignment, float]:
    with open(path, encoding="utf-8") as fh:
        return parse_solution(fh.read())

"""Multipartite record linkage on top of the MAP solvers.

M text sources are turned into a dissimilarity tensor (the sum over source
pairs of ``1 - sim``), solved as a MAP, and scored by recall against the
known ground truth.
"""

from __future__ import annotations

import itertools
import os
import string
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DedupError, ValidationError
from .tensor import Assignment, CostTensor

ALPHABET = string.ascii_uppercase + string.ascii_lowercase + " "
_BEGIN, _END = "\x02", "\x03"


@dataclass(frozen=True)
class RecordDataset:
    source: int
    records: tuple[str | None, ...]  # None marks a padding (dummy) record

    def __post_init__(self):
        real = [r for r in self.records if r is not None]
        if any(r == "" for r in real):
            raise ValidationError(f"source {self.source} has an empty record")
        if len(set(real)) != len(real):
            dupes = sorted({r for r in real if real.count(r) > 1})
            raise DedupError(f"source {self.source} has duplicate records: {dupes}")

    def __len__(self):
        return len(self.records)


def read_dataset(path: str | os.PathLike, source: int) -> RecordDataset:
    with open(path, encoding="utf-8") as fh:
        records = [line.rstrip("\r\n") for line in fh if line.strip()]
    return RecordDataset(source, tuple(records))


def trigrams(text: str) -> frozenset[str]:
    padded = _BEGIN * 2 + text + _END * 2
    return frozenset(padded[i : i + 3] for i in range(len(padded) - 2))


def trigram_sim(a: str, b: str) -> float:
    """Jaccard similarity of boundary-padded character trigram sets."""
    ta, tb = trigrams(a), trigrams(b)
    union = len(ta | tb)
    return len(ta & tb) / union if union else 1.0


def _sim(a: str | None, b: str | None) -> float:
    if a is None or b is None:
        return 0.0
    return trigram_sim(a, b)


def msim(records: Sequence[str | None]) -> float:
    if len(records) < 2:
        raise ValidationError("msim needs at least two records")
    return sum(_sim(a, b) for a, b in itertools.combinations(records, 2))


def delta(records: Sequence[str | None]) -> float:
    if len(records) < 2:
        raise ValidationError("delta needs at least two records")
    return sum(1.0 - _sim(a, b) for a, b in itertools.combinations(records, 2))


def delta_tensor(pair_sims: dict[tuple[int, int], np.ndarray], dims: int) -> CostTensor:
    """Dissimilarity tensor from pairwise similarity matrices.

    ``pair_sims[(s, t)]`` (s < t, 0-based sources) is the n x n matrix of
    similarities between records of source s (rows) and source t (columns).
    Cell (i_1..i_M) = sum over s < t of 1 - sim_st[i_s, i_t].
    """
    n = next(iter(pair_sims.values())).shape[0]
    costs = np.zeros((n,) * dims)
    for s, t in itertools.combinations(range(dims), 2):
        shape = [1] * dims
        shape[s], shape[t] = n, n
        costs = costs + (1.0 - np.asarray(pair_sims[(s, t)], dtype=np.float64)).reshape(shape)
    return CostTensor(costs)


def pad_datasets(datasets: Sequence[RecordDataset]) -> list[RecordDataset]:
    n = max(len(d) for d in datasets)
    return [RecordDataset(d.source, d.records + (None,) * (n - len(d))) for d in datasets]


def build_cost_tensor(datasets: Sequence[RecordDataset]) -> CostTensor:
    """Cell (i_1..i_M) = delta of the records at those positions.

    Shorter sources are padded with dummy records whose similarity to
    anything, including other dummies, is 0.
    """
    if len(datasets) < 2:
        raise ValidationError("linkage needs at least two sources")
    datasets = pad_datasets(datasets)
    m = len(datasets)
    pair_sims = {}
    for s, t in itertools.combinations(range(m), 2):
        a, b = datasets[s].records, datasets[t].records
        pair_sims[(s, t)] = np.array([[_sim(x, y) for y in b] for x in a])
    return delta_tensor(pair_sims, m)


def distort(dataset: RecordDataset, error: float, seed) -> RecordDataset:
    """Replace each character independently with probability ``error`` percent.

    Replacements are drawn uniformly from A-Z, a-z and space (possibly the
    original character). A record that collides with one already produced is
    re-drawn from its original.
    """
    if not 0 <= error <= 100:
        raise ValidationError(f"error must be a percentage in [0, 100], got {error}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    p = error / 100.0
    out: list[str | None] = []
    seen: set[str] = set()
    for record in dataset.records:
        if record is None:
            out.append(None)
            continue
        for attempt in range(1000):
            hits = rng.random(len(record)) < p
            repl = rng.integers(len(ALPHABET), size=len(record))
            new = "".join(ALPHABET[r] if h else c for c, h, r in zip(record, hits, repl))
            if new not in seen and new.strip():
                break
        else:
            raise DedupError(f"could not produce a unique distortion of {record!r}")
        seen.add(new)
        out.append(new)
    return RecordDataset(dataset.source, tuple(out))


@dataclass
class LinkageResult:
    tuples: list[tuple[int, ...]]  # 0-based record positions, one per source
    correct: list[bool]
    objective: float
    solver: str

    @property
    def recall(self) -> float:
        return sum(self.correct) / len(self.correct) if self.correct else 1.0


def score(assignment: Assignment, entities: Sequence[Sequence[int]]) -> tuple[list[tuple[int, ...]], list[bool]]:
    """Tuples of an assignment and whether each joins records of one entity.

    ``entities[s][i]`` is the true entity id of record i in source s.
    """
    cells = assignment.cells()
    tuples = [tuple(int(v) for v in row) for row in cells]
    correct = [len({entities[s][i] for s, i in enumerate(t)}) == 1 for t in tuples]
    return tuples, correct


def link(datasets: Sequence[RecordDataset], solver: str, entities: Sequence[Sequence[int]], seed: int = 0, tensor: CostTensor | None = None) -> LinkageResult:
    """Solve the linkage MAP and score it against ``entities``."""
    from .solvers import run

    tensor = tensor if tensor is not None else build_cost_tensor(datasets)
    res = run(tensor, solver, seed=seed)
    tuples, correct = score(res.assignment, entities)
    return LinkageResult(tuples, correct, res.value, solver)


@dataclass
class LinkageExperiment:
    """Distorted, shuffled copies of one name list with their ground truth."""

    datasets: list[RecordDataset]
    entities: list[list[int]]  # entities[s][i] = true entity of record i of source s
    tensor: CostTensor = field(repr=False)

    def run(self, solver: str, seed: int = 0) -> LinkageResult:
        return link(self.datasets, solver, self.entities, seed=seed, tensor=self.tensor)


def make_experiment(
    names: Sequence[str],
    error: float,
    seed: int,
    sources: int = 3,
    distort_sources: Sequence[int] | None = None,
) -> LinkageExperiment:
    """Copy ``names`` into ``sources`` datasets, distort, shuffle, build the tensor.

    By default the first source stays clean and the others are distorted.
    Each source is then shuffled independently so position carries no
    signal; the shuffles are recorded as ground truth.
    """
    rng = np.random.default_rng(seed)
    distort_sources = range(1, sources) if distort_sources is None else distort_sources
    base = RecordDataset(0, tuple(names))
    datasets, entities = [], []
    for s in range(sources):
        ds = RecordDataset(s, base.records)
        if s in distort_sources and error > 0:
            ds = distort(ds, error, rng)
        order = rng.permutation(len(names))
        datasets.append(RecordDataset(s, tuple(ds.records[i] for i in order)))
        entities.append(order.tolist())
    return LinkageExperiment(datasets, entities, build_cost_tensor(datasets))


def format_report(result: LinkageResult) -> str:
    lines = [
        " ".join(str(i + 1) for i in t) + (" correct" if ok else " wrong")
        for t, ok in zip(result.tuples, result.correct)
    ]
    lines.append(f"recall {result.recall:.6g}")
    lines.append(f"objective {result.objective!r}")
    return "\n".join(lines) + "\n"

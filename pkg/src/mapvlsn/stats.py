"""Paired comparison of two solvers over a shared set of instances.

Differences are always ``y_other - y_vlsn`` for minimization, so a
positive mean favours the VLSN-family algorithm.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import stats as sps

from .errors import DomainError, InsufficientSampleError, ValidationError

VERDICTS = ("VLSN", "Non-VLSN", "Tie", "None")


@dataclass(frozen=True)
class PairedSample:
    diffs: np.ndarray
    a1: str = "A1"  # VLSN-family algorithm
    a2: str = "A2"  # alternative algorithm

    @classmethod
    def from_values(cls, y_vlsn: Sequence[float], y_other: Sequence[float], a1: str = "A1", a2: str = "A2") -> "PairedSample":
        y1 = np.asarray(y_vlsn, dtype=np.float64)
        y2 = np.asarray(y_other, dtype=np.float64)
        if y1.shape != y2.shape:
            raise ValidationError("paired samples need the same instances")
        return cls(y2 - y1, a1, a2)

    def swapped(self) -> "PairedSample":
        return PairedSample(-self.diffs, self.a2, self.a1)

    @property
    def size(self) -> int:
        return len(self.diffs)


def t_quantile(confidence: float, df: int) -> float:
    return float(sps.t.ppf(1.0 - (1.0 - confidence) / 2.0, df))


@dataclass(frozen=True)
class PairedInterval:
    mean: float
    std: float
    lower: float
    upper: float
    verdict: str


def verdict(lower: float, upper: float) -> str:
    if lower > 0:
        return "VLSN"
    if upper < 0:
        return "Non-VLSN"
    if lower == upper == 0:
        return "Tie"
    return "None"


def paired_ci(sample: PairedSample, confidence: float = 0.95, t_value: float | None = None) -> PairedInterval:
    """Mean difference with interval ``mean +- t * std / sqrt(I - 1)``.

    The ``sqrt(I - 1)`` scaling (rather than the textbook ``sqrt(I)``) is
    deliberate. Pass ``t_value`` to use a tabulated quantile, e.g. 1.984.
    """
    d = np.asarray(sample.diffs, dtype=np.float64)
    size = len(d)
    if size < 2:
        raise InsufficientSampleError(f"need at least 2 paired differences, got {size}")
    mean = float(d.mean())
    std = float(d.std(ddof=1))
    t = t_quantile(confidence, size - 1) if t_value is None else t_value
    half = t * std / math.sqrt(size - 1)
    lower, upper = mean - half, mean + half
    return PairedInterval(mean, std, lower, upper, verdict(lower, upper))


@dataclass(frozen=True)
class CoxInterval:
    lower: float
    upper: float
    log_mean: float
    log_std: float
    floored: int  # differences replaced by the epsilon floor


def cox_log_ci(
    sample: PairedSample,
    confidence: float = 0.95,
    policy: str = "strict",
    epsilon: float = 1e-9,
    t_value: float | None = None,
) -> CoxInterval:
    """Modified Cox interval for log-normal differences.

    With A and D the mean and standard deviation of log differences, the
    bounds are ``exp(A + D^2/2 -+ t * sqrt(D^2/2 + D^4 / (2 (I - 1))))``.
    Non-positive differences raise under ``policy="strict"``; under
    ``policy="epsilon"`` they are replaced by ``epsilon`` and counted.
    """
    d = np.asarray(sample.diffs, dtype=np.float64)
    size = len(d)
    if size < 2:
        raise InsufficientSampleError(f"need at least 2 paired differences, got {size}")
    bad = np.flatnonzero(d <= 0)
    if len(bad):
        if policy == "strict":
            raise DomainError("non-positive differences cannot be logged", bad.tolist())
        if policy != "epsilon":
            raise ValidationError(f"unknown zero-handling policy {policy!r}")
        d = np.where(d <= 0, epsilon, d)
    logs = np.log(d)
    a = float(logs.mean())
    s2 = float(logs.var(ddof=1))
    t = t_quantile(confidence, size - 1) if t_value is None else t_value
    half = t * math.sqrt(s2 / 2.0 + s2 * s2 / (2.0 * (size - 1)))
    center = a + s2 / 2.0
    return CoxInterval(math.exp(center - half), math.exp(center + half), a, math.sqrt(s2), len(bad))


BENCH_HEADER = ("instance", "algo", "value", "nodes", "seconds")


def read_bench_table(text: str) -> dict[str, dict[int, float]]:
    """``{algo: {instance: value}}`` from a bench CSV."""
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames is None or tuple(reader.fieldnames) != BENCH_HEADER:
        raise ValidationError(f"bench table header must be {','.join(BENCH_HEADER)}")
    table: dict[str, dict[int, float]] = {}
    for row in reader:
        table.setdefault(row["algo"], {})[int(row["instance"])] = float(row["value"])
    return table


def pair_from_table(table: dict[str, dict[int, float]], a1: str, a2: str) -> PairedSample:
    for algo in (a1, a2):
        if algo not in table:
            raise ValidationError(f"algorithm {algo!r} not in bench table (have {sorted(table)})")
    shared = sorted(set(table[a1]) & set(table[a2]))
    return PairedSample.from_values([table[a1][i] for i in shared], [table[a2][i] for i in shared], a1, a2)


REPORT_HEADER = ("A1", "A2", "M", "n", "mean", "std", "lower", "upper", "winner")


def report_row(sample: PairedSample, dims: int, card: int, method: str = "paired", **kwargs) -> list[str]:
    """One comparison row: A1, A2, M, n, mean, std, lower, upper, winner."""
    if method == "paired":
        ci = paired_ci(sample, **kwargs)
        mean, std, lower, upper, win = ci.mean, ci.std, ci.lower, ci.upper, ci.verdict
    elif method == "cox":
        cox = cox_log_ci(sample, **kwargs)
        mean, std = float(np.mean(sample.diffs)), float(np.std(sample.diffs, ddof=1))
        lower, upper = cox.lower, cox.upper
        win = verdict(lower, upper)
    else:
        raise ValidationError(f"unknown method {method!r}")
    return [sample.a1, sample.a2, str(dims), str(card), f"{mean:.3f}", f"{std:.3f}", f"{lower:.3f}", f"{upper:.3f}", win]

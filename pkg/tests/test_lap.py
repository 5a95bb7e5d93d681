import time

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays
from scipy.optimize import linear_sum_assignment

from mapvlsn.errors import EmptyMatrixError
from mapvlsn.lap import brute_force_lap, solve_lap


def test_small_known():
    sol = solve_lap([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
    assert sol.value == 5
    assert sol.one_based() == (2, 1, 3)


def test_one_by_one():
    sol = solve_lap([[7.5]])
    assert sol.value == 7.5 and sol.one_based() == (1,)


def test_empty_raises():
    with pytest.raises(EmptyMatrixError):
        solve_lap(np.zeros((0, 0)))


def test_all_ties_gives_identity():
    sol = solve_lap(np.ones((5, 5)))
    assert sol.one_based() == (1, 2, 3, 4, 5)


def test_ties_resolve_to_lexicographically_smallest():
    # Both the identity and the anti-diagonal cost 0; columns are compared row by row.
    b = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert solve_lap(b).one_based() == (1, 2, 3)
    b = np.array([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert solve_lap(b).one_based() == (2, 3, 1)


@pytest.mark.parametrize("seed", range(200))
def test_matches_brute_force(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(1, 8))
    if seed % 2:
        b = rng.integers(0, 4, size=(n, n)).astype(float)  # plenty of ties
    else:
        b = rng.random((n, n))
    got, want = solve_lap(b), brute_force_lap(b)
    assert got.value == pytest.approx(want.value, abs=1e-12)
    assert got.perm.tolist() == want.perm.tolist()


@settings(max_examples=60, deadline=None)
@given(arrays(np.float64, st.tuples(st.integers(1, 30), st.just(0)).map(lambda t: (t[0], t[0])),
              elements=st.floats(-1e3, 1e3, allow_nan=False)))
def test_value_matches_scipy(b):
    rows, cols = linear_sum_assignment(b)
    sol = solve_lap(b)
    assert sorted(sol.perm.tolist()) == list(range(len(b)))
    assert sol.value == pytest.approx(b[rows, cols].sum(), abs=1e-8)
    assert sol.value == pytest.approx(b[np.arange(len(b)), sol.perm].sum(), abs=1e-8)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 12))
def test_row_and_column_shifts_keep_permutation_optimal(seed, n):
    rng = np.random.default_rng(seed)
    b = rng.integers(0, 1000, size=(n, n)).astype(float)
    u, v = rng.integers(-50, 50, size=n), rng.integers(-50, 50, size=n)
    base, shifted = solve_lap(b), solve_lap(b + u[:, None] + v[None, :])
    assert shifted.value == base.value + u.sum() + v.sum()
    assert shifted.perm.tolist() == base.perm.tolist()


def test_runtime_slope():
    sizes = [50, 100, 200, 400]
    times = []
    for n in sizes:
        b = np.random.default_rng(n).random((n, n))
        best = float("inf")
        for _ in range(3):
            t0 = time.perf_counter()
            solve_lap(b)
            best = min(best, time.perf_counter() - t0)
        times.append(best)
    slope = np.polyfit(np.log(sizes), np.log(times), 1)[0]
    assert slope <= 3.3

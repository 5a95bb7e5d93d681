import itertools
import re

import numpy as np
import pytest
from scipy.optimize import Bounds, LinearConstraint, milp

from mapvlsn.errors import TooLargeForExactError
from mapvlsn.exact import brute_force, export_ilp, format_lp
from mapvlsn.tensor import Assignment, CostTensor, evaluate

from conftest import instance


def _all_values(t):
    perms = list(itertools.permutations(range(t.card)))
    for combo in itertools.product(perms, repeat=t.dims - 1):
        a = Assignment(np.array(combo))
        yield evaluate(t, a), a


@pytest.mark.parametrize("dims,card", [(2, 5), (3, 3), (3, 4), (4, 3)])
def test_brute_force_against_plain_enumeration(dims, card):
    for seed in range(3):
        t = instance(dims, card, seed, "uint1e6")
        a, y = brute_force(t)
        best_y, best_a = min(_all_values(t), key=lambda p: p[0])  # first minimum in lexicographic order
        assert y == best_y and a == best_a and evaluate(t, a) == y


def test_toy_optimum(toy):
    a, y = brute_force(toy)
    assert a == Assignment.identity(3, 3)
    assert y == pytest.approx(1.0, abs=1e-9)


def test_cap():
    with pytest.raises(TooLargeForExactError):
        brute_force(instance(3, 6, 0), cap=1000)


def _parse_lp(text):
    """Tiny LP-format reader: objective coefficients and equality rows."""
    body = text.split("Minimize", 1)[1]
    obj_part, rest = body.split("Subject To", 1)
    cons_part = rest.split("Binary", 1)[0]
    obj = {}
    for coef, var in re.findall(r"([-+]?[\d.eE+-]+)\s+(x_[\d_]+)", obj_part.split(":", 1)[1]):
        obj[var] = float(coef)
    rows = []
    for block in re.split(r"\n(?= d\d)", cons_part.strip()):
        name, expr = block.split(":", 1)
        lhs, rhs = expr.rsplit("=", 1)
        rows.append((re.findall(r"x_[\d_]+", lhs), float(rhs)))
    return obj, rows


@pytest.mark.parametrize("dims,card,seed", [(3, 3, 0), (3, 4, 1), (4, 3, 2)])
def test_lp_export_solves_to_brute_force_optimum(tmp_path, dims, card, seed):
    t = instance(dims, card, seed, "uint1e6")
    path = tmp_path / "map.lp"
    export_ilp(t, path)
    obj, rows = _parse_lp(path.read_text())
    names = sorted(obj)
    assert len(names) == card**dims and len(rows) == dims * card
    col = {v: i for i, v in enumerate(names)}
    a_eq = np.zeros((len(rows), len(names)))
    for r, (vars_, rhs) in enumerate(rows):
        assert rhs == 1
        a_eq[r, [col[v] for v in vars_]] = 1
    c = np.array([obj[v] for v in names])
    res = milp(c, constraints=LinearConstraint(a_eq, 1, 1), integrality=np.ones(len(c)), bounds=Bounds(0, 1))
    assert res.success
    assert res.fun == pytest.approx(brute_force(t)[1], abs=1e-6)


def test_lp_text_shape():
    t = CostTensor(np.arange(8, dtype=float).reshape(2, 2, 2))
    text = format_lp(t)
    assert text.startswith("\\")
    assert " d1_1: " in text and "Binary" in text and text.rstrip().endswith("End")
    assert "7 x_2_2_2" in text

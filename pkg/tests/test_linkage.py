import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mapvlsn.errors import DedupError, ValidationError
from mapvlsn.greedy import greedy_solve
from mapvlsn.linkage import (
    RecordDataset,
    build_cost_tensor,
    delta,
    distort,
    format_report,
    make_experiment,
    msim,
    read_dataset,
    score,
    trigram_sim,
    trigrams,
)
from mapvlsn.names import researcher_names
from mapvlsn.tensor import Assignment

from conftest import TOY_AB

text = st.text(alphabet="abcXYZ ", min_size=1, max_size=12)


def test_trigram_padding():
    assert trigrams("ab") == {"\x02\x02a", "\x02ab", "ab\x03", "b\x03\x03"}


def test_trigram_sim_values():
    assert trigram_sim("abcd", "abce") == pytest.approx(1 / 3)
    assert trigram_sim("abcd", "abcd") == 1.0
    assert trigram_sim("abc", "xyz") == 0.0


@settings(max_examples=100)
@given(text, text)
def test_sim_bounds_and_symmetry(a, b):
    s = trigram_sim(a, b)
    assert 0.0 <= s <= 1.0
    assert s == trigram_sim(b, a)
    assert (s == 1.0) == (trigrams(a) == trigrams(b))


def test_msim_and_delta():
    recs = ["abcd", "abce", "abcd"]
    assert msim(recs) == pytest.approx(1 / 3 + 1 + 1 / 3)
    assert delta(recs) == pytest.approx(3 - msim(recs))
    assert delta(["abc", None]) == 1.0
    assert delta([None, None, None]) == 3.0
    with pytest.raises(ValidationError):
        msim(["abc"])


def test_toy_tensor_values(toy):
    # cell (a1, b1, c1): (1 - 0.4) + (1 - 1) + (1 - 1)
    assert toy[0, 0, 0] == pytest.approx(0.6)
    assert toy[2, 2, 2] == pytest.approx(0.0)
    assert toy[0, 1, 2] == pytest.approx((1 - TOY_AB[0][1]) + 0.9 + 0.9)


def test_build_cost_tensor_matches_delta():
    sets = [RecordDataset(0, ("anna", "bert")), RecordDataset(1, ("anne", "bart")), RecordDataset(2, ("ana", "burt"))]
    t = build_cost_tensor(sets)
    for i in range(2):
        for j in range(2):
            for k in range(2):
                want = delta([sets[0].records[i], sets[1].records[j], sets[2].records[k]])
                assert t[i, j, k] == pytest.approx(want)


def test_padding_with_dummies():
    sets = [RecordDataset(0, ("a1", "b2", "c3")), RecordDataset(1, ("a1", "b2")), RecordDataset(2, ("a1", "c3"))]
    t = build_cost_tensor(sets)
    assert t.card == 3
    # every cell touching the two dummies (index 2 in sources 1 and 2) is maximal in those pairs
    assert np.all(t.costs[:, 2, 2] >= 3.0 - 1e-12)
    assert t[0, 0, 0] == pytest.approx(0.0)


def test_dataset_validation(tmp_path):
    with pytest.raises(DedupError):
        RecordDataset(0, ("x", "x"))
    with pytest.raises(ValidationError):
        RecordDataset(0, ("x", ""))
    path = tmp_path / "names.txt"
    path.write_text("Ada Lovelace\n\nAlan Turing\n")
    assert read_dataset(path, 1).records == ("Ada Lovelace", "Alan Turing")


def test_distort_rates():
    names = researcher_names(300, seed=1)
    base = RecordDataset(0, tuple(names))
    assert distort(base, 0, 3).records == base.records
    out = distort(base, 30, 3)
    changed = sum(a != b for n, o in zip(names, out.records) for a, b in zip(n, o))
    total = sum(len(n) for n in names)
    # a replacement keeps the character with probability 1/53
    assert changed / total == pytest.approx(0.30 * 52 / 53, abs=0.02)
    assert len(set(out.records)) == len(names)
    with pytest.raises(ValidationError):
        distort(base, 120, 0)


def test_names_are_distinct_and_seeded():
    a = researcher_names(200, seed=4)
    assert len(set(a)) == 200 and a == researcher_names(200, seed=4)
    assert 12 < np.mean([len(n) for n in a]) < 20


def test_score_and_recall():
    entities = [[0, 1, 2], [2, 0, 1], [0, 1, 2]]
    a = Assignment.from_one_based([[2, 3, 1], [1, 2, 3]])
    tuples, correct = score(a, entities)
    assert tuples == [(0, 1, 0), (1, 2, 1), (2, 0, 2)]
    assert correct == [True, True, True]


def test_clean_experiment_is_perfect():
    exp = make_experiment(researcher_names(15, seed=2), 0, seed=2)
    for algo in ("greedy", "greedy-vlsn"):
        res = exp.run(algo)
        assert res.recall == 1.0
    report = format_report(exp.run("greedy-vlsn"))
    assert "recall 1" in report and report.count("correct") == 15


def test_greedy_vlsn_objective_never_above_greedy():
    for seed in range(5):
        exp = make_experiment(researcher_names(20, seed=seed), 30, seed=seed)
        assert exp.run("greedy-vlsn").objective <= greedy_solve(exp.tensor)[1]

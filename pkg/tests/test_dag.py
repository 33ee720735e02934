import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from hilbpieri import rewrite
from hilbpieri.classes import BIG_PHI
from hilbpieri.dag import (
    allowed_nodes, build_dag, check_conjecture, conjecture_cases,
    path_weight_sum, path_weight_sums, sweep_conjecture,
)
from hilbpieri.golden import DAG_211_EDGES
from hilbpieri.partitions import anchors, sort_desc


def enumerate_paths(dag):
    """Brute force: per node, sum of (-1)^(len+1) * product of weights over root paths."""
    totals = dict.fromkeys(dag.nodes[1:], 0)
    stack = [(dag.root, 1, 0)]
    while stack:
        u, w, length = stack.pop()
        if length:
            totals[u] += (-1) ** (length + 1) * w
        for v, wt in dag.successors(u):
            stack.append((v, w * wt, length + 1))
    return totals


def count_paths(dag):
    paths = {dag.root: 1}
    for u in dag.nodes:
        for v, _ in dag.successors(u):
            paths[v] = paths.get(v, 0) + paths.get(u, 0)
    return sum(paths.values())


def test_dag_211_edges():
    dag = build_dag((2, 1, 1), 1)
    assert dag.edges == DAG_211_EDGES
    assert dag.nodes[0] == (2, 1, 1)
    assert set(dag.nodes) == {(2, 1, 1), (1, 1, 1), (1, 1, 0), (1, 0, 0), (0, 0, 0)}


def test_dag_single_point():
    assert build_dag((1,), 1).edges == {((1,), (0,)): 1}


def test_dag_210_root_edges():
    dag = build_dag((2, 1, 0), 1)
    assert dict(dag.successors((2, 1, 0))) == {(1, 1, 0): 2, (1, 0, 0): 2}


def test_dag_rejects_bad_anchor():
    with pytest.raises(ValueError):
        build_dag((2, 1, 1), 2)


def test_dag_structure():
    for m, i in conjecture_cases(5):
        dag = build_dag(m, i)
        order = {p: k for k, p in enumerate(dag.nodes)}
        for (u, v), w in dag.edges.items():
            assert w > 0
            assert sum(v) < sum(u) and order[u] < order[v]
            assert len(u) == len(v) == len(m)


@pytest.mark.parametrize("lam, want", [
    ((1, 1, 1), 3), ((1, 1, 0), -1), ((1, 0, 0), 0), ((0, 0, 0), 0),
])
def test_path_sums_211(lam, want):
    dag = build_dag((2, 1, 1), 1)
    assert path_weight_sum(dag, lam) == want
    assert enumerate_paths(dag)[lam] == want


def test_path_sum_unknown_node():
    dag = build_dag((2, 1, 1), 1)
    with pytest.raises(KeyError):
        path_weight_sum(dag, (2, 1, 1))
    with pytest.raises(KeyError):
        path_weight_sum(dag, (3, 0, 0))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5).map(sort_desc), st.data())
def test_dynamic_programme_matches_path_enumeration(m, data):
    i = data.draw(st.sampled_from(anchors(m)))
    dag = build_dag(m, i)
    assume(count_paths(dag) <= 20_000)
    assert path_weight_sums(dag) == enumerate_paths(dag)


def test_allowed_nodes():
    assert allowed_nodes((2, 1, 1), 1) == {(1, 1, 1), (1, 1, 0)}
    assert allowed_nodes((1,), 1) == {(0,)}
    assert allowed_nodes((2, 1, 0), 3) == set()


def test_check_conjecture_211():
    rep = check_conjecture((2, 1, 1), 1)
    assert rep.passed and rep.witnesses == []
    assert dict(rep.excluded) == {(1, 0, 0): 0, (0, 0, 0): 0}
    assert dict(rep.allowed) == {(1, 1, 1): 3, (1, 1, 0): -1}
    doc = json.loads(json.dumps(rep.to_json()))
    assert set(doc) == {"m", "i", "allowed", "excluded", "pass"}
    assert doc["pass"] is True and doc["m"] == [2, 1, 1]
    assert {"lam": [1, 0, 0], "sum": 0} in doc["excluded"]


def test_check_conjecture_trivial():
    rep = check_conjecture((1,), 1)
    assert rep.passed and rep.excluded == () and rep.allowed == (((0,), 1),)


def test_conjecture_cases_domain():
    cases = conjecture_cases(2)
    assert ((2,), 1) in cases and ((1, 1), 2) in cases and ((0, 0), 2) in cases
    assert all(sum(m) <= 2 and 1 <= len(m) <= 2 for m, _ in cases)
    assert len(cases) == len(set(cases))


def test_sweep_small_and_parallel_agree():
    serial = sweep_conjecture(4)
    assert all(r.passed for r in serial)
    assert [r.to_json() for r in sweep_conjecture(4, workers=2)] == [r.to_json() for r in serial]


def engine_sums(m, i):
    out = {}
    for t, c in rewrite.cascade_theta(m, i).items():
        if t.core.kind == BIG_PHI:
            out[t.core.part] = c
    return out


@pytest.mark.parametrize("m, i", [((2, 1, 1), 1), ((2, 1, 0), 1), ((2, 1, 0), 2), ((3, 1, 1, 0), 3)])
def test_dag_matches_engine(m, i):
    sums = {lam: s for lam, s in path_weight_sums(build_dag(m, i)).items() if s}
    assert sums == engine_sums(m, i)

"""Weighted DAG of punctual components and the vanishing-sum conjecture.

The root ``m`` points at every partition reachable by the first
degeneration anchored at ``i``; every other node ``lam`` points at the
partitions produced from it by the second degeneration.  The signed sum of
path weights into a node is the net coefficient the cascade leaves on the
corresponding ``BigPhi`` class.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from .partitions import (
    Partition, anchors, as_partition, check_anchor, count_assemblies,
    first_deg_coefficient, partitions_of, sigma_set, sigma_set_anchored, sort_desc,
)


@dataclass(frozen=True)
class WeightedDag:
    root: Partition
    anchor: int
    nodes: tuple[Partition, ...]  # topological: root first, sums decreasing
    edges: dict  # (u, v) -> weight

    def successors(self, u: Partition) -> list[tuple[Partition, int]]:
        return [(v, w) for (a, v), w in self.edges.items() if a == u]

    def weight_matrix(self) -> np.ndarray:
        index = {p: k for k, p in enumerate(self.nodes)}
        w = np.zeros((len(self.nodes), len(self.nodes)), dtype=np.int64)
        for (u, v), wt in self.edges.items():
            w[index[u], index[v]] = wt
        return w


def _node_key(p: Partition):
    return (-sum(p), tuple(-x for x in p))


def build_dag(m, i: int) -> WeightedDag:
    m = as_partition(m)
    check_anchor(m, i)
    edges = {}
    frontier = []
    for j in range(1, len(m) + 1):
        for lam in sigma_set_anchored(m, j, i):
            edges[(m, lam)] = first_deg_coefficient(m, i, lam)
            frontier.append(lam)
    seen = set(frontier)
    while frontier:
        lam = frontier.pop()
        for k in range(1, len(lam) + 1):
            for sub in sigma_set(lam, k):
                edges[(lam, sub)] = count_assemblies(lam, sub)
                if sub not in seen:
                    seen.add(sub)
                    frontier.append(sub)
    nodes = (m,) + tuple(sorted(seen, key=_node_key))
    return WeightedDag(m, i, nodes, edges)


def path_weight_sums(dag: WeightedDag) -> dict:
    """Signed path sum from the root to every non-root node."""
    g = kernels.signed_path_sums(dag.weight_matrix())
    return {p: int(g[k]) for k, p in enumerate(dag.nodes) if k}


def path_weight_sum(dag: WeightedDag, lam) -> int:
    lam = tuple(lam)
    if lam not in dag.nodes[1:]:
        raise KeyError(f"{lam} is not a non-root node of the DAG for {dag.root}")
    return path_weight_sums(dag)[lam]


def allowed_nodes(m, i: int) -> set:
    """Partitions obtained from ``m`` by lowering ``m_i`` by ``1 <= x <= m_i``."""
    m = as_partition(m)
    check_anchor(m, i)
    out = set()
    for x in range(1, m[i - 1] + 1):
        lowered = list(m)
        lowered[i - 1] -= x
        out.add(sort_desc(lowered))
    return out


@dataclass(frozen=True)
class ConjectureReport:
    m: Partition
    i: int
    allowed: tuple  # ((lam, sum), ...)
    excluded: tuple

    @property
    def passed(self) -> bool:
        return all(s == 0 for _, s in self.excluded)

    @property
    def witnesses(self) -> list:
        return [(lam, s) for lam, s in self.excluded if s != 0]

    def to_json(self) -> dict:
        return {
            "m": list(self.m),
            "i": self.i,
            "allowed": [{"lam": list(lam), "sum": s} for lam, s in self.allowed],
            "excluded": [{"lam": list(lam), "sum": s} for lam, s in self.excluded],
            "pass": self.passed,
        }


def check_conjecture(m, i: int) -> ConjectureReport:
    dag = build_dag(m, i)
    sums = path_weight_sums(dag)
    ok = allowed_nodes(m, i)
    allowed, excluded = [], []
    for lam in dag.nodes[1:]:
        (allowed if lam in ok else excluded).append((lam, sums[lam]))
    return ConjectureReport(dag.root, i, tuple(allowed), tuple(excluded))


def conjecture_cases(max_weight: int) -> list[tuple[Partition, int]]:
    """Every ``(m, i)`` with ``sum(m) <= max_weight``, ``1 <= len(m) <= max(max_weight, 1)``
    (trailing zeros included) and ``i`` an admissible anchor."""
    max_len = max(max_weight, 1)
    out = []
    for n in range(max_weight + 1):
        for p in partitions_of(n):
            for zeros in range(max_len - len(p) + 1):
                m = p + (0,) * zeros
                if m:
                    out.extend((m, i) for i in anchors(m))
    return out


def _check(case):
    return check_conjecture(*case)


def sweep_conjecture(max_weight: int, workers: int = 1) -> list[ConjectureReport]:
    cases = conjecture_cases(max_weight)
    if workers <= 1:
        return [_check(c) for c in cases]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_check, cases, chunksize=16))

"""Partition arithmetic used by the degeneration rules.

Partitions are plain tuples of nonnegative integers in weakly decreasing
order.  Zeros are significant: ``(1, 0, 0)`` and ``(1,)`` are different
partitions, and every subtraction keeps the length of its input.

Anchor indices ``i`` are 1-based throughout, matching how the rules are
usually written down (``m_i`` is ``m[i - 1]``).
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from . import kernels

Partition = tuple[int, ...]


def sort_desc(seq: Iterable[int]) -> Partition:
    parts = tuple(int(x) for x in seq)
    if any(x < 0 for x in parts):
        raise ValueError(f"negative entry in {parts}")
    return tuple(sorted(parts, reverse=True))


def as_partition(seq: Iterable[int]) -> Partition:
    """Validate ``seq`` as a weakly decreasing nonnegative sequence."""
    parts = tuple(map(int, seq))
    if parts and parts[-1] < 0:
        raise ValueError(f"negative entry in {parts}")
    if list(parts) != sorted(parts, reverse=True):
        raise ValueError(f"{parts} is not weakly decreasing")
    return parts


def is_block_end(m: Partition, i: int) -> bool:
    # m_i > m_{i+1}, with the last position always admissible so that
    # trailing zeros (free points) can be anchored
    r = len(m)
    if not 1 <= i <= r:
        return False
    return i == r or m[i - 1] > m[i]


def check_anchor(m: Partition, i: int) -> None:
    if not is_block_end(m, i):
        raise ValueError(f"anchor {i} is not the last index of a value block of {m}")


def anchor_index(m: Partition, v: int) -> int:
    """Largest 1-based index ``i`` with ``m_i == v``."""
    for idx in range(len(m), 0, -1):
        if m[idx - 1] == v:
            return idx
    raise ValueError(f"value {v} does not occur in {m}")


def anchors(m: Partition) -> list[int]:
    """All admissible anchors of ``m``, one per distinct value."""
    return [i for i in range(1, len(m) + 1) if is_block_end(m, i)]


@lru_cache(maxsize=None)
def _sigma(m: Partition, j: int, anchor: int) -> frozenset:
    positive = [p for p in range(len(m)) if m[p] >= 1]
    out = set()
    if anchor:
        a = anchor - 1
        if m[a] == 0 or j < 1:
            return frozenset()
        rest = [p for p in positive if p != a]
        subsets = ((a,) + s for s in combinations(rest, j - 1))
    else:
        subsets = combinations(positive, j)
    for s in subsets:
        lam = list(m)
        for p in s:
            lam[p] -= 1
        out.add(tuple(sorted(lam, reverse=True)))
    return frozenset(out)


def sigma_set(m: Partition, j: int) -> frozenset:
    """Partitions obtained from ``m`` by subtracting one from ``j`` distinct
    positive entries, re-sorted.  Set semantics: repeats collapse."""
    m = as_partition(m)
    if not 0 <= j <= len(m):
        raise ValueError(f"j={j} out of range for length {len(m)}")
    return _sigma(m, j, 0)


def sigma_set_anchored(m: Partition, j: int, i: int) -> frozenset:
    """As :func:`sigma_set`, restricted to subtractions that include position ``i``."""
    m = as_partition(m)
    check_anchor(m, i)
    if j > len(m):
        return frozenset()
    return _sigma(m, j, i)


def below(m: Partition) -> dict[int, frozenset]:
    """``{j: sigma_set(m, j)}`` for every ``j >= 1`` with a nonempty result."""
    out = {}
    for j in range(1, len(m) + 1):
        s = sigma_set(m, j)
        if s:
            out[j] = s
    return out


def _check_pair(m: Partition, lam: Partition) -> int:
    if len(m) != len(lam):
        raise ValueError(f"length mismatch: {m} vs {lam}")
    j = sum(m) - sum(lam)
    if j < 0:
        raise ValueError(f"{lam} has larger sum than {m}")
    return j


@lru_cache(maxsize=None)
def _count_closed(m: Partition, lam: Partition) -> int:
    x = Counter(lam)
    y = Counter(m)
    top = max(m + lam, default=0) + 1
    total = 1
    carried = 0
    for v in range(top + 1):
        # entries of value v that were bumped to v + 1
        k = x[v] + carried - y[v]
        if k < 0 or k > x[v]:
            return 0
        total *= comb(x[v], k)
        carried = k
    return total if carried == 0 else 0


def count_assemblies(m: Sequence[int], lam: Sequence[int], method: str = "closed") -> int:
    """Number of position subsets ``S`` of ``lam`` with ``|S| = sum(m) - sum(lam)``
    such that adding one on ``S`` and re-sorting gives ``m``.

    ``method="closed"`` uses a product of binomials over entry values;
    ``method="enumerate"`` runs the subset enumeration kernel.
    """
    m = as_partition(m)
    lam = as_partition(lam)
    j = _check_pair(m, lam)
    if method == "closed":
        return _count_closed(m, lam)
    if method == "enumerate":
        return kernels.count_subsets(m, lam, j)
    raise ValueError(f"unknown method {method!r}")


def first_deg_coefficient(m: Sequence[int], i: int, lam: Sequence[int], drop: int | None = None) -> int:
    """Multiplicity of the punctual component indexed by ``lam`` in the first
    degeneration of the anchored locus ``(m, i)``.

    ``drop`` picks which entry equal to ``m_i - 1`` is removed from ``lam``
    (0-based position); by default the first one.  The result does not
    depend on it.
    """
    m = as_partition(m)
    lam = as_partition(lam)
    check_anchor(m, i)
    target = m[i - 1] - 1
    hits = [p for p, v in enumerate(lam) if v == target]
    if not hits:
        raise ValueError(f"{lam} has no entry equal to {target}")
    if drop is None:
        drop = hits[0]
    elif lam[drop] != target:
        raise ValueError(f"position {drop} of {lam} is not {target}")
    m_hat = m[: i - 1] + m[i:]
    lam_hat = lam[:drop] + lam[drop + 1:]
    return len(hits) * count_assemblies(m_hat, lam_hat)


def partitions_of(n: int, max_part: int | None = None) -> list[Partition]:
    """Positive partitions of ``n`` in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions_of(n - first, first):
            out.append((first,) + rest)
    return out

"""Time the numba kernels against their numpy fallbacks.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Workloads mirror real use: the exhaustive assembly-count oracle over short
partitions, and signed path sums over every DAG of a conjecture sweep.
"""
import argparse
import time

import numpy as np

from hilbpieri import kernels
from hilbpieri.dag import build_dag, conjecture_cases
from hilbpieri.partitions import partitions_of


def subset_workload(max_sum=8, max_len=8):
    jobs = []
    for s in range(max_sum + 1):
        for p in partitions_of(s):
            for length in range(max(len(p), 1), max_len + 1):
                m = np.array(p + (0,) * (length - len(p)), dtype=np.int64)
                for j in range(min(s, length) + 1):
                    for q in partitions_of(s - j):
                        if len(q) <= length:
                            lam = np.array(q + (0,) * (length - len(q)), dtype=np.int64)
                            jobs.append((m, lam, j))
    return jobs


def dag_workload(max_weight=8):
    return [build_dag(m, i).weight_matrix() for m, i in conjecture_cases(max_weight)]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if kernels.subset_count_numba is None:
        raise SystemExit("numba is not installed; nothing to compare")

    subsets = subset_workload()
    dags = dag_workload()
    # compile before timing
    kernels.subset_count_numba(*subsets[-1])
    kernels.signed_paths_numba(dags[-1])

    rows = [
        ("subset count", len(subsets),
         lambda: [kernels.subset_count_numba(*a) for a in subsets],
         lambda: [kernels.subset_count_numpy(*a) for a in subsets]),
        ("signed paths", len(dags),
         lambda: [kernels.signed_paths_numba(w) for w in dags],
         lambda: [kernels.signed_paths_numpy(w) for w in dags]),
    ]
    print(f"{'kernel':<14}{'calls':>8}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    for name, calls, fast, slow in rows:
        tf, ts = best_of(fast, args.repeat), best_of(slow, args.repeat)
        print(f"{name:<14}{calls:>8}{tf:>10.3f}{ts:>10.3f}{ts / tf:>8.1f}x")


if __name__ == "__main__":
    main()

"""Products with the incidence divisor ``H`` and whole Pieri tables."""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .classes import MSTriple
from .partitions import partitions_of
from .rewrite import ConservationError, RewriteStats, rewrite_to_ms, split_h_product


@dataclass(frozen=True)
class PieriRow:
    input: MSTriple
    output: tuple[tuple[MSTriple, int], ...]
    stats: RewriteStats = field(default_factory=RewriteStats, compare=False)

    def to_json(self) -> dict:
        terms = [dict(tri.to_json(), coef=c) for tri, c in self.output]
        return {"n": self.input.n, "input": self.input.to_json(), "terms": terms}

    @classmethod
    def from_json(cls, d: dict) -> "PieriRow":
        out = tuple((MSTriple.from_json(t), int(t["coef"])) for t in d["terms"])
        return cls(MSTriple.from_json(d["input"]), out)


def divisor_h(n: int) -> MSTriple:
    """``H = sigma_(0,(1),(1,...,1))`` on the Hilbert scheme of ``n >= 1`` points."""
    return MSTriple((), (1,), (1,) * (n - 1))


def intersect_with_h(alpha: MSTriple, check_invariants: bool = False, **kwargs) -> PieriRow:
    stats = RewriteStats()
    out = rewrite_to_ms(split_h_product(alpha), check_invariants=check_invariants,
                        stats=stats, **kwargs)
    for tri, _ in out:
        if tri.n != alpha.n or tri.codim != alpha.codim + 1:
            raise ConservationError(
                "intersect_with_h",
                f"{tri} has n/codim {tri.n}/{tri.codim}, expected {alpha.n}/{alpha.codim + 1}")
    return PieriRow(alpha, tuple(out), stats)


def enumerate_basis(n: int) -> list[MSTriple]:
    """All basis indices with ``A + B + C = n``: ``A`` ascending, then ``B``,
    partitions in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = []
    for na in range(n + 1):
        for a in partitions_of(na):
            for nb in range(n - na + 1):
                for b in partitions_of(nb):
                    for c in partitions_of(n - na - nb):
                        out.append(MSTriple(a, b, c))
    return out


def _row(args):
    alpha, check = args
    return intersect_with_h(alpha, check_invariants=check)


def pieri_matrix(n: int, workers: int = 1, check_invariants: bool = False) -> list[PieriRow]:
    """``intersect_with_h`` over the whole basis, rows in canonical input order."""
    if n < 1:
        raise ValueError("n must be positive")
    basis = sorted(enumerate_basis(n))
    jobs = [(alpha, check_invariants) for alpha in basis]
    if workers <= 1:
        return [_row(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_row, jobs, chunksize=8))

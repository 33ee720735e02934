"""Reference values from the hand-worked example, checked by ``hilb-pieri verify``."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from . import dag, partitions, rewrite
from .classes import (
    FormalSum, MSTriple, big_phi, line, little_phi, moving, point, punct,
    term, term_length, theta_o, theta_p, triple_from_atoms,
)
from .pieri import enumerate_basis, intersect_with_h
from .rewrite import ConservationError

WORKED_EXAMPLE = MSTriple((), (), (3, 2, 1))
WORKED_EXAMPLE_ROW = (
    (MSTriple((), (1,), (3, 2)), 1),
    (MSTriple((), (2,), (3, 1)), 2),
    (MSTriple((), (3,), (2, 1)), 3),
    (MSTriple((1,), (), (2, 2, 1)), 2),
    (MSTriple((1,), (), (3, 1, 1)), 2),
    (MSTriple((1,), (1,), (2, 1, 1)), -2),
    (MSTriple((2,), (), (2, 1, 1)), 2),
)

DAG_211_EDGES = {
    ((2, 1, 1), (1, 1, 1)): 3,
    ((2, 1, 1), (1, 1, 0)): 2,
    ((2, 1, 1), (1, 0, 0)): 1,
    ((1, 1, 1), (1, 1, 0)): 1,
    ((1, 1, 1), (0, 0, 0)): 1,
    ((1, 1, 1), (1, 0, 0)): 1,
    ((1, 1, 0), (0, 0, 0)): 3,
    ((1, 1, 0), (1, 0, 0)): 2,
    ((1, 0, 0), (0, 0, 0)): 3,
}

ASSEMBLY_TABLE = {
    (1, 1, 1): 3,
    (2, 1, 0): 1,
    (1, 1, 0): 2,
    (2, 0, 0): 1,
    (1, 0, 0): 1,
}


@dataclass
class Check:
    name: str
    rule: str
    run: Callable[[], tuple]  # -> (expected, actual)


def _fs(*pairs):
    return FormalSum([(t, c) for t, c in pairs])


def _ms(core, check):
    return tuple(rewrite.rewrite_to_ms(FormalSum([(term((), core), 1)]), check_invariants=check))


def little_phi_trace(check: bool = False) -> list[int]:
    """Coefficient of ``LittlePhi((0,0,0), 3)`` after each phi substitution
    in the cascade of ``Theta_P((2,1,0), 1)``."""
    target = term((), little_phi((0, 0, 0), 3))
    seen = []

    def hook(rule, t, coef, state):
        if rule == "expand_little_phi":
            seen.append(state.coefficient(target))

    rewrite.reduce(FormalSum([(term((), theta_p((2, 1, 0), 1)), 1)]),
                   check_invariants=check, on_step=hook)
    return seen


def checks(check_invariants: bool = False) -> list[Check]:
    ci = check_invariants
    P = partitions
    out = [
        Check("sigma_set (2,1,1) j=1", "sigma_set",
              lambda: ({(1, 1, 1), (2, 1, 0)}, set(P.sigma_set((2, 1, 1), 1)))),
        Check("sigma_set (2,1,1) j=3", "sigma_set",
              lambda: ({(1, 0, 0)}, set(P.sigma_set((2, 1, 1), 3)))),
        Check("sigma_set_anchored (2,1,1) i=3 j=1", "sigma_set_anchored",
              lambda: ({(2, 1, 0)}, set(P.sigma_set_anchored((2, 1, 1), 1, 3)))),
        Check("sigma_set_anchored (2,1,0) i=1 j=2", "sigma_set_anchored",
              lambda: ({(1, 0, 0)}, set(P.sigma_set_anchored((2, 1, 0), 2, 1)))),
        Check("c((2,1,1), lam) table", "count_assemblies",
              lambda: (ASSEMBLY_TABLE,
                       {lam: P.count_assemblies((2, 1, 1), lam) for lam in ASSEMBLY_TABLE})),
        Check("c((2,1,0),(1,0,0))", "count_assemblies",
              lambda: (2, P.count_assemblies((2, 1, 0), (1, 0, 0)))),
        Check("c((1,1,0),(0,0,0))", "count_assemblies",
              lambda: (3, P.count_assemblies((1, 1, 0), (0, 0, 0)))),
        Check("first-degeneration multiplicities (2,1,0) i=1", "first_deg_coefficient",
              lambda: ((2, 2), (P.first_deg_coefficient((2, 1, 0), 1, (1, 1, 0)),
                                P.first_deg_coefficient((2, 1, 0), 1, (1, 0, 0))))),
        Check("first-degeneration multiplicity (2,1,1)->(1,1,1)", "first_deg_coefficient",
              lambda: (3, P.first_deg_coefficient((2, 1, 1), 1, (1, 1, 1)))),
        Check("length of Theta_P((2,1,0),1)", "term_length",
              lambda: (6, term_length(term((), theta_p((2, 1, 0), 1))))),
        Check("Theta_O((2,1,0),1) as basis class", "triple_from_atoms",
              lambda: (MSTriple((), (3,), (2, 1)),
                       triple_from_atoms([line(3), moving(2), moving(1)]))),
        Check("Theta_O((2,1,0),2) atoms", "theta_o_to_atoms",
              lambda: (tuple(sorted([line(2), moving(3), moving(1)])),
                       rewrite.theta_o_to_atoms((2, 1, 0), 2))),
        Check("components of H . sigma_(0,0,(3,2,1))", "split_h_product",
              lambda: (_fs(*[(term((), theta_p((2, 1, 0), i)), 1) for i in (1, 2, 3)]),
                       rewrite.split_h_product(WORKED_EXAMPLE))),
        Check("first degeneration of Theta_P((2,1,0),1)", "expand_theta_p",
              lambda: (_fs((term((), theta_o((2, 1, 0), 1)), 3),
                           (term((), little_phi((1, 1, 0), 1)), 2),
                           (term((), little_phi((1, 0, 0), 2)), 2)),
                       rewrite.expand_theta_p((2, 1, 0), 1))),
        Check("first degeneration of Theta_P((2,1,0),3)", "expand_theta_p",
              lambda: (_fs((term((), theta_o((2, 1, 0), 3)), 1)),
                       rewrite.expand_theta_p((2, 1, 0), 3))),
        Check("second degeneration of phi((1,1,0),1)", "expand_little_phi",
              lambda: (_fs((term((), big_phi((1, 1, 0), 1)), 1),
                           (term((), little_phi((1, 0, 0), 2)), -2),
                           (term((), little_phi((0, 0, 0), 3)), -3)),
                       rewrite.expand_little_phi((1, 1, 0), 1))),
        Check("second degeneration of phi((1,0,0),2)", "expand_little_phi",
              lambda: (_fs((term((), big_phi((1, 0, 0), 2)), 1),
                           (term((), little_phi((0, 0, 0), 3)), -3)),
                       rewrite.expand_little_phi((1, 0, 0), 2))),
        Check("second degeneration of phi((0,0,0),3)", "expand_little_phi",
              lambda: (_fs((term((), big_phi((0, 0, 0), 3)), 1)),
                       rewrite.expand_little_phi((0, 0, 0), 3))),
        Check("BigPhi((1,1,0),1) context", "big_phi_to_term",
              lambda: (term([moving(2), moving(2), moving(1)], punct(1)),
                       rewrite.big_phi_to_term((1, 1, 0), 1))),
        Check("punctual recursion q=1", "expand_punct",
              lambda: (_fs((term([point(1)]), 1)), rewrite.expand_punct(1))),
        Check("punctual recursion q=2", "expand_punct",
              lambda: (_fs((term([line(1)], punct(1)), 1), (term([point(2)]), -1)),
                       rewrite.expand_punct(2))),
        Check("class of Theta_P((2,1,0),1)", "rewrite_to_ms",
              lambda: ((
                  (MSTriple((), (3,), (2, 1)), 3),
                  (MSTriple((1,), (), (2, 2, 1)), 2),
                  (MSTriple((1,), (1,), (2, 1, 1)), -2),
                  (MSTriple((2,), (), (2, 1, 1)), 2),
              ), _ms(theta_p((2, 1, 0), 1), ci))),
        Check("class of Theta_P((2,1,0),2)", "rewrite_to_ms",
              lambda: ((
                  (MSTriple((), (2,), (3, 1)), 2),
                  (MSTriple((1,), (), (3, 1, 1)), 2),
              ), _ms(theta_p((2, 1, 0), 2), ci))),
        Check("cancellation of phi((0,0,0),3)", "reduce",
              lambda: ([-6, 0], little_phi_trace(ci)[:2])),
        Check("H . sigma_(0,0,(3,2,1)) worked example", "intersect_with_h",
              lambda: (WORKED_EXAMPLE_ROW,
                       intersect_with_h(WORKED_EXAMPLE, check_invariants=ci).output)),
        Check("DAG for (2,1,1), i=1", "build_dag",
              lambda: (DAG_211_EDGES, dag.build_dag((2, 1, 1), 1).edges)),
        Check("vanishing path sums for (2,1,1), i=1", "path_weight_sum",
              lambda: ((0, 0), (dag.path_weight_sum(dag.build_dag((2, 1, 1), 1), (1, 0, 0)),
                                dag.path_weight_sum(dag.build_dag((2, 1, 1), 1), (0, 0, 0))))),
        Check("conjecture for (2,1,1), i=1", "check_conjecture",
              lambda: (True, dag.check_conjecture((2, 1, 1), 1).passed)),
    ]
    return out


def conservation_sweep(max_n: int = 5, check_invariants: bool = False) -> list:
    """Run ``intersect_with_h`` over every basis class with ``N <= max_n``;
    returns ``(alpha, error)`` for each failure."""
    failures = []
    for n in range(1, max_n + 1):
        for alpha in enumerate_basis(n):
            try:
                intersect_with_h(alpha, check_invariants=check_invariants)
            except ConservationError as exc:
                failures.append((alpha, exc))
    return failures


def run(check_invariants: bool = False, max_n: int = 5, emit=print) -> bool:
    ok = True
    for c in checks(check_invariants):
        try:
            expected, actual = c.run()
            good = expected == actual
            detail = "" if good else f": expected {expected!r}, got {actual!r}"
        except Exception as exc:  # noqa: BLE001 - every failure is reported, not raised
            good, detail = False, f": {type(exc).__name__}: {exc}"
        ok &= good
        emit(f"{'PASS' if good else 'FAIL'} {c.name} [{c.rule}]{detail}")
    failures = conservation_sweep(max_n, check_invariants)
    for alpha, exc in failures:
        emit(f"FAIL conservation of {alpha} [{exc.rule}] {exc}")
    if not failures:
        emit(f"PASS conservation sweep N <= {max_n}")
    ok &= not failures
    emit("note: the punctual recursion sums i = 1..q-1; an i = q term would "
         "have the wrong codimension")
    return ok

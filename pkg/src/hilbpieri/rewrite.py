"""Degeneration rules and the fixpoint driver that reduces to basis classes.

Each rule maps one core to an integer combination of terms.  Context atoms
of the term being rewritten ride along unchanged, so the driver only ever
needs the rule for the core.  Every rule output preserves length and
codimension term by term; ``check_invariants=True`` asserts this at every
step, otherwise only the final basis classes are checked.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from .classes import (
    BIG_PHI, LITTLE_PHI, PUNCT, THETA_O, THETA_P, TWO_POINT,
    Core, FormalSum, MSTriple, Term,
    big_phi, line, little_phi, moving, point, punct, term, theta_o,
    theta_p, triple_from_atoms, two_point,
)
from .partitions import (
    anchor_index, as_partition, check_anchor, count_assemblies,
    first_deg_coefficient, sigma_set, sigma_set_anchored,
)


class ConservationError(RuntimeError):
    """A rewrite changed the length or codimension of a term."""

    def __init__(self, rule: str, detail: str):
        self.rule = rule
        super().__init__(f"{rule}: {detail}")


def split_h_product(alpha: MSTriple) -> FormalSum:
    """Components of ``H . sigma_alpha`` before any degeneration."""
    a_atoms = [point(k) for k in alpha.a]
    b_atoms = [line(k) for k in alpha.b]
    c_atoms = [moving(k) for k in alpha.c]
    out = FormalSum()

    for e, k in enumerate(alpha.a):
        if k >= 2:
            rest = a_atoms[:e] + a_atoms[e + 1:]
            out.add(term(rest + b_atoms + c_atoms, two_point(k - 2)), 1)

    for f, k in enumerate(alpha.b):
        rest = b_atoms[:f] + b_atoms[f + 1:]
        out.add(term(a_atoms + [point(k)] + rest + c_atoms), 1)

    if alpha.c:
        m = tuple(x - 1 for x in alpha.c)
        # moving lines are unordered: one component per distinct value
        for v in sorted(set(alpha.c), reverse=True):
            i = anchor_index(m, v - 1)
            out.add(term(a_atoms + b_atoms, theta_p(m, i)), 1)
    return out


def expand_theta_p(m, i: int) -> FormalSum:
    """Move the center onto the line: one Theta_O component plus punctual ones."""
    m = as_partition(m)
    check_anchor(m, i)
    out = FormalSum()
    out.add(term((), theta_o(m, i)), m[i - 1] + 1)
    for j in range(1, len(m) + 1):
        for lam in sorted(sigma_set_anchored(m, j, i)):
            out.add(term((), little_phi(lam, j)), first_deg_coefficient(m, i, lam))
    return out


def theta_o_to_atoms(m, i: int) -> tuple:
    m = as_partition(m)
    check_anchor(m, i)
    atoms = [line(m[i - 1] + 1)]
    atoms += [moving(x + 1) for p, x in enumerate(m) if p != i - 1]
    return tuple(sorted(atoms))


def expand_little_phi(lam, q: int) -> FormalSum:
    """Solve the second degeneration for its ``j = 0`` component."""
    lam = as_partition(lam)
    out = FormalSum()
    out.add(term((), big_phi(lam, q)), 1)
    for j in range(1, len(lam) + 1):
        for sub in sorted(sigma_set(lam, j)):
            out.add(term((), little_phi(sub, q + j)), -count_assemblies(lam, sub))
    return out


def big_phi_to_term(lam, q: int) -> Term:
    lam = as_partition(lam)
    return term([moving(x + 1) for x in lam], punct(q))


def expand_punct(q: int) -> FormalSum:
    """Length-``q`` punctual scheme at a fixed point, one step of the MS recursion."""
    if q < 1:
        raise ValueError(f"q must be positive, got {q}")
    out = FormalSum()
    for i in range(1, q):
        out.add(term([line(i)], punct(q - i)), (-1) ** (i + 1))
    out.add(term([point(q)]), (-1) ** (q - 1))
    return out


def expand_two_point(k: int) -> FormalSum:
    """Two fixed points plus ``k`` points on their line."""
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    out = FormalSum()
    for i in range(k + 1):
        out.add(term([point(k + 1 - i)], punct(i + 1)), (-1) ** i)
    return out


RULES: dict[str, str] = {
    THETA_P: "expand_theta_p",
    THETA_O: "theta_o_to_atoms",
    LITTLE_PHI: "expand_little_phi",
    BIG_PHI: "big_phi_to_term",
    PUNCT: "expand_punct",
    TWO_POINT: "expand_two_point",
}


@lru_cache(maxsize=None)
def expand_core(core: Core) -> tuple:
    """One rewrite step for ``core`` as ``((term, coef), ...)``."""
    kind = core.kind
    if kind == THETA_P:
        return tuple(expand_theta_p(core.part, core.n).items())
    if kind == THETA_O:
        return ((term(theta_o_to_atoms(core.part, core.n)), 1),)
    if kind == LITTLE_PHI:
        return tuple(expand_little_phi(core.part, core.n).items())
    if kind == BIG_PHI:
        return ((big_phi_to_term(core.part, core.n), 1),)
    if kind == PUNCT:
        return tuple(expand_punct(core.n).items())
    if kind == TWO_POINT:
        return tuple(expand_two_point(core.n).items())
    raise ValueError(f"unknown core kind {kind!r}")


def schedule_key(core: Core) -> tuple:
    # order of the hand computation: first degeneration, then punctual
    # loci by increasing length at the center, then the MS recursion
    # from the longest punctual scheme down
    if core.kind == THETA_P:
        return (0, 0)
    if core.kind == TWO_POINT:
        return (1, 0)
    if core.kind == THETA_O:
        return (2, 0)
    if core.kind == LITTLE_PHI:
        return (3, core.n)
    if core.kind == BIG_PHI:
        return (4, 0)
    return (5, -core.n)


@dataclass
class RewriteStats:
    rule_applications: int = 0
    max_terms: int = 0


StepHook = Callable[[str, Term, int, FormalSum], None]


def reduce(
    s: FormalSum,
    *,
    stop: Iterable[str] = (),
    order: str = "staged",
    rng: Optional[random.Random] = None,
    check_invariants: bool = False,
    on_step: Optional[StepHook] = None,
    stats: Optional[RewriteStats] = None,
) -> FormalSum:
    """Rewrite every term whose core kind is not in ``stop`` until none is left.

    ``order="staged"`` expands cores in batches by :func:`schedule_key`;
    ``order="random"`` picks one pending term at a time with ``rng``.
    ``on_step(rule, term, coef, state)`` runs after each substitution.
    """
    stop = frozenset(stop)
    if order not in ("staged", "random"):
        raise ValueError(f"unknown order {order!r}")
    if order == "random" and rng is None:
        rng = random.Random(0)
    work = s.copy()
    if stats is not None:
        stats.max_terms = max(stats.max_terms, len(work))

    while True:
        pending = [t for t in work.terms() if t.core is not None and t.core.kind not in stop]
        if not pending:
            return work
        pending.sort(key=Term.sort_key)
        if order == "staged":
            key = min(schedule_key(t.core) for t in pending)
            batch = [t for t in pending if schedule_key(t.core) == key]
        else:
            batch = [rng.choice(pending)]

        for t in batch:
            coef = work.pop(t)
            rule = RULES[t.core.kind]
            for piece, k in expand_core(t.core):
                new = term(t.atoms + piece.atoms, piece.core)
                if check_invariants and (new.length != t.length or new.codim != t.codim):
                    raise ConservationError(
                        rule, f"{new} has length/codim {new.length}/{new.codim}, "
                        f"expected {t.length}/{t.codim} from {t}")
                work.add(new, coef * k)
            if stats is not None:
                stats.rule_applications += 1
                stats.max_terms = max(stats.max_terms, len(work))
            if on_step is not None:
                on_step(rule, t, coef, work)


def rewrite_to_ms(s: FormalSum, **kwargs) -> list[tuple[MSTriple, int]]:
    """Reduce ``s`` to basis classes; returns ``(triple, coef)`` sorted by triple."""
    kwargs.pop("stop", None)
    done = reduce(s, **kwargs)
    acc: dict[MSTriple, int] = {}
    for t, c in done.items():
        tri = triple_from_atoms(t.atoms)
        acc[tri] = acc.get(tri, 0) + c
    return sorted((tri, c) for tri, c in acc.items() if c)


def expand_fully(core: Core, **kwargs) -> FormalSum:
    """All-atom expansion of a single core."""
    return reduce(FormalSum([(term((), core), 1)]), **kwargs)


def cascade_theta(m, i: int, **kwargs) -> FormalSum:
    """Expand ``Theta_P(m, i)`` through all punctual degenerations, stopping
    at ``Theta_O`` and ``BigPhi`` cores."""
    start = FormalSum([(term((), theta_p(m, i)), 1)])
    return reduce(start, stop=(THETA_O, BIG_PHI), **kwargs)


def big_phi_coefficients(m, i: int) -> dict:
    """``{lam: coef}`` of ``BigPhi(lam, .)`` in :func:`cascade_theta`."""
    out = {}
    for t, c in cascade_theta(m, i).items():
        if t.core.kind == BIG_PHI:
            out[t.core.part] = out.get(t.core.part, 0) + c
    return out

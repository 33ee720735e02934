"""Symbols manipulated by the rewriter.

A :class:`Term` is a product of terminal incidence conditions (atoms) and at
most one nonterminal locus (core) that still needs to be degenerated.  Every
symbol carries a length (number of points it accounts for) and a
codimension; rewriting must preserve both.

Atom kinds::

    "A"  fixed point on a fixed line, k points on that line in total
    "B"  fixed line met in k points
    "C"  k points collinear with the common moving-line center
         (k = 1 is a free point)
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .partitions import Partition, as_partition, check_anchor

INT64_MAX = 2**63 - 1


class Atom(NamedTuple):
    kind: str
    k: int

    @property
    def length(self) -> int:
        return self.k

    @property
    def codim(self) -> int:
        if self.kind == "A":
            return self.k + 1
        if self.kind == "B":
            return self.k
        return self.k - 1


def _atom(kind: str, k: int) -> Atom:
    if k < 1:
        raise ValueError(f"atom {kind} needs k >= 1, got {k}")
    return Atom(kind, int(k))


def point(k: int) -> Atom:
    return _atom("A", k)


def line(k: int) -> Atom:
    return _atom("B", k)


def moving(k: int) -> Atom:
    return _atom("C", k)


# core kinds
THETA_P = "ThetaP"
THETA_O = "ThetaO"
LITTLE_PHI = "LittlePhi"
BIG_PHI = "BigPhi"
PUNCT = "Punct"
TWO_POINT = "TwoPoint"


class Core(NamedTuple):
    """A nonterminal locus.

    ``part`` is the engine partition (zeros kept) for the Theta and phi
    kinds and ``()`` otherwise; ``n`` is the anchor index for Theta, the
    punctual length ``q`` for the phi kinds and Punct, and the number of
    extra collinear points for TwoPoint.
    """

    kind: str
    part: Partition
    n: int

    @property
    def length(self) -> int:
        if self.kind in (THETA_P, THETA_O):
            return sum(self.part) + len(self.part)
        if self.kind in (LITTLE_PHI, BIG_PHI):
            return sum(self.part) + len(self.part) + self.n
        if self.kind == PUNCT:
            return self.n
        return self.n + 2

    @property
    def codim(self) -> int:
        if self.kind in (THETA_P, THETA_O):
            return sum(self.part) + 1
        if self.kind in (LITTLE_PHI, BIG_PHI):
            return sum(self.part) + self.n + 1
        if self.kind == PUNCT:
            return self.n + 1
        return self.n + 4

    def __str__(self):
        if self.kind in (PUNCT, TWO_POINT):
            return f"{self.kind}({self.n})"
        return f"{self.kind}({self.part},{self.n})"


def theta_p(m, i: int) -> Core:
    m = as_partition(m)
    check_anchor(m, i)
    return Core(THETA_P, m, i)


def theta_o(m, i: int) -> Core:
    m = as_partition(m)
    check_anchor(m, i)
    return Core(THETA_O, m, i)


def _phi(kind, lam, q):
    if q < 1:
        raise ValueError(f"{kind} needs q >= 1, got {q}")
    return Core(kind, as_partition(lam), q)


def little_phi(lam, q: int) -> Core:
    return _phi(LITTLE_PHI, lam, q)


def big_phi(lam, q: int) -> Core:
    return _phi(BIG_PHI, lam, q)


def punct(q: int) -> Core:
    if q < 1:
        raise ValueError(f"Punct needs q >= 1, got {q}")
    return Core(PUNCT, (), q)


def two_point(k: int) -> Core:
    if k < 0:
        raise ValueError(f"TwoPoint needs k >= 0, got {k}")
    return Core(TWO_POINT, (), k)


class Term(NamedTuple):
    atoms: tuple[Atom, ...]
    core: Optional[Core] = None

    @property
    def length(self) -> int:
        return term_length(self)

    @property
    def codim(self) -> int:
        return term_codim(self)

    def sort_key(self):
        return (self.atoms, self.core is not None, self.core or ())

    def __str__(self):
        parts = [f"{a.kind}{a.k}" for a in self.atoms]
        if self.core is not None:
            parts.append(str(self.core))
        return "*".join(parts) or "1"


def term(atoms: Iterable[Atom] = (), core: Optional[Core] = None) -> Term:
    """Canonical term: atoms sorted by kind then k."""
    return Term(tuple(sorted(atoms)), core)


def canonical(t: Term) -> Term:
    return term(t.atoms, t.core)


def term_length(t: Term) -> int:
    n = sum(a.length for a in t.atoms)
    return n + (t.core.length if t.core is not None else 0)


def term_codim(t: Term) -> int:
    n = sum(a.codim for a in t.atoms)
    return n + (t.core.codim if t.core is not None else 0)


class FormalSum:
    """Integer combination of canonical terms; zero coefficients are dropped.

    Coefficients are checked against the signed 64-bit range and an
    ``OverflowError`` is raised instead of silently growing.
    """

    def __init__(self, items=None):
        self._coef: dict[Term, int] = {}
        if items:
            for t, c in items:
                self.add(t, c)

    def add(self, t: Term, coef: int) -> "FormalSum":
        if not coef:
            return self
        t = canonical(t)
        value = self._coef.get(t, 0) + coef
        if abs(value) > INT64_MAX:
            raise OverflowError(f"coefficient of {t} overflows int64")
        if value:
            self._coef[t] = value
        else:
            del self._coef[t]
        return self

    def pop(self, t: Term) -> int:
        return self._coef.pop(t)

    def coefficient(self, t: Term) -> int:
        return self._coef.get(canonical(t), 0)

    def copy(self) -> "FormalSum":
        out = FormalSum()
        out._coef = dict(self._coef)
        return out

    def items(self):
        """Entries in canonical order."""
        return sorted(self._coef.items(), key=lambda kv: kv[0].sort_key())

    def terms(self):
        return self._coef.keys()

    def __len__(self):
        return len(self._coef)

    def __contains__(self, t):
        return canonical(t) in self._coef

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._coef == other._coef

    def __add__(self, other: "FormalSum") -> "FormalSum":
        out = self.copy()
        for t, c in other._coef.items():
            out.add(t, c)
        return out

    def scaled(self, k: int) -> "FormalSum":
        out = FormalSum()
        for t, c in self._coef.items():
            out.add(t, c * k)
        return out

    def __repr__(self):
        body = " ".join(f"{c:+d}*{t}" for t, c in self.items())
        return f"FormalSum({body or '0'})"


def sum_add(s: FormalSum, t: Term, coef: int) -> FormalSum:
    return s.add(t, coef)


def _fmt(p):
    if not p:
        return "0"
    return "(" + ",".join(map(str, p)) + ")"


@dataclass(frozen=True, order=True)
class MSTriple:
    """Index ``(a, b, c)`` of a Mallavibarrena-Sols basis class; all entries positive."""

    a: Partition = ()
    b: Partition = ()
    c: Partition = ()

    def __post_init__(self):
        for name in ("a", "b", "c"):
            p = as_partition(getattr(self, name))
            if any(x == 0 for x in p):
                raise ValueError(f"{name}={p} has a zero entry")
            object.__setattr__(self, name, p)

    @property
    def n(self) -> int:
        return sum(self.a) + sum(self.b) + sum(self.c)

    @property
    def r(self) -> int:
        return len(self.a)

    @property
    def s(self) -> int:
        return len(self.b)

    @property
    def t(self) -> int:
        return len(self.c)

    @property
    def codim(self) -> int:
        return self.n + self.r - self.t

    def atoms(self) -> tuple[Atom, ...]:
        out = [point(k) for k in self.a]
        out += [line(k) for k in self.b]
        out += [moving(k) for k in self.c]
        return tuple(sorted(out))

    def to_json(self) -> dict:
        return {"a": list(self.a), "b": list(self.b), "c": list(self.c)}

    @classmethod
    def from_json(cls, d: dict) -> "MSTriple":
        return cls(tuple(d["a"]), tuple(d["b"]), tuple(d["c"]))

    def __str__(self):
        return f"({_fmt(self.a)},{_fmt(self.b)},{_fmt(self.c)})"

    def latex(self) -> str:
        return r"\sigma_{" + str(self) + "}"


def triple_from_atoms(atoms: Iterable[Atom]) -> MSTriple:
    a, b, c = [], [], []
    for at in atoms:
        {"A": a, "B": b, "C": c}[at.kind].append(at.k)
    return MSTriple(tuple(sorted(a, reverse=True)), tuple(sorted(b, reverse=True)),
                    tuple(sorted(c, reverse=True)))

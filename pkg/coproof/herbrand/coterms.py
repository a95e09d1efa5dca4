"""Coterms: possibly infinite first-order trees, observed one layer at a time.

A coterm is anything with ``out()``, the structure map of the final
coalgebra: it yields the root symbol (or variable) and the coterms below
it. Regular trees are backed by a term graph; everything else stays a
lazy term reduced on demand.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from collections.abc import Mapping
from typing import Optional

from ..core import config
from ..core.errors import KernelError, NotGuarded
from ..kernel.guarded import is_first_order_guarded
from ..kernel.rational import TermGraph, to_graph
from ..kernel.reduction import head_normal_form
from ..kernel.signature import Signature
from ..kernel.terms import Const, Meta, Term

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Observation:
    head: str
    is_var: bool
    children: tuple["Coterm", ...] = ()


class Coterm(ABC):
    @abstractmethod
    def out(self) -> Observation:
        ...

    def __str__(self) -> str:
        from .truncation import observe
        return str(observe(self, config.TRUNCATION_DEPTH))


@dataclass(frozen=True)
class VarCoterm(Coterm):
    name: str

    def out(self) -> Observation:
        return Observation(self.name, True)


@dataclass(frozen=True)
class RationalCoterm(Coterm):
    graph: TermGraph
    node: int = 0

    def out(self) -> Observation:
        n = self.graph.nodes[self.node]
        return Observation(n.symbol, n.is_var,
                           tuple(RationalCoterm(self.graph, c) for c in n.children))


@dataclass(frozen=True)
class LazyCoterm(Coterm):
    term: Term
    variables: frozenset[str] = frozenset()
    fuel: Optional[int] = field(default=None, compare=False)

    def out(self) -> Observation:
        hnf = head_normal_form(self.term, self.fuel)
        head = hnf.head
        if isinstance(head, Meta):
            return Observation(f"?{head.id}", True)
        if not isinstance(head, Const):
            raise NotGuarded(f"{self.term} has a bound variable at its head")
        return Observation(head.name, head.name in self.variables,
                           tuple(LazyCoterm(a, self.variables, self.fuel) for a in hnf.args))


@dataclass(frozen=True)
class SubstCoterm(Coterm):
    """``base`` with its variable leaves replaced through ``theta``."""

    base: Coterm
    theta: "KleisliSubst"

    def out(self) -> Observation:
        obs = self.base.out()
        if obs.is_var and obs.head in self.theta:
            return self.theta[obs.head].out()
        return Observation(obs.head, obs.is_var,
                           tuple(SubstCoterm(c, self.theta) for c in obs.children))


# ── Interpretation of guarded terms ───────────────────────────────

def interpret_guarded(
    sig: Signature,
    m: Term,
    variables: frozenset[str] = frozenset(),
    budget: Optional[int] = None,
) -> Coterm:
    """⟦M⟧. Constants named in ``variables`` are read as variable leaves.

    Raises NotGuarded unless ``m`` is a first-order guarded term of type ι.
    """
    if not is_first_order_guarded(sig, (), m):
        raise NotGuarded(f"{m} is not a first-order guarded term")
    try:
        g = to_graph(m, variables, budget)
    except KernelError as e:
        raise NotGuarded(f"{m} has no head normal form: {e}") from None
    if g is not None:
        return RationalCoterm(g, g.root)
    return LazyCoterm(m, variables)


def interpret_open(m: Term, variables: frozenset[str], budget: Optional[int] = None) -> Coterm:
    """⟦M⟧ for clause terms whose variables are placeholder constants."""
    g = to_graph(m, variables, budget)
    if g is not None:
        return RationalCoterm(g, g.root)
    return LazyCoterm(m, variables)


def as_graph(c: Coterm) -> Optional[TermGraph]:
    if isinstance(c, RationalCoterm) and c.node == c.graph.root:
        return c.graph
    return None


# ── Equality ──────────────────────────────────────────────────────

def coterm_equal(c1: Coterm, c2: Coterm, k: int) -> bool:
    """Observations agree on every node at distance ≤ k from the root."""
    stack = [(c1, c2, 0)]
    while stack:
        a, b, depth = stack.pop()
        oa, ob = a.out(), b.out()
        if (oa.head, oa.is_var, len(oa.children)) != (ob.head, ob.is_var, len(ob.children)):
            return False
        if depth < k:
            stack.extend((x, y, depth + 1) for x, y in zip(oa.children, ob.children))
    return True


# ── Kleisli substitutions ─────────────────────────────────────────

@dataclass(frozen=True)
class KleisliSubst(Mapping):
    """A map from variable names to coterms; identity elsewhere."""

    mapping: tuple[tuple[str, Coterm], ...] = ()

    @classmethod
    def of(cls, mapping: Mapping[str, Coterm]) -> "KleisliSubst":
        return cls(tuple(sorted(mapping.items(), key=lambda kv: kv[0])))

    def __getitem__(self, name: str) -> Coterm:
        for k, v in self.mapping:
            if k == name:
                return v
        raise KeyError(name)

    def __iter__(self):
        return (k for k, _ in self.mapping)

    def __len__(self) -> int:
        return len(self.mapping)

    def __str__(self) -> str:
        return "{" + ", ".join(f"{k} ↦ {v}" for k, v in self.mapping) + "}"


IDENTITY = KleisliSubst()


def substitute(c: Coterm, theta: KleisliSubst) -> Coterm:
    """c[θ]."""
    if not theta:
        return c
    return SubstCoterm(c, theta)


def compose(theta: KleisliSubst, delta: KleisliSubst) -> KleisliSubst:
    """θ ⊙ δ, so that c[θ][δ] = c[θ ⊙ δ]."""
    mapping = {name: substitute(t, delta) for name, t in theta.items()}
    for name, t in delta.items():
        mapping.setdefault(name, t)
    return KleisliSubst.of(mapping)


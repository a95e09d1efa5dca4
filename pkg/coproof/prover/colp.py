"""Coinductive SLD resolution with loop detection (CoLP).

A subgoal that unifies with one of its ancestors on the same branch is
closed coinductively; unification is rational, so a loop such as
X = f X yields the circular answer X = fix x. f x.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Iterator, Optional

from ..core import config
from ..core.errors import NoUnifier
from ..kernel.rational import Node, canonical
from ..kernel.signature import Signature
from ..kernel.terms import Const, Meta, Term, metas
from ..logic.formulas import Atom, Forall, Formula, Imp, conjuncts, instantiate_formula
from ..logic.programs import HornClause, Program
from .unify import EMPTY, Substitution, Unifier, UnifyMode

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColpAnswer:
    """Answer substitution restricted to the query's variables."""

    bindings: tuple[tuple[Meta, Term], ...] = ()

    def __str__(self) -> str:
        if not self.bindings:
            return "id"
        from ..syntax.printer import show_term
        return ", ".join(f"{m.hint} = {show_term(t, annotate=False)}" for m, t in self.bindings)

    def as_dict(self) -> dict[str, Term]:
        return {m.hint: t for m, t in self.bindings}


@dataclass(frozen=True)
class ColpFailure:
    bound: int

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        return "FAIL"


Goal = tuple[Atom, tuple[Atom, ...]]  # subgoal and its ancestors


def colp_solve(
    sig: Signature,
    p: Program,
    query: Atom,
    bound: Optional[int] = None,
) -> ColpAnswer | ColpFailure:
    bound = config.COLP_BOUND if bound is None else bound
    solver = _Colp(sig, p.horn_clauses(), bound)
    for subst in solver.solve([(query, ())], EMPTY):
        answer = _answer(query, subst)
        logger.info(f"colp: {query} answered by {answer}")
        return answer
    logger.info(f"colp: {query} failed within {bound} steps")
    return ColpFailure(bound)


def _answer(query: Atom, subst: Substitution) -> ColpAnswer:
    wanted = sorted({m for t in query.args for m in metas(t)}, key=lambda m: m.id)
    bindings = []
    for m in wanted:
        t = subst.resolve(m)
        if t == m:
            continue
        leaves = {f"?{u.id}": u for u in metas(t)}
        t = canonical(t, lambda n, leaves=leaves: _leaf(n, leaves))
        bindings.append((m, t))
    return ColpAnswer(tuple(bindings))


def _leaf(n: Node, leaves: dict[str, Meta]) -> Term:
    return leaves.get(n.symbol, Const(n.symbol))


class _Colp:
    def __init__(self, sig: Signature, clauses: list[HornClause], bound: int):
        self.unifier = Unifier(sig, UnifyMode.RATIONAL)
        self.clauses = clauses
        self.bound = bound
        self.ids = itertools.count(1_000_000)

    def unify(self, a: Atom, b: Atom, subst: Substitution) -> Optional[Substitution]:
        try:
            return self.unifier.unify_atoms(a, b, subst)
        except NoUnifier:
            return None

    def rename(self, clause: HornClause) -> tuple[list[Formula], Formula]:
        phi = clause.formula
        while isinstance(phi, Forall):
            i = next(self.ids)
            phi = instantiate_formula(phi.body, Meta(i, f"_{phi.hint}{i}", 0, phi.ty))
        if isinstance(phi, Imp):
            return conjuncts(phi.left), phi.right
        return [], phi

    def solve(self, goals: list[Goal], subst: Substitution) -> Iterator[Substitution]:
        if not goals:
            yield subst
            return
        (atom, ancestors), rest = goals[0], goals[1:]
        for ancestor in reversed(ancestors):
            s = self.unify(atom, ancestor, subst)
            if s is not None:
                logger.debug(f"colp: loop closed at {subst.resolve_formula(atom)}")
                yield from self.solve(rest, s)
        if len(ancestors) >= self.bound:
            return
        for clause in self.clauses:
            body, head = self.rename(clause)
            if not isinstance(head, Atom) or head.pred != atom.pred:
                continue
            s = self.unify(head, atom, subst)
            if s is None:
                continue
            chain = ancestors + (atom,)
            yield from self.solve([(b, chain) for b in body if isinstance(b, Atom)] + rest, s)

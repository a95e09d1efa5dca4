"""First-order unification over guarded terms.

Three modes:

- ``syntactic``: most general unifiers with occurs check;
- ``rational``: an equation X = C[X] is solved by X := fix x. C[x], and
  fixed points are unfolded on a symbol clash (CoLP's circular unifiers);
- ``whnf``: both sides are head normalised before a clash is declared,
  which lets ``scons N₁ N₂`` meet ``fromFun c``.

Unification variables are ``Meta`` terms. A meta created under n
eigenvariables can only be bound to terms over the first n of them. Binding
it to a term with metas of wider scope narrows those metas to its own.
"""

from __future__ import annotations

import enum
import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from ..core import config
from ..core.errors import FuelExhausted, NoUnifier, OccursCheck
from ..kernel.guarded import is_guarded_base
from ..kernel.reduction import Fuel, whnf_with
from ..kernel.signature import Signature
from ..kernel.terms import (
    App, Const, Fix, Lam, Meta, Term, Var, abstract, is_closed, metas, spine, subterms,
)
from ..logic.formulas import Atom, Formula, Top, map_terms

logger = logging.getLogger(__name__)

# negative, so never equal to a meta made by search, colp or the parser
_narrowed_ids = itertools.count(-1, -1)


class UnifyMode(str, enum.Enum):
    SYNTACTIC = "syntactic"
    RATIONAL = "rational"
    WHNF = "whnf"


@dataclass(frozen=True)
class Substitution:
    """Triangular bindings Meta → Term; ``resolve`` applies them fully."""

    bindings: Mapping[Meta, Term] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.bindings)

    def __contains__(self, m: Meta) -> bool:
        return m in self.bindings

    def extend(self, m: Meta, t: Term) -> "Substitution":
        return Substitution({**self.bindings, m: t})

    def walk(self, t: Term) -> Term:
        while isinstance(t, Meta) and t in self.bindings:
            t = self.bindings[t]
        return t

    def resolve(self, t: Term) -> Term:
        if not self.bindings:
            return t
        if isinstance(t, Meta):
            bound = self.walk(t)
            return t if bound is t else self.resolve(bound)
        if isinstance(t, App):
            fn, arg = self.resolve(t.fn), self.resolve(t.arg)
            return t if fn is t.fn and arg is t.arg else App(fn, arg)
        if isinstance(t, (Lam, Fix)):
            body = self.resolve(t.body)
            return t if body is t.body else type(t)(t.ty, body, t.hint)
        return t

    def resolve_formula(self, phi: Formula) -> Formula:
        if not self.bindings:
            return phi
        return map_terms(phi, lambda t, d: self.resolve(t))

    def idempotent(self) -> dict[Meta, Term]:
        return {m: self.resolve(t) for m, t in self.bindings.items()}

    def restrict(self, keep: Iterable[Meta]) -> dict[Meta, Term]:
        return {m: self.resolve(m) for m in keep if self.resolve(m) != m}


EMPTY = Substitution()


class Unifier:
    """One unification problem: mode, signature and eigenvariable order."""

    def __init__(
        self,
        sig: Signature,
        mode: UnifyMode = UnifyMode.SYNTACTIC,
        eigens: Sequence[str] = (),
        fuel: int | None = None,
    ):
        self.sig = sig
        self.mode = mode
        self.eigen_rank = {name: i for i, name in enumerate(eigens)}
        self.fuel = Fuel(config.DEFAULT_FUEL if fuel is None else fuel)

    def unify(self, t1: Term, t2: Term, subst: Substitution = EMPTY) -> Substitution:
        try:
            return self._pairs([(t1, t2)], subst, set())
        except FuelExhausted as e:
            raise NoUnifier(str(e)) from None

    def unify_atoms(self, a1: Formula, a2: Formula, subst: Substitution = EMPTY) -> Substitution:
        if isinstance(a1, Top) and isinstance(a2, Top):
            return subst
        if not (isinstance(a1, Atom) and isinstance(a2, Atom)) or a1.pred != a2.pred \
                or len(a1.args) != len(a2.args):
            raise NoUnifier(f"{a1} and {a2} have different predicates")
        try:
            return self._pairs(list(zip(a1.args, a2.args)), subst, set())
        except FuelExhausted as e:
            raise NoUnifier(str(e)) from None

    # ── worker ──

    def _pairs(self, pairs, subst: Substitution, seen: set) -> Substitution:
        stack = list(reversed(pairs))
        while stack:
            a, b = stack.pop()
            a, b = subst.resolve(a), subst.resolve(b)
            if a == b or (a, b) in seen:
                continue
            seen.add((a, b))
            if isinstance(a, Meta):
                subst = self._bind(a, b, subst)
                continue
            if isinstance(b, Meta):
                subst = self._bind(b, a, subst)
                continue
            ha, args_a = spine(a)
            hb, args_b = spine(b)
            if ha == hb and len(args_a) == len(args_b) and isinstance(ha, (Const, Var, Fix)):
                if not isinstance(ha, Fix) or self.mode is UnifyMode.SYNTACTIC:
                    stack.extend(reversed(list(zip(args_a, args_b))))
                    continue
                try:
                    subst = self._pairs(list(zip(args_a, args_b)), subst, set(seen))
                    continue
                except NoUnifier:
                    pass
            if self.mode is not UnifyMode.SYNTACTIC and (_is_redex(ha, args_a) or _is_redex(hb, args_b)):
                stack.append((whnf_with(a, self.fuel), whnf_with(b, self.fuel)))
                continue
            if type(a) is type(b) and isinstance(a, (Lam, Fix)) and a.ty == b.ty:
                stack.append((a.body, b.body))
                continue
            raise NoUnifier(f"symbol clash between {a} and {b}")
        return subst

    def _bind(self, m: Meta, t: Term, subst: Substitution) -> Substitution:
        if isinstance(t, Meta):
            older, younger = (m, t) if (m.scope, m.id) <= (t.scope, t.id) else (t, m)
            return subst.extend(younger, older)
        if not is_closed(t):
            raise NoUnifier(f"{m} cannot capture a bound variable in {t}")
        if m in metas(t):
            t = self._circular(m, t)
        subst = self._narrow(m, t, subst)
        t = subst.resolve(t)
        self._check_scope(m, t)
        return subst.extend(m, t)

    def _narrow(self, m: Meta, t: Term, subst: Substitution) -> Substitution:
        for u in sorted(metas(t), key=lambda v: v.id):
            if u.scope > m.scope:
                narrowed = Meta(next(_narrowed_ids), u.hint, m.scope, u.ty)
                logger.debug(f"narrowed {u} to scope {m.scope}")
                subst = subst.extend(u, narrowed)
        return subst

    def _circular(self, m: Meta, t: Term) -> Term:
        if self.mode is UnifyMode.SYNTACTIC:
            raise OccursCheck(f"{m} occurs in {t}")
        if self.mode is UnifyMode.WHNF:
            raise NoUnifier(f"{m} occurs in {t}")
        knot = Fix(m.ty, abstract(t, m), "x")
        if not is_guarded_base(self.sig, (), knot, m.ty):
            raise NoUnifier(f"circular unifier {knot} is not guarded")
        logger.debug(f"circular unifier {m} := {knot}")
        return knot

    def _check_scope(self, m: Meta, t: Term) -> None:
        for u in subterms(t):
            if isinstance(u, Const) and self.eigen_rank.get(u.name, -1) >= m.scope:
                raise NoUnifier(f"{m} cannot depend on eigenvariable {u.name}")
            if isinstance(u, Meta) and u.scope > m.scope:
                raise NoUnifier(f"{m} cannot depend on {u}")


def unify(
    sig: Signature,
    t1: Term,
    t2: Term,
    mode: UnifyMode = UnifyMode.SYNTACTIC,
    subst: Substitution = EMPTY,
) -> Substitution:
    """Most general unifier of ``t1`` and ``t2`` (within ``mode``)."""
    return Unifier(sig, mode).unify(t1, t2, subst)


def _is_redex(head: Term, args: list[Term]) -> bool:
    return isinstance(head, Fix) or (isinstance(head, Lam) and bool(args))

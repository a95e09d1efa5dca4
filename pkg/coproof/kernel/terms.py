"""Terms of the simply typed λ-calculus with fixed points.

Bound variables are de Bruijn indices; binder names are kept only as
printing hints and never take part in equality, so ``==`` is α-equivalence.
Constants cover signature symbols, eigenvariables and iFOL▷ context
variables. ``Meta`` is a unification variable standing for a closed term.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

from .types import IOTA, Type


@dataclass(frozen=True)
class Var:
    index: int
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Meta:
    """Unification variable.

    ``scope`` is the number of eigenvariables in scope when the variable was
    created; it may only be bound to terms over those.
    """

    id: int
    hint: str = field(default="X", compare=False)
    scope: int = field(default=0, compare=False)
    ty: Type = field(default=IOTA, compare=False)


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    ty: Type
    body: "Term"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Fix:
    ty: Type
    body: "Term"
    hint: str = field(default="x", compare=False)


Term = Union[Var, Const, Meta, App, Lam, Fix]


def _str(self) -> str:
    from ..syntax.printer import show_term
    return show_term(self)


for _cls in (Var, Const, Meta, App, Lam, Fix):
    _cls.__str__ = _str


# ── Spines ────────────────────────────────────────────────────────

def mk_app(head: Term, *args: Term) -> Term:
    for a in args:
        head = App(head, a)
    return head


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split ``h a1 ... an`` into ``(h, [a1, ..., an])``."""
    args = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


# ── de Bruijn plumbing ────────────────────────────────────────────

def map_vars(t: Term, fn: Callable[[Var, int], Term], depth: int = 0) -> Term:
    """Rebuild ``t`` replacing each variable by ``fn(var, binder_depth)``."""
    if isinstance(t, Var):
        return fn(t, depth)
    if isinstance(t, App):
        fn_ = map_vars(t.fn, fn, depth)
        arg = map_vars(t.arg, fn, depth)
        if fn_ is t.fn and arg is t.arg:
            return t
        return App(fn_, arg)
    if isinstance(t, (Lam, Fix)):
        body = map_vars(t.body, fn, depth + 1)
        if body is t.body:
            return t
        return type(t)(t.ty, body, t.hint)
    return t


def shift(t: Term, amount: int, cutoff: int = 0) -> Term:
    if amount == 0:
        return t

    def bump(v: Var, depth: int) -> Term:
        if v.index >= cutoff + depth:
            return Var(v.index + amount, v.hint)
        return v

    return map_vars(t, bump)


def subst(t: Term, j: int, s: Term) -> Term:
    """Replace index ``j`` by ``s`` and close the gap left by it."""

    def replace(v: Var, depth: int) -> Term:
        if v.index == j + depth:
            return shift(s, depth)
        if v.index > j + depth:
            return Var(v.index - 1, v.hint)
        return v

    return map_vars(t, replace)


def instantiate(body: Term, s: Term) -> Term:
    """Open a binder body with ``s`` in place of index 0."""
    return subst(body, 0, s)


def abstract(t: Term, target: Term, depth: int = 0) -> Term:
    """Turn every occurrence of ``target`` (a Const or Meta) into index
    ``depth`` of a new enclosing binder."""

    def walk(u: Term, depth: int) -> Term:
        if u == target:
            return Var(depth)
        if isinstance(u, Var):
            return Var(u.index + 1, u.hint) if u.index >= depth else u
        if isinstance(u, App):
            return App(walk(u.fn, depth), walk(u.arg, depth))
        if isinstance(u, (Lam, Fix)):
            return type(u)(u.ty, walk(u.body, depth + 1), u.hint)
        return u

    return walk(t, depth)


def replace_const(t: Term, name: str, s: Term) -> Term:
    """Replace constant ``name`` by a closed term ``s``."""
    if isinstance(t, Const):
        return s if t.name == name else t
    if isinstance(t, App):
        return App(replace_const(t.fn, name, s), replace_const(t.arg, name, s))
    if isinstance(t, (Lam, Fix)):
        return type(t)(t.ty, replace_const(t.body, name, s), t.hint)
    return t


# ── Queries ───────────────────────────────────────────────────────

def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        yield from subterms(t.fn)
        yield from subterms(t.arg)
    elif isinstance(t, (Lam, Fix)):
        yield from subterms(t.body)


def free_indices(t: Term, depth: int = 0) -> set[int]:
    if isinstance(t, Var):
        return {t.index - depth} if t.index >= depth else set()
    if isinstance(t, App):
        return free_indices(t.fn, depth) | free_indices(t.arg, depth)
    if isinstance(t, (Lam, Fix)):
        return free_indices(t.body, depth + 1)
    return set()


def is_closed(t: Term) -> bool:
    return not free_indices(t)


def constants(t: Term) -> set[str]:
    return {u.name for u in subterms(t) if isinstance(u, Const)}


def metas(t: Term) -> set[Meta]:
    return {u for u in subterms(t) if isinstance(u, Meta)}


def has_fix(t: Term) -> bool:
    return any(isinstance(u, Fix) for u in subterms(t))


def size(t: Term) -> int:
    return sum(1 for _ in subterms(t))

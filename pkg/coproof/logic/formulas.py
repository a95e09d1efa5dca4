"""Formulae over a signature, with the later modality ▷.

Quantifiers bind de Bruijn index 0 in the terms below them; formula and
term binders share one index space.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Union

from ..core.errors import ArityMismatch
from ..kernel.signature import Context, Signature, ctx_extend
from ..kernel.terms import (
    Meta, Term, abstract, constants, metas, replace_const, shift, subst,
)
from ..kernel.typecheck import infer_type
from ..kernel.types import OMICRON, Type, argument_types, is_simple, result_type


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple[Term, ...] = ()


@dataclass(frozen=True)
class Top:
    pass


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Forall:
    ty: Type
    body: "Formula"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Exists:
    ty: Type
    body: "Formula"
    hint: str = field(default="x", compare=False)


@dataclass(frozen=True)
class Later:
    body: "Formula"


Formula = Union[Atom, Top, And, Or, Imp, Forall, Exists, Later]
TOP = Top()


def _str(self) -> str:
    from ..syntax.printer import show_formula
    return show_formula(self)


for _cls in (Atom, Top, And, Or, Imp, Forall, Exists, Later):
    _cls.__str__ = _str


def is_atom(phi: Formula) -> bool:
    return isinstance(phi, (Atom, Top))


# ── Traversal ─────────────────────────────────────────────────────

def map_terms(phi: Formula, fn: Callable[[Term, int], Term], depth: int = 0) -> Formula:
    """Rebuild ``phi`` applying ``fn(term, quantifier_depth)`` to every term."""
    if isinstance(phi, Atom):
        return Atom(phi.pred, tuple(fn(t, depth) for t in phi.args))
    if isinstance(phi, Top):
        return phi
    if isinstance(phi, (And, Or, Imp)):
        return type(phi)(map_terms(phi.left, fn, depth), map_terms(phi.right, fn, depth))
    if isinstance(phi, (Forall, Exists)):
        return type(phi)(phi.ty, map_terms(phi.body, fn, depth + 1), phi.hint)
    if isinstance(phi, Later):
        return Later(map_terms(phi.body, fn, depth))
    raise TypeError(f"not a formula: {phi!r}")


def terms_of(phi: Formula) -> Iterator[Term]:
    if isinstance(phi, Atom):
        yield from phi.args
    elif isinstance(phi, (And, Or, Imp)):
        yield from terms_of(phi.left)
        yield from terms_of(phi.right)
    elif isinstance(phi, (Forall, Exists, Later)):
        yield from terms_of(phi.body)


def atoms(phi: Formula) -> Iterator[Formula]:
    if is_atom(phi):
        yield phi
    elif isinstance(phi, (And, Or, Imp)):
        yield from atoms(phi.left)
        yield from atoms(phi.right)
    elif isinstance(phi, (Forall, Exists, Later)):
        yield from atoms(phi.body)


def instantiate_formula(body: Formula, s: Term) -> Formula:
    """Open a quantifier body with the closed-over term ``s``."""
    return map_terms(body, lambda t, d: subst(t, d, shift(s, d)))


def abstract_formula(phi: Formula, target: Term) -> Formula:
    """Inverse of instantiation: bind ``target`` as a new outermost index."""
    return map_terms(phi, lambda t, d: abstract(t, target, d))


def replace_const_formula(phi: Formula, name: str, s: Term) -> Formula:
    return map_terms(phi, lambda t, d: replace_const(t, name, s))


def shift_formula(phi: Formula, amount: int) -> Formula:
    return map_terms(phi, lambda t, d: shift(t, amount, d))


def formula_constants(phi: Formula) -> set[str]:
    found: set[str] = set()
    for t in terms_of(phi):
        found |= constants(t)
    return found


def formula_metas(phi: Formula) -> set[Meta]:
    found: set[Meta] = set()
    for t in terms_of(phi):
        found |= metas(t)
    return found


def has_later(phi: Formula) -> bool:
    if isinstance(phi, Later):
        return True
    if isinstance(phi, (And, Or, Imp)):
        return has_later(phi.left) or has_later(phi.right)
    if isinstance(phi, (Forall, Exists)):
        return has_later(phi.body)
    return False


def conjunction(parts: list[Formula]) -> Formula:
    """Right-associated conjunction; ⊤ for no parts."""
    if not parts:
        return TOP
    result = parts[-1]
    for p in reversed(parts[:-1]):
        result = And(p, result)
    return result


def conjuncts(phi: Formula) -> list[Formula]:
    if isinstance(phi, And):
        return conjuncts(phi.left) + conjuncts(phi.right)
    return [phi]


# ── Well-formedness ───────────────────────────────────────────────

def well_formed(sig: Signature, ctx: Context, phi: Formula) -> bool:
    """Γ ⊢ φ : o. Raises ArityMismatch, UnknownPredicate or UnboundVariable."""
    if isinstance(phi, Top):
        return True
    if isinstance(phi, Atom):
        pred_ty = sig.pred_type(phi.pred)
        expected = argument_types(pred_ty)
        if len(expected) != len(phi.args) or result_type(pred_ty) != OMICRON:
            raise ArityMismatch(
                f"{phi.pred} expects {len(expected)} arguments, got {len(phi.args)}")
        for i, (arg, ty) in enumerate(zip(phi.args, expected)):
            actual = infer_type(sig, ctx, arg)
            if actual != ty:
                raise ArityMismatch(
                    f"argument {i + 1} of {phi.pred} has type {actual}, expected {ty}")
        return True
    if isinstance(phi, (And, Or, Imp)):
        return well_formed(sig, ctx, phi.left) and well_formed(sig, ctx, phi.right)
    if isinstance(phi, (Forall, Exists)):
        if not is_simple(phi.ty):
            raise ArityMismatch(f"quantifier over non-simple type {phi.ty}")
        return well_formed(sig, ctx_extend(ctx, phi.hint, phi.ty), phi.body)
    if isinstance(phi, Later):
        return well_formed(sig, ctx, phi.body)
    raise TypeError(f"not a formula: {phi!r}")

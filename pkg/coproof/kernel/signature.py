"""Signatures Σ and typing contexts Γ."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from ..core.errors import UnboundVariable, UnknownConstant, UnknownPredicate
from .types import Type, is_prop, is_simple, order


@dataclass(frozen=True)
class Signature:
    """Term symbols and predicate symbols, each name → type.

    Signatures are treated as values: every ``with_*`` / ``extend`` call
    returns a new signature.
    """

    terms: dict[str, Type] = field(default_factory=dict)
    preds: dict[str, Type] = field(default_factory=dict)

    def with_term(self, name: str, ty: Type) -> "Signature":
        if name in self.terms:
            raise ValueError(f"term symbol {name!r} declared twice")
        if not is_simple(ty):
            raise ValueError(f"term symbol {name!r} must have a simple type, got {ty}")
        return Signature({**self.terms, name: ty}, self.preds)

    def with_pred(self, name: str, ty: Type) -> "Signature":
        if name in self.preds:
            raise ValueError(f"predicate {name!r} declared twice")
        if not is_prop(ty):
            raise ValueError(f"predicate {name!r} must have a proposition type, got {ty}")
        return Signature(self.terms, {**self.preds, name: ty})

    def extend(self, names: Iterable[tuple[str, Type]]) -> "Signature":
        """Add eigenvariables (fresh constants)."""
        sig = self
        for name, ty in names:
            sig = sig.with_term(name, ty)
        return sig

    def term_type(self, name: str) -> Type:
        try:
            return self.terms[name]
        except KeyError:
            raise UnknownConstant(f"unknown constant {name!r}") from None

    def pred_type(self, name: str) -> Type:
        try:
            return self.preds[name]
        except KeyError:
            raise UnknownPredicate(f"unknown predicate {name!r}") from None

    @property
    def first_order(self) -> bool:
        return all(order(ty) <= 1 for ty in self.terms.values())

    def fresh_name(self, base: str, avoid: Iterable[str] = ()) -> str:
        taken = set(self.terms) | set(self.preds) | set(avoid)
        if base not in taken:
            return base
        i = 1
        while f"{base}{i}" in taken:
            i += 1
        return f"{base}{i}"

    def nullary_symbols(self) -> list[str]:
        return sorted(n for n, ty in self.terms.items() if order(ty) == 0)


# ── Contexts ──────────────────────────────────────────────────────
# A context is a tuple of (name, type); de Bruijn index 0 is the last entry.

Context = tuple[tuple[str, Type], ...]

EMPTY: Context = ()


def ctx_extend(ctx: Context, name: str, ty: Type) -> Context:
    return ctx + ((name, ty),)


def ctx_type(ctx: Context, index: int) -> Type:
    if index < 0 or index >= len(ctx):
        raise UnboundVariable(f"unbound variable #{index}")
    return ctx[len(ctx) - 1 - index][1]


def ctx_name(ctx: Context, index: int) -> str:
    if index < 0 or index >= len(ctx):
        raise UnboundVariable(f"unbound variable #{index}")
    return ctx[len(ctx) - 1 - index][0]

"""Simple types ι, σ → τ and proposition types o, σ → ρ."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Iota:
    """The base type ι."""

    def __str__(self) -> str:
        return "i"


@dataclass(frozen=True)
class Omicron:
    """The base proposition type o."""

    def __str__(self) -> str:
        return "o"


@dataclass(frozen=True)
class Arrow:
    dom: "Type"
    cod: "Type"

    def __str__(self) -> str:
        left = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{left} -> {self.cod}"


Type = Union[Iota, Omicron, Arrow]

IOTA = Iota()
OMICRON = Omicron()


def arrow(*types: Type) -> Type:
    """Right-associated arrow: arrow(a, b, c) is a -> (b -> c)."""
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Arrow(t, result)
    return result


def is_simple(t: Type) -> bool:
    if isinstance(t, Iota):
        return True
    if isinstance(t, Arrow):
        return is_simple(t.dom) and is_simple(t.cod)
    return False


def is_prop(t: Type) -> bool:
    """True for o and σ → ρ with σ simple and ρ a proposition type."""
    if isinstance(t, Omicron):
        return True
    if isinstance(t, Arrow):
        return is_simple(t.dom) and is_prop(t.cod)
    return False


def order(t: Type) -> int:
    if isinstance(t, Arrow):
        return max(order(t.dom) + 1, order(t.cod))
    return 0


def arity(t: Type) -> int:
    """Number of ι arguments of an order ≤ 1 type."""
    if isinstance(t, (Iota, Omicron)):
        return 0
    if order(t) > 1:
        raise ValueError(f"arity undefined for higher-order type {t}")
    return arity(t.cod) + 1


def argument_types(t: Type) -> list[Type]:
    args = []
    while isinstance(t, Arrow):
        args.append(t.dom)
        t = t.cod
    return args


def result_type(t: Type) -> Type:
    while isinstance(t, Arrow):
        t = t.cod
    return t

"""Depth-truncated trees: the finite stand-in for the complete Herbrand base.

Atom arguments sit at depth 1. A node at depth k keeps its symbol when it
is a constant and becomes ⊥ otherwise, so ⊥ stands for every tree whose
root has arguments.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from ..kernel.signature import Signature
from ..kernel.types import IOTA, argument_types, is_simple, order
from .coterms import Coterm

BOTTOM_SYMBOL = "_|_"


@dataclass(frozen=True)
class Tree:
    symbol: str
    children: tuple["Tree", ...] = ()
    is_var: bool = False

    @property
    def is_bottom(self) -> bool:
        return self.symbol == BOTTOM_SYMBOL and not self.is_var

    def __str__(self) -> str:
        if not self.children:
            return self.symbol
        parts = [c.symbol if not c.children else f"({c})" for c in self.children]
        return " ".join([self.symbol] + parts)


BOTTOM = Tree(BOTTOM_SYMBOL)


@dataclass(frozen=True)
class TruncatedAtom:
    pred: str
    args: tuple[Tree, ...] = ()

    def __lt__(self, other: "TruncatedAtom") -> bool:
        return str(self) < str(other)

    def __str__(self) -> str:
        parts = [a.symbol if not a.children else f"({a})" for a in self.args]
        return " ".join([self.pred] + parts)


def observe(c: Coterm, k: int, depth: int = 1) -> Tree:
    """The depth-k truncation of ``c``, rooted at ``depth``."""
    obs = c.out()
    if not obs.children:
        return Tree(obs.head, (), obs.is_var)
    if depth >= k:
        return BOTTOM
    return Tree(obs.head, tuple(observe(x, k, depth + 1) for x in obs.children), obs.is_var)


def retruncate(t: Tree, k: int, depth: int = 1) -> Tree:
    """Cut an already truncated tree placed at ``depth`` back to depth k."""
    if not t.children:
        return t
    if depth >= k:
        return BOTTOM
    return Tree(t.symbol, tuple(retruncate(c, k, depth + 1) for c in t.children), t.is_var)


def is_ground(t: Tree) -> bool:
    return not t.is_var and all(is_ground(c) for c in t.children)


# ── Orders ────────────────────────────────────────────────────────

def refines(a: Tree, b: Tree) -> bool:
    """a ≤ b: b is a with some positions cut to ⊥."""
    if b.is_bottom:
        return True
    return (a.symbol == b.symbol and len(a.children) == len(b.children)
            and all(refines(x, y) for x, y in zip(a.children, b.children)))


def compatible(a: Tree, b: Tree) -> bool:
    """Some tree refines both; ⊥ matches anything."""
    if a.is_bottom or b.is_bottom:
        return True
    return (a.symbol == b.symbol and len(a.children) == len(b.children)
            and all(compatible(x, y) for x, y in zip(a.children, b.children)))


def meet(a: Tree, b: Tree) -> Tree | None:
    """The least common refinement of two compatible trees."""
    if a.is_bottom:
        return b
    if b.is_bottom:
        return a
    if a.symbol != b.symbol or len(a.children) != len(b.children):
        return None
    children = []
    for x, y in zip(a.children, b.children):
        m = meet(x, y)
        if m is None:
            return None
        children.append(m)
    return Tree(a.symbol, tuple(children), a.is_var)


def atom_refines(a: TruncatedAtom, b: TruncatedAtom) -> bool:
    return (a.pred == b.pred and len(a.args) == len(b.args)
            and all(refines(x, y) for x, y in zip(a.args, b.args)))


def atom_compatible(a: TruncatedAtom, b: TruncatedAtom) -> bool:
    return (a.pred == b.pred and len(a.args) == len(b.args)
            and all(compatible(x, y) for x, y in zip(a.args, b.args)))


# ── Universe and base ─────────────────────────────────────────────

def function_symbols(sig: Signature) -> list[tuple[str, int]]:
    """First-order constants of ``sig`` with their arities, sorted by name."""
    result = []
    for name, ty in sorted(sig.terms.items()):
        if is_simple(ty) and order(ty) <= 1 and all(a == IOTA for a in argument_types(ty)):
            result.append((name, len(argument_types(ty))))
    return result


def universe(sig: Signature, k: int, depth: int = 1) -> list[Tree]:
    """Every depth-k truncated tree rooted at ``depth``."""
    symbols = function_symbols(sig)
    level = [Tree(f) for f, n in symbols if n == 0]
    if any(n > 0 for _, n in symbols):
        level.append(BOTTOM)
    for _ in range(k - depth):
        below = level
        level = [Tree(f) for f, n in symbols if n == 0]
        for f, n in symbols:
            if n > 0:
                level.extend(Tree(f, args) for args in itertools.product(below, repeat=n))
    return level


def herbrand_base(sig: Signature, k: int) -> Iterator[TruncatedAtom]:
    """B_k: every truncated atom of every first-order predicate."""
    trees = universe(sig, k)
    for pred, ty in sorted(sig.preds.items()):
        arg_types = argument_types(ty)
        if any(t != IOTA for t in arg_types):
            continue
        for args in itertools.product(trees, repeat=len(arg_types)):
            yield TruncatedAtom(pred, args)


# ── Interpretations ───────────────────────────────────────────────

@dataclass(frozen=True)
class Interpretation:
    depth: int
    atoms: frozenset[TruncatedAtom] = frozenset()

    @classmethod
    def of(cls, depth: int, atoms: Iterable[TruncatedAtom]) -> "Interpretation":
        return cls(depth, frozenset(atoms))

    @cached_property
    def by_pred(self) -> dict[str, list[TruncatedAtom]]:
        index: dict[str, list[TruncatedAtom]] = {}
        for a in self.atoms:
            index.setdefault(a.pred, []).append(a)
        return index

    def supports(self, a: TruncatedAtom) -> bool:
        """Some member is compatible with ``a``."""
        return any(atom_compatible(a, b) for b in self.by_pred.get(a.pred, ()))

    def covers(self, a: TruncatedAtom) -> bool:
        """``a`` refines some member."""
        return any(atom_refines(a, b) for b in self.by_pred.get(a.pred, ()))

    def __contains__(self, a: object) -> bool:
        return a in self.atoms

    def __iter__(self) -> Iterator[TruncatedAtom]:
        return iter(sorted(self.atoms))

    def __len__(self) -> int:
        return len(self.atoms)

    def __le__(self, other: "Interpretation") -> bool:
        return self.atoms <= other.atoms

    def lines(self) -> list[str]:
        return sorted(str(a) for a in self.atoms)

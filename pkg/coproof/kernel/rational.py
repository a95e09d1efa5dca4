"""Rational term graphs: finite presentations of regular infinite trees.

A graph is read off a first-order guarded term by observing head normal
forms and tying a cycle whenever an observed thunk recurs. Graphs are
minimised by partition refinement and read back as fix-terms, so two
bisimilar trees always print the same way.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass
from typing import Callable, Mapping

from ..core import config
from ..core.errors import NotGuarded
from .reduction import head_normal_form
from .terms import Const, Fix, Meta, Term, Var, mk_app
from .types import IOTA

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Node:
    symbol: str
    children: tuple[int, ...] = ()
    is_var: bool = False


@dataclass(frozen=True)
class TermGraph:
    nodes: tuple[Node, ...]
    root: int = 0

    def __len__(self) -> int:
        return len(self.nodes)


def _leaf_name(head: Term) -> tuple[str, bool]:
    if isinstance(head, Const):
        return head.name, False
    if isinstance(head, Meta):
        return f"?{head.id}", True
    raise NotGuarded(f"open term with bound variable head {head!r}")


def to_graph(
    m: Term,
    variables: frozenset[str] = frozenset(),
    budget: int | None = None,
    fuel: int | None = None,
) -> TermGraph | None:
    """Explore the thunks of ``m``; None when more than ``budget`` distinct
    thunks show up (the tree is probably not regular).

    Constants named in ``variables`` become variable leaves.
    """
    budget = config.RATIONAL_BUDGET if budget is None else budget
    ids: dict[Term, int] = {m: 0}
    order: list[Term] = [m]
    nodes: list[Node] = []
    i = 0
    while i < len(order):
        hnf = head_normal_form(order[i], fuel)
        name, is_var = _leaf_name(hnf.head)
        is_var = is_var or name in variables
        children = []
        for arg in hnf.args:
            if arg not in ids:
                if len(order) >= budget:
                    logger.debug(f"gave up on a rational presentation after {budget} thunks")
                    return None
                ids[arg] = len(order)
                order.append(arg)
            children.append(ids[arg])
        nodes.append(Node(name, tuple(children), is_var))
        i += 1
    return TermGraph(tuple(nodes), 0)


def minimize(g: TermGraph) -> TermGraph:
    """Quotient by bisimilarity, renumbered breadth-first from the root."""
    block = {}
    labels: dict[tuple, int] = {}
    for i, n in enumerate(g.nodes):
        block[i] = labels.setdefault((n.symbol, n.is_var, len(n.children)), len(labels))
    while True:
        signatures: dict[tuple, int] = {}
        refined = {}
        for i, n in enumerate(g.nodes):
            key = (block[i],) + tuple(block[c] for c in n.children)
            refined[i] = signatures.setdefault(key, len(signatures))
        if len(signatures) == len(set(block.values())):
            break
        block = refined

    renumber: dict[int, int] = {}
    representative: dict[int, int] = {}
    queue = deque([g.root])
    renumber[block[g.root]] = 0
    representative[block[g.root]] = g.root
    while queue:
        i = queue.popleft()
        for c in g.nodes[i].children:
            b = block[c]
            if b not in renumber:
                renumber[b] = len(renumber)
                representative[b] = c
                queue.append(c)
    nodes = [None] * len(renumber)
    for b, new in renumber.items():
        n = g.nodes[representative[b]]
        nodes[new] = Node(n.symbol, tuple(renumber[block[c]] for c in n.children), n.is_var)
    return TermGraph(tuple(nodes), 0)


def to_term(
    g: TermGraph,
    leaf: Callable[[Node], Term] | None = None,
    hint: str = "x",
) -> Term:
    """Read a graph back as a term, one fix binder per cycle entry."""
    leaf = leaf or (lambda n: Const(n.symbol))
    # targets of DFS back edges: every cycle contains one, so build terminates
    back_targets: set[int] = set()
    on_stack: set[int] = set()
    done: set[int] = set()

    def scan(i: int) -> None:
        on_stack.add(i)
        for c in g.nodes[i].children:
            if c in on_stack:
                back_targets.add(c)
            elif c not in done:
                scan(c)
        on_stack.discard(i)
        done.add(i)

    scan(g.root)
    built: dict[tuple[int, tuple[int, ...]], Term] = {}

    def build(i: int, binders: tuple[int, ...]) -> Term:
        if i in binders:
            return Var(len(binders) - 1 - binders.index(i), hint)
        key = (i, binders)
        if key not in built:
            built[key] = _build_node(i, binders)
        return built[key]

    def _build_node(i: int, binders: tuple[int, ...]) -> Term:
        node = g.nodes[i]
        inner = binders + (i,) if i in back_targets else binders
        if node.is_var and not node.children:
            body = leaf(node)
        else:
            body = mk_app(Const(node.symbol), *(build(c, inner) for c in node.children))
        if i in back_targets:
            return Fix(IOTA, body, hint)
        return body

    return build(g.root, ())


def canonical(m: Term, leaf: Callable[[Node], Term] | None = None) -> Term:
    """Minimal fix-presentation of a rational first-order term.

    Terms that are not regular within the budget are returned unchanged.
    """
    g = to_graph(m)
    if g is None:
        return m
    return to_term(minimize(g), leaf)


def rational_equal(g1: TermGraph, g2: TermGraph) -> bool:
    """Bisimilarity of two graphs by exploring pairs of nodes."""
    seen = {(g1.root, g2.root)}
    queue = deque(seen)
    while queue:
        a, b = queue.popleft()
        na, nb = g1.nodes[a], g2.nodes[b]
        if (na.symbol, na.is_var, len(na.children)) != (nb.symbol, nb.is_var, len(nb.children)):
            return False
        for pair in zip(na.children, nb.children):
            if pair not in seen:
                seen.add(pair)
                queue.append(pair)
    return True

"""The consequence operator Φ_P on depth-k interpretations and its gfp.

Clause terms are observed to depth k with their variables left as
leaves. A truncated atom is in Φ_P(I) when it matches some clause head
and every body instance is compatible with a member of I; variables seen
only in the body, and positions below a cut, match anything.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from ..core import config
from ..core.errors import NotGround
from ..kernel.signature import Signature
from ..kernel.terms import Const, Term, constants, is_closed, metas
from ..logic.formulas import Atom, Formula, Forall, Imp, conjuncts, instantiate_formula
from ..logic.programs import Program
from .coterms import interpret_guarded, interpret_open
from .truncation import (
    BOTTOM, Interpretation, Tree, TruncatedAtom, herbrand_base, meet, observe, retruncate,
)

logger = logging.getLogger(__name__)


# ── Clause patterns ───────────────────────────────────────────────

@dataclass(frozen=True)
class ClausePattern:
    name: str
    head: TruncatedAtom
    body: tuple[TruncatedAtom, ...]

    def match(self, target: TruncatedAtom, k: int) -> Optional[dict[str, Tree]]:
        if target.pred != self.head.pred or len(target.args) != len(self.head.args):
            return None
        binding: dict[str, Tree] = {}
        for pat, tgt in zip(self.head.args, target.args):
            if not _match(pat, tgt, 1, k, binding):
                return None
        return binding

    def body_for(self, target: TruncatedAtom, k: int) -> Optional[tuple[TruncatedAtom, ...]]:
        """Body instances demanded by ``target``; None when the head does not match."""
        binding = self.match(target, k)
        if binding is None:
            return None
        return tuple(
            TruncatedAtom(b.pred, tuple(_instantiate(a, 1, k, binding) for a in b.args))
            for b in self.body)


def _match(pat: Tree, tgt: Tree, depth: int, k: int, binding: dict[str, Tree]) -> bool:
    if pat.is_var:
        old = binding.get(pat.symbol)
        new = tgt if old is None else meet(old, tgt)
        if new is None:
            return False
        binding[pat.symbol] = new
        return True
    if tgt.is_bottom and depth < k:
        return True
    if not pat.children or not tgt.children:
        return pat.symbol == tgt.symbol and not pat.children and not tgt.children
    return (pat.symbol == tgt.symbol and len(pat.children) == len(tgt.children)
            and all(_match(p, t, depth + 1, k, binding) for p, t in zip(pat.children, tgt.children)))


def _instantiate(pat: Tree, depth: int, k: int, binding: dict[str, Tree]) -> Tree:
    if pat.is_var:
        return retruncate(binding.get(pat.symbol, BOTTOM), k, depth)
    if not pat.children:
        return pat
    return Tree(pat.symbol, tuple(_instantiate(c, depth + 1, k, binding) for c in pat.children))


def clause_patterns(p: Program, k: int) -> list[ClausePattern]:
    """Observe every clause of ``p`` to depth k. Raises NotHg for non-Horn clauses."""
    patterns = []
    for hc in p.horn_clauses():
        phi: Formula = hc.formula
        names = []
        while isinstance(phi, Forall):
            name = f"?{hc.name}.{len(names)}"
            names.append(name)
            phi = instantiate_formula(phi.body, Const(name))
        body, head = (conjuncts(phi.left), phi.right) if isinstance(phi, Imp) else ([], phi)
        if not isinstance(head, Atom):
            continue
        variables = frozenset(names)

        def pattern(a: Atom) -> TruncatedAtom:
            return TruncatedAtom(a.pred, tuple(observe(interpret_open(t, variables), k)
                                               for t in a.args))

        patterns.append(ClausePattern(hc.name, pattern(head),
                                      tuple(pattern(b) for b in body if isinstance(b, Atom))))
    return patterns


# ── Φ_P and its greatest fixed point ──────────────────────────────

def supported(patterns: list[ClausePattern], i: Interpretation, a: TruncatedAtom, k: int) -> bool:
    for c in patterns:
        body = c.body_for(a, k)
        if body is not None and all(i.supports(b) for b in body):
            return True
    return False


def phi_step(p: Program, i: Interpretation, k: Optional[int] = None,
             patterns: Optional[list[ClausePattern]] = None) -> Interpretation:
    """Φ_P(I) over the full depth-k base."""
    k = k or i.depth
    patterns = patterns if patterns is not None else clause_patterns(p, k)
    return Interpretation.of(k, (a for a in herbrand_base(p.signature, k)
                                 if supported(patterns, i, a, k)))


def gfp_truncated(p: Program, k: Optional[int] = None) -> Interpretation:
    """Descend from B_k until Φ_P is stationary."""
    k = k or config.TRUNCATION_DEPTH
    patterns = clause_patterns(p, k)
    current = Interpretation.of(k, herbrand_base(p.signature, k))
    rounds = 0
    while True:
        rounds += 1
        nxt = phi_step(p, current, k, patterns)
        logger.debug(f"gfp round {rounds} at depth {k}: {len(current)} -> {len(nxt)} atoms")
        if nxt == current:
            return current
        current = nxt


# ── Membership ────────────────────────────────────────────────────

def truncate_atom(
    sig: Signature,
    a: Atom,
    k: int,
    variables: frozenset[str] = frozenset(),
) -> TruncatedAtom:
    """truncate(⟦A⟧, k). Raises NotGround for open atoms, NotGuarded for
    arguments without a first-order guarded reading."""
    for t in a.args:
        _require_ground(sig, t, variables)
    return TruncatedAtom(a.pred, tuple(observe(interpret_guarded(sig, t, variables), k)
                                       for t in a.args))


def _require_ground(sig: Signature, t: Term, variables: frozenset[str]) -> None:
    if metas(t) or not is_closed(t):
        raise NotGround(f"{t} is not ground")
    unknown = {c for c in constants(t) if c not in sig.terms and c not in variables}
    if unknown:
        raise NotGround(f"{t} mentions undeclared names {sorted(unknown)}")


def model_member(p: Program, a: Atom, k: Optional[int] = None) -> bool:
    """Whether truncate(⟦A⟧, k) survives in the gfp of Φ_P.

    Only atoms reachable from A through clause bodies are considered;
    True at every k is necessary for A ∈ M_P.
    """
    k = k or config.TRUNCATION_DEPTH
    target = truncate_atom(p.signature, a, k)
    patterns = clause_patterns(p, k)
    graph: dict[TruncatedAtom, list[tuple[TruncatedAtom, ...]]] = {}
    pending = [target]
    while pending:
        x = pending.pop()
        if x in graph:
            continue
        alternatives = [body for c in patterns
                        if (body := c.body_for(x, k)) is not None]
        graph[x] = alternatives
        pending.extend(b for body in alternatives for b in body if b not in graph)

    alive = set(graph)
    changed = True
    while changed:
        changed = False
        for x in sorted(alive):
            if not any(all(b in alive for b in body) for body in graph[x]):
                alive.discard(x)
                changed = True
    logger.debug(f"membership of {target} explored {len(graph)} atoms, {len(alive)} alive")
    return target in alive


def list_model(p: Program, k: Optional[int] = None) -> list[str]:
    """The truncated gfp, one atom per line, sorted."""
    return gfp_truncated(p, k).lines()


def conservative_extension(p: Program, name: str, lemma: Formula, k: Optional[int] = None) -> bool:
    """gfp_truncated(P) = gfp_truncated(P ∪ {lemma}) at depth k."""
    extended = p.with_clause(p.fresh_clause_name(name), lemma)
    return gfp_truncated(p, k).atoms == gfp_truncated(extended, k).atoms

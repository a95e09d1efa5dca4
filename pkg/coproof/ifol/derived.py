"""Derived rules of iFOL▷ and their expansion into primitive rules.

``expand_derived`` rewrites one derived node into a tree whose root has
the same conclusion; derived nodes may still occur inside the result (the
expansion of ▷∀R weakens its premise, for instance). ``expand_all``
repeats until only primitive rules remain.
"""

from __future__ import annotations

import logging
from dataclasses import replace

from ..core.errors import NotDerived
from ..kernel.signature import Signature
from ..kernel.terms import Const
from ..logic.formulas import And, Forall, Imp, Later
from .proofs import (
    Fresh, IFolProof, IRule, Pick, all_e, all_i, and_e, and_i, imp_e, imp_i,
    iter_inodes, later_all_r, later_and_r, mon, nxt, proj, weak,
)

logger = logging.getLogger(__name__)


def expand_derived(node: IFolProof, sig: Signature) -> IFolProof:
    """One expansion step. Raises NotDerived on a malformed or underivable node."""
    rule = node.rule
    if not rule.derived:
        return node
    if len(node.children) != 1:
        raise NotDerived(f"{rule.value} takes exactly one premise")
    child = node.children[0]
    s = node.sequent

    if rule is IRule.ALL_LATER_INTRO:
        raise NotDerived("∀x.▷φ ⊢ ▷∀x.φ is not derivable in iFOL▷")

    if rule is IRule.WEAK:
        if not isinstance(node.payload, Fresh):
            raise NotDerived("Weak needs the name it introduces")
        name = node.payload.name
        if not s.context or s.context[:-1] != child.sequent.context or s.context[-1][0] != name:
            raise NotDerived(f"Weak must extend the premise context by {name}")
        if name in sig.extend(child.sequent.context).terms or name in sig.preds:
            raise NotDerived(f"{name} is not fresh")
        if s.assumptions != child.sequent.assumptions or s.goal != child.goal:
            raise NotDerived("Weak keeps the premise's assumptions and goal")
        return weaken(child, len(child.sequent.context), name, s.context[-1][1])

    if rule in (IRule.MON_L, IRule.LATER_AND_L, IRule.LATER_ALL_L):
        return _expand_left(node, child)

    if rule is IRule.LATER_AND_R:
        inner = _later_of(child.goal, And, rule)
        n = len(s.assumptions)
        extended = s.assumptions + (inner,)
        parts = []
        for side in (1, 2):
            pick = and_e(proj(s.context, extended, n), side)
            parts.append(imp_e(mon(nxt(imp_i(pick))), child))
        return and_i(*parts)

    if rule is IRule.LATER_ALL_R:
        inner = _later_of(child.goal, Forall, rule)
        avoid = {n for _, sub in iter_inodes(child) for n, _ in sub.sequent.context}
        y = sig.extend(s.context).fresh_name(inner.hint, avoid)
        ctx = s.context + ((y, inner.ty),)
        n = len(s.assumptions)
        body = all_e(proj(ctx, s.assumptions + (inner,), n), Const(y))
        step = imp_e(mon(nxt(imp_i(body))), weak(child, y, inner.ty))
        return all_i(step, Forall(inner.ty, Later(inner.body), inner.hint))

    if rule is IRule.AND_LATER_INTRO:
        conj = child.goal
        if not (isinstance(conj, And) and isinstance(conj.left, Later)
                and isinstance(conj.right, Later)):
            raise NotDerived(f"∧▷-intro expects ▷φ ∧ ▷ψ, got {conj}")
        a, b = conj.left.body, conj.right.body
        n = len(s.assumptions)
        extended = s.assumptions + (a, b)
        pair = and_i(proj(s.context, extended, n), proj(s.context, extended, n + 1))
        curried = nxt(imp_i(imp_i(pair)))
        half = imp_e(mon(curried), and_e(child, 1))
        return imp_e(mon(half), and_e(child, 2))

    raise NotDerived(f"unknown derived rule {rule.value}")


def _later_of(phi, shape, rule):
    if not (isinstance(phi, Later) and isinstance(phi.body, shape)):
        raise NotDerived(f"{rule.value} expects ▷ over {shape.__name__}, got {phi}")
    return phi.body


def _expand_left(node: IFolProof, child: IFolProof) -> IFolProof:
    """A left rule adds χ' for the assumption χ; cut χ' in through →I/→E."""
    s = node.sequent
    if not isinstance(node.payload, Pick) or not 0 <= node.payload.index < len(s.assumptions):
        raise NotDerived(f"{node.rule.value} needs the position of its assumption")
    source = proj(s.context, s.assumptions, node.payload.index)
    chi = source.goal
    if node.rule is IRule.MON_L:
        _later_of(chi, Imp, node.rule)
        derived = mon(source)
    elif node.rule is IRule.LATER_AND_L:
        _later_of(chi, And, node.rule)
        derived = later_and_r(source)
    else:
        _later_of(chi, Forall, node.rule)
        derived = later_all_r(source)
    if len(child.sequent.assumptions) != len(s.assumptions) + 1 \
            or child.sequent.assumptions[:-1] != s.assumptions:
        raise NotDerived(f"{node.rule.value} must keep Δ and append one assumption")
    return imp_e(imp_i(child), derived)


def weaken(proof: IFolProof, position: int, name: str, ty) -> IFolProof:
    """Insert ``name : ty`` into every context of ``proof`` at ``position``."""
    for _, sub in iter_inodes(proof):
        if isinstance(sub.payload, Fresh) and sub.payload.name == name:
            raise NotDerived(f"{name} is bound again inside the weakened proof")

    def go(n: IFolProof) -> IFolProof:
        ctx = n.sequent.context
        sequent = replace(n.sequent, context=ctx[:position] + ((name, ty),) + ctx[position:])
        return replace(n, sequent=sequent, children=tuple(go(c) for c in n.children))

    return go(proof)


def expand_all(proof: IFolProof, sig: Signature) -> IFolProof:
    """Rewrite every derived node until the tree is primitive."""
    node = proof
    while node.rule.derived:
        node = expand_derived(node, sig)
    children = tuple(expand_all(c, sig) for c in node.children)
    return replace(node, children=children)

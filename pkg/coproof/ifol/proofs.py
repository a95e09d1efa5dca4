"""Proof trees of iFOL▷, the intuitionistic logic with the later modality."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Union

from ..kernel.terms import Term
from ..kernel.types import Type
from ..logic.formulas import TOP, And, Forall, Formula, Imp, Later, Or, instantiate_formula


@dataclass(frozen=True)
class IFolSequent:
    """Γ; Δ ⊢ φ. Context variables are named constants."""

    context: tuple[tuple[str, Type], ...]
    assumptions: tuple[Formula, ...]
    goal: Formula

    def with_goal(self, goal: Formula) -> "IFolSequent":
        return IFolSequent(self.context, self.assumptions, goal)

    def assume(self, *extra: Formula) -> "IFolSequent":
        return IFolSequent(self.context, self.assumptions + extra, self.goal)


class IRule(str, enum.Enum):
    PROJ = "Proj"
    CONV = "Conv"
    TOP_I = "TopI"
    AND_I = "AndI"
    AND_E1 = "AndE1"
    AND_E2 = "AndE2"
    OR_I1 = "OrI1"
    OR_I2 = "OrI2"
    OR_E = "OrE"
    IMP_I = "ImpI"
    IMP_E = "ImpE"
    ALL_I = "AllI"
    ALL_E = "AllE"
    EX_I = "ExI"
    EX_E = "ExE"
    NEXT = "Next"
    MON = "Mon"
    FP = "FP"
    # derived
    WEAK = "Weak"
    MON_L = "MonL"
    LATER_AND_R = "LaterAndR"
    LATER_AND_L = "LaterAndL"
    LATER_ALL_R = "LaterAllR"
    LATER_ALL_L = "LaterAllL"
    AND_LATER_INTRO = "AndLaterIntro"
    ALL_LATER_INTRO = "AllLaterIntro"

    @property
    def derived(self) -> bool:
        return self in _DERIVED


_DERIVED = frozenset({
    IRule.WEAK, IRule.MON_L, IRule.LATER_AND_R, IRule.LATER_AND_L,
    IRule.LATER_ALL_R, IRule.LATER_ALL_L, IRule.AND_LATER_INTRO, IRule.ALL_LATER_INTRO,
})


# ── Payloads ──────────────────────────────────────────────────────

@dataclass(frozen=True)
class Pick:
    """An assumption, by position in Δ."""

    index: int


@dataclass(frozen=True)
class Instance:
    """Witness term of ∀E / ∃I."""

    term: Term


@dataclass(frozen=True)
class Fresh:
    """Fresh context variable of ∀I / Weak; ∃E also names an assumption."""

    name: str
    index: Optional[int] = None


IPayload = Union[Pick, Instance, Fresh, None]


@dataclass(frozen=True)
class IFolProof:
    rule: IRule
    sequent: IFolSequent
    payload: IPayload = None
    children: tuple["IFolProof", ...] = ()

    @property
    def goal(self) -> Formula:
        return self.sequent.goal


def iter_inodes(proof: IFolProof, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], IFolProof]]:
    stack = [(path, proof)]
    while stack:
        p, node = stack.pop()
        yield p, node
        for i in reversed(range(len(node.children))):
            stack.append((p + (i,), node.children[i]))


def irule_counts(proof: IFolProof) -> Counter:
    return Counter(node.rule for _, node in iter_inodes(proof))


def main_branch(proof: IFolProof) -> list[IRule]:
    """Rules from the root along first children."""
    rules = []
    node: Optional[IFolProof] = proof
    while node is not None:
        rules.append(node.rule)
        node = node.children[0] if node.children else None
    return rules


# ── Construction ──────────────────────────────────────────────────
# Each builder computes its conclusion from its premises; nothing is
# checked here.

def proj(context, assumptions, index: int) -> IFolProof:
    return IFolProof(IRule.PROJ, IFolSequent(tuple(context), tuple(assumptions), assumptions[index]),
                     Pick(index))


def conv(goal: Formula, child: IFolProof) -> IFolProof:
    if child.goal == goal:
        return child
    return IFolProof(IRule.CONV, child.sequent.with_goal(goal), None, (child,))


def top_i(context, assumptions) -> IFolProof:
    return IFolProof(IRule.TOP_I, IFolSequent(tuple(context), tuple(assumptions), TOP))


def and_i(left: IFolProof, right: IFolProof) -> IFolProof:
    return IFolProof(IRule.AND_I, left.sequent.with_goal(And(left.goal, right.goal)), None, (left, right))


def and_e(child: IFolProof, side: int) -> IFolProof:
    conj = child.goal
    part = conj.left if side == 1 else conj.right
    rule = IRule.AND_E1 if side == 1 else IRule.AND_E2
    return IFolProof(rule, child.sequent.with_goal(part), None, (child,))


def or_i(child: IFolProof, other: Formula, side: int) -> IFolProof:
    goal = Or(child.goal, other) if side == 1 else Or(other, child.goal)
    rule = IRule.OR_I1 if side == 1 else IRule.OR_I2
    return IFolProof(rule, child.sequent.with_goal(goal), None, (child,))


def imp_i(child: IFolProof) -> IFolProof:
    """Discharge the last assumption of ``child``."""
    s = child.sequent
    goal = Imp(s.assumptions[-1], s.goal)
    return IFolProof(IRule.IMP_I, IFolSequent(s.context, s.assumptions[:-1], goal), None, (child,))


def imp_e(major: IFolProof, minor: IFolProof) -> IFolProof:
    return IFolProof(IRule.IMP_E, major.sequent.with_goal(major.goal.right), None, (major, minor))


def all_i(child: IFolProof, goal: Formula) -> IFolProof:
    """``child`` proves the body of ``goal`` at the last context variable."""
    s = child.sequent
    name = s.context[-1][0]
    return IFolProof(IRule.ALL_I, IFolSequent(s.context[:-1], s.assumptions, goal), Fresh(name), (child,))


def all_e(child: IFolProof, witness: Term) -> IFolProof:
    goal = instantiate_formula(child.goal.body, witness)
    return IFolProof(IRule.ALL_E, child.sequent.with_goal(goal), Instance(witness), (child,))


def ex_i(child: IFolProof, goal: Formula, witness: Term) -> IFolProof:
    return IFolProof(IRule.EX_I, child.sequent.with_goal(goal), Instance(witness), (child,))


def nxt(child: IFolProof) -> IFolProof:
    return IFolProof(IRule.NEXT, child.sequent.with_goal(Later(child.goal)), None, (child,))


def mon(child: IFolProof) -> IFolProof:
    inner = child.goal.body
    goal = Imp(Later(inner.left), Later(inner.right))
    return IFolProof(IRule.MON, child.sequent.with_goal(goal), None, (child,))


def fp(child: IFolProof) -> IFolProof:
    s = child.sequent
    return IFolProof(IRule.FP, IFolSequent(s.context, s.assumptions[:-1], s.goal), None, (child,))


# derived

def weak(child: IFolProof, name: str, ty: Type) -> IFolProof:
    s = child.sequent
    return IFolProof(IRule.WEAK, IFolSequent(s.context + ((name, ty),), s.assumptions, s.goal),
                     Fresh(name), (child,))


def _left(rule: IRule, child: IFolProof, index: int) -> IFolProof:
    s = child.sequent
    return IFolProof(rule, IFolSequent(s.context, s.assumptions[:-1], s.goal), Pick(index), (child,))


def mon_l(child: IFolProof, index: int) -> IFolProof:
    """``child`` has ▷φ → ▷ψ appended for the assumption ▷(φ → ψ) at ``index``."""
    return _left(IRule.MON_L, child, index)


def later_and_l(child: IFolProof, index: int) -> IFolProof:
    return _left(IRule.LATER_AND_L, child, index)


def later_all_l(child: IFolProof, index: int) -> IFolProof:
    return _left(IRule.LATER_ALL_L, child, index)


def later_and_r(child: IFolProof) -> IFolProof:
    inner = child.goal.body
    goal = And(Later(inner.left), Later(inner.right))
    return IFolProof(IRule.LATER_AND_R, child.sequent.with_goal(goal), None, (child,))


def later_all_r(child: IFolProof) -> IFolProof:
    inner = child.goal.body
    goal = Forall(inner.ty, Later(inner.body), inner.hint)
    return IFolProof(IRule.LATER_ALL_R, child.sequent.with_goal(goal), None, (child,))


def and_later_intro(child: IFolProof) -> IFolProof:
    conj = child.goal
    goal = Later(And(conj.left.body, conj.right.body))
    return IFolProof(IRule.AND_LATER_INTRO, child.sequent.with_goal(goal), None, (child,))


def push_later(phi: Formula) -> Optional[Formula]:
    """The result of pushing an outer ▷ one connective inwards, if defined."""
    if not isinstance(phi, Later):
        return None
    inner = phi.body
    if isinstance(inner, Forall):
        return Forall(inner.ty, Later(inner.body), inner.hint)
    if isinstance(inner, And):
        return And(Later(inner.left), Later(inner.right))
    if isinstance(inner, Imp):
        return Imp(Later(inner.left), Later(inner.right))
    return None

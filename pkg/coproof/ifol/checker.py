"""Proof checker for iFOL▷.

Primitive rules are checked locally against their premises. A derived
rule is checked by expanding it and checking the expansion, treating the
original premises as already verified.
"""

from __future__ import annotations

import logging
from typing import Optional

from ..core.errors import CoproofError, NotDerived, RuleError
from ..kernel.guarded import is_guarded
from ..kernel.reduction import Conv, convertible
from ..kernel.signature import Signature
from ..kernel.terms import Const, is_closed, metas
from ..kernel.typecheck import infer_type
from ..logic.formulas import (
    And, Atom, Exists, Forall, Formula, Imp, Later, Or, Top, instantiate_formula, well_formed,
)
from .derived import expand_derived
from .proofs import Fresh, IFolProof, IFolSequent, IRule, Instance, Pick

logger = logging.getLogger(__name__)


def formulas_convertible(phi: Formula, psi: Formula, fuel: Optional[int] = None) -> bool:
    """φ ≃ ψ: equal shape, atom arguments pairwise convertible."""
    if isinstance(phi, Atom) and isinstance(psi, Atom):
        return (phi.pred == psi.pred and len(phi.args) == len(psi.args)
                and all(convertible(a, b, fuel) is Conv.YES for a, b in zip(phi.args, psi.args)))
    if isinstance(phi, Top) and isinstance(psi, Top):
        return True
    if type(phi) is not type(psi):
        return False
    if isinstance(phi, (And, Or, Imp)):
        return (formulas_convertible(phi.left, psi.left, fuel)
                and formulas_convertible(phi.right, psi.right, fuel))
    if isinstance(phi, (Forall, Exists)):
        return phi.ty == psi.ty and formulas_convertible(phi.body, psi.body, fuel)
    if isinstance(phi, Later):
        return formulas_convertible(phi.body, psi.body, fuel)
    return False


def check_ifol_proof(sig: Signature, proof: IFolProof, fuel: Optional[int] = None) -> None:
    """Return normally iff ``proof`` is a valid iFOL▷ derivation.

    Raises RuleError naming the first rejected node.
    """
    checker = _IFolChecker(sig, fuel)
    root = proof.sequent
    try:
        ctx_sig = checker.sig_of(root)
        for phi in root.assumptions:
            well_formed(ctx_sig, (), phi)
    except CoproofError as e:
        raise RuleError((), f"ill-formed root sequent: {e}") from None
    checker.node(proof, ())
    logger.debug(f"checked iFOL▷ proof of {root.goal}")


def is_valid_ifol_proof(sig: Signature, proof: IFolProof) -> bool:
    try:
        check_ifol_proof(sig, proof)
    except RuleError:
        return False
    return True


class _IFolChecker:
    def __init__(self, sig: Signature, fuel: Optional[int]):
        self.sig = sig
        self.fuel = fuel

    def sig_of(self, s: IFolSequent) -> Signature:
        return self.sig.extend(s.context)

    def node(self, n: IFolProof, path: tuple[int, ...], report=None) -> None:
        where = path if report is None else report
        for i, child in enumerate(n.children):
            self.node(child, path + (i,), report)
        if n.rule.derived:
            self.expansion(n, where)
        else:
            self.local(n, where)

    def expansion(self, n: IFolProof, where) -> None:
        try:
            expanded = expand_derived(n, self.sig)
        except NotDerived as e:
            raise RuleError(where, f"{n.rule.value}: {e}") from None
        if expanded.sequent != n.sequent:
            raise RuleError(where, f"{n.rule.value}: expansion concludes {expanded.goal}")
        if n.rule is IRule.WEAK:
            return
        self.walk(expanded, where, {id(c) for c in n.children})

    def walk(self, n: IFolProof, where, skip: set[int]) -> None:
        if id(n) in skip:
            return
        for child in n.children:
            self.walk(child, where, skip)
        if n.rule.derived:
            self.expansion(n, where)
        else:
            self.local(n, where)

    # ── primitive rules ──

    def local(self, n: IFolProof, path) -> None:
        s = n.sequent
        rule = n.rule

        def fail(reason: str) -> RuleError:
            return RuleError(path, f"{rule.value}: {reason}")

        try:
            well_formed(self.sig_of(s), (), s.goal)
        except CoproofError as e:
            raise fail(f"ill-formed goal: {e}") from None

        premises = self.premises(n, fail)
        if len(premises) != len(n.children):
            raise fail(f"needs {len(premises)} premises, got {len(n.children)}")
        for child, want in zip(n.children, premises):
            if child.sequent != want:
                raise fail(f"premise concludes {child.goal}, expected {want.goal}")

    def premises(self, n: IFolProof, fail) -> list[IFolSequent]:
        s = n.sequent
        phi = s.goal
        rule = n.rule
        kids = n.children

        def shape(f, cls, what):
            if not isinstance(f, cls):
                raise fail(f"expects {what}, got {f}")
            return f

        def child_goal(i: int) -> Formula:
            if i >= len(kids):
                raise fail(f"missing premise {i + 1}")
            return kids[i].goal

        if rule is IRule.PROJ:
            i = self.pick(n, s, fail)
            if s.assumptions[i] != phi:
                raise fail(f"assumption #{i} is {s.assumptions[i]}, not {phi}")
            return []

        if rule is IRule.CONV:
            other = child_goal(0)
            if not formulas_convertible(phi, other, self.fuel):
                raise fail(f"{phi} and {other} are not convertible")
            return [s.with_goal(other)]

        if rule is IRule.TOP_I:
            shape(phi, Top, "⊤")
            return []

        if rule is IRule.AND_I:
            f = shape(phi, And, "a conjunction")
            return [s.with_goal(f.left), s.with_goal(f.right)]

        if rule in (IRule.AND_E1, IRule.AND_E2):
            f = shape(child_goal(0), And, "a conjunction premise")
            part = f.left if rule is IRule.AND_E1 else f.right
            if part != phi:
                raise fail(f"{f} has no conjunct {phi}")
            return [s.with_goal(f)]

        if rule in (IRule.OR_I1, IRule.OR_I2):
            f = shape(phi, Or, "a disjunction")
            return [s.with_goal(f.left if rule is IRule.OR_I1 else f.right)]

        if rule is IRule.OR_E:
            i = self.pick(n, s, fail)
            f = shape(s.assumptions[i], Or, "a disjunctive assumption")
            return [s.assume(f.left), s.assume(f.right)]

        if rule is IRule.IMP_I:
            f = shape(phi, Imp, "an implication")
            return [IFolSequent(s.context, s.assumptions + (f.left,), f.right)]

        if rule is IRule.IMP_E:
            antecedent = child_goal(1)
            return [s.with_goal(Imp(antecedent, phi)), s.with_goal(antecedent)]

        if rule is IRule.ALL_I:
            f = shape(phi, Forall, "a universal formula")
            c = self.fresh(n, s, fail)
            return [IFolSequent(s.context + ((c, f.ty),), s.assumptions,
                                instantiate_formula(f.body, Const(c)))]

        if rule is IRule.ALL_E:
            f = shape(child_goal(0), Forall, "a universal premise")
            w = self.witness(n, s, f.ty, fail)
            if instantiate_formula(f.body, w) != phi:
                raise fail(f"{f} at {w} is not {phi}")
            return [s.with_goal(f)]

        if rule is IRule.EX_I:
            f = shape(phi, Exists, "an existential formula")
            w = self.witness(n, s, f.ty, fail)
            return [s.with_goal(instantiate_formula(f.body, w))]

        if rule is IRule.EX_E:
            c = self.fresh(n, s, fail)
            i = n.payload.index
            if i is None or not 0 <= i < len(s.assumptions):
                raise fail(f"no assumption #{i}")
            f = shape(s.assumptions[i], Exists, "an existential assumption")
            return [IFolSequent(s.context + ((c, f.ty),),
                                s.assumptions + (instantiate_formula(f.body, Const(c)),), phi)]

        if rule is IRule.NEXT:
            f = shape(phi, Later, "a ▷-formula")
            return [s.with_goal(f.body)]

        if rule is IRule.MON:
            f = shape(phi, Imp, "▷φ → ▷ψ")
            left = shape(f.left, Later, "▷φ → ▷ψ")
            right = shape(f.right, Later, "▷φ → ▷ψ")
            return [s.with_goal(Later(Imp(left.body, right.body)))]

        if rule is IRule.FP:
            return [s.assume(Later(phi))]

        raise fail("unknown rule")

    # ── side conditions ──

    def pick(self, n: IFolProof, s: IFolSequent, fail) -> int:
        if not isinstance(n.payload, Pick) or not 0 <= n.payload.index < len(s.assumptions):
            raise fail("missing or out-of-range assumption")
        return n.payload.index

    def fresh(self, n: IFolProof, s: IFolSequent, fail) -> str:
        if not isinstance(n.payload, Fresh):
            raise fail("missing fresh variable")
        c = n.payload.name
        sig = self.sig_of(s)
        if c in sig.terms or c in sig.preds:
            raise fail(f"{c} is not fresh")
        return c

    def witness(self, n: IFolProof, s: IFolSequent, ty, fail):
        if not isinstance(n.payload, Instance):
            raise fail("missing witness")
        w = n.payload.term
        sig = self.sig_of(s)
        if metas(w) or not is_closed(w):
            raise fail(f"witness {w} is not closed")
        try:
            actual = infer_type(sig, (), w)
        except CoproofError as e:
            raise fail(f"witness {w} is ill-typed: {e}") from None
        if actual != ty:
            raise fail(f"witness {w} has type {actual}, expected {ty}")
        if not is_guarded(sig, (), w):
            raise fail(f"witness {w} is not guarded")
        return w

"""Independent checker for coinductive uniform proofs.

Every node is checked against the conclusion its parent expects, so the
first rejected node is reported with its path from the root.
"""

from __future__ import annotations

import logging
from typing import Optional

from ..core.errors import CoproofError, IllFormedGoal, RuleError
from ..kernel.guarded import is_guarded
from ..kernel.reduction import Conv, convertible
from ..kernel.signature import Signature
from ..kernel.terms import Const, Term, is_closed, metas
from ..kernel.typecheck import infer_type
from ..logic.classify import LogicId, is_coinduction_goal, is_d_formula, is_g_formula
from ..logic.formulas import (
    And, Atom, Exists, Forall, Formula, Imp, Or, Top, instantiate_formula, well_formed,
)
from ..logic.programs import Program
from .proofs import (
    CupProof, CupSequent, Eigen, Origin, Rule, Selection, SequentKind, Side, Witness,
)

logger = logging.getLogger(__name__)

# The weakest bound on the cube: used when no logic is named.
_TOP_LOGIC = LogicId.COHOHH_FIX


def root_sequent(goal: Formula, coinductive: bool = True) -> CupSequent:
    kind = SequentKind.CO if coinductive else SequentKind.GOAL
    return CupSequent(kind, goal)


def check_proof(
    sig: Signature,
    p: Program,
    proof: CupProof,
    logic: Optional[LogicId] = None,
    fuel: Optional[int] = None,
) -> None:
    """Return normally iff ``proof`` is a valid CUP derivation from ``p``.

    Raises RuleError naming the first violating node.
    """
    checker = _Checker(sig, p, logic, fuel)
    root = proof.sequent
    if root.kind not in (SequentKind.CO, SequentKind.GOAL) or root.hyps \
            or root.eigens or root.program_extra:
        raise RuleError((), "the root must conclude a sequent with empty Δ")
    checker.check_goal(root)
    checker.node(proof, root, ())
    logger.debug(f"checked proof of {root.formula}")


def is_valid_proof(sig: Signature, p: Program, proof: CupProof, logic=None) -> bool:
    try:
        check_proof(sig, p, proof, logic)
    except RuleError:
        return False
    return True


class _Checker:
    def __init__(self, sig, p, logic, fuel):
        self.sig = sig
        self.p = p
        self.logic = logic or _TOP_LOGIC
        self.fuel = fuel
        for c in p.clauses:
            if not is_d_formula(self.logic, c.formula, sig):
                raise RuleError((), f"clause {c.name} is not a D-formula of {self.logic}")

    def check_goal(self, root: CupSequent) -> None:
        try:
            well_formed(self.sig, (), root.formula)
        except CoproofError as e:
            raise RuleError((), f"ill-formed goal: {e}") from None
        if root.kind is SequentKind.CO:
            if not is_coinduction_goal(self.logic, root.formula, self.sig):
                raise IllFormedGoal(f"{root.formula} is not a coinduction goal of {self.logic}")
        elif not is_g_formula(self.logic, root.formula, self.sig):
            raise IllFormedGoal(f"{root.formula} is not a goal of {self.logic}")

    # ── per node ──

    def node(self, n: CupProof, expected: CupSequent, path: tuple[int, ...]) -> None:
        if n.sequent != expected:
            raise RuleError(path, f"{n.rule.value} concludes {_show(n.sequent)}, "
                                  f"expected {_show(expected)}")
        premises = self.premises(n, path)
        if len(premises) != len(n.children):
            raise RuleError(path, f"{n.rule.value} needs {len(premises)} premises, "
                                  f"got {len(n.children)}")
        for i, (child, want) in enumerate(zip(n.children, premises)):
            self.node(child, want, path + (i,))

    def premises(self, n: CupProof, path) -> list[CupSequent]:
        s = n.sequent
        phi = s.formula
        rule = n.rule
        def fail(reason: str) -> RuleError:
            return RuleError(path, f"{rule.value}: {reason}")

        def expect(kind: SequentKind, shape, what: str):
            if s.kind is not kind:
                raise fail(f"applies to {kind.value} sequents, not {s.kind.value}")
            target = s.focus if kind is SequentKind.FOCUS else phi
            if not isinstance(target, shape):
                raise fail(f"expects {what}, got {target}")
            return target

        if rule is Rule.COFIX:
            if s.kind is not SequentKind.CO:
                raise fail("only concludes ⊢co sequents")
            return [s.guarded(phi, hyps=(phi,))]

        if rule is Rule.ALL_RG:
            f = expect(SequentKind.GUARDED, Forall, "a universal formula")
            c = self.fresh(n, s, f.ty, fail)
            return [s.guarded(instantiate_formula(f.body, Const(c)), eigens=s.eigens + ((c, f.ty),))]

        if rule is Rule.AND_RG:
            f = expect(SequentKind.GUARDED, And, "a conjunction")
            return [s.guarded(f.left), s.guarded(f.right)]

        if rule is Rule.IMP_RG:
            f = expect(SequentKind.GUARDED, Imp, "an implication")
            if not is_d_formula(self.logic, f.left, self.sig_of(s)):
                raise fail(f"{f.left} is not a D-formula of {self.logic}")
            return [s.guarded(f.right, hyps=s.hyps + (f.left,))]

        if rule is Rule.DECG:
            expect(SequentKind.GUARDED, (Atom, Top), "an atom")
            sel = self.selection(n, fail)
            if sel.origin is not Origin.PROGRAM:
                raise fail("the guarded goal may only be resolved against a program clause")
            return [s.focused(self.clause(s, sel, fail))]

        if rule is Rule.DEC:
            expect(SequentKind.GOAL, Atom, "an atom")
            sel = self.selection(n, fail)
            return [s.focused(self.clause(s, sel, fail))]

        if rule is Rule.INIT:
            if s.kind is not SequentKind.FOCUS:
                raise fail("applies to focused sequents")
            self.init(s.focus, phi, fail)
            return []

        if rule is Rule.TOP_R:
            expect(SequentKind.GOAL, Top, "⊤")
            return []

        if rule is Rule.IMP_L:
            f = expect(SequentKind.FOCUS, Imp, "an implication in focus")
            return [s.focused(f.right), s.goal(f.left)]

        if rule is Rule.IMP_R:
            f = expect(SequentKind.GOAL, Imp, "an implication")
            return [s.goal(f.right, program_extra=s.program_extra + (f.left,))]

        if rule is Rule.AND_L:
            f = expect(SequentKind.FOCUS, And, "a conjunction in focus")
            side = self.side(n, fail)
            return [s.focused(f.left if side == 1 else f.right)]

        if rule is Rule.AND_R:
            f = expect(SequentKind.GOAL, And, "a conjunction")
            return [s.goal(f.left), s.goal(f.right)]

        if rule is Rule.ALL_L:
            f = expect(SequentKind.FOCUS, Forall, "a universal clause in focus")
            w = self.witness(n, s, f.ty, fail)
            return [s.focused(instantiate_formula(f.body, w))]

        if rule is Rule.ALL_R:
            f = expect(SequentKind.GOAL, Forall, "a universal formula")
            c = self.fresh(n, s, f.ty, fail)
            return [s.goal(instantiate_formula(f.body, Const(c)), eigens=s.eigens + ((c, f.ty),))]

        if rule is Rule.EX_R:
            f = expect(SequentKind.GOAL, Exists, "an existential formula")
            w = self.witness(n, s, f.ty, fail)
            return [s.goal(instantiate_formula(f.body, w))]

        if rule is Rule.OR_R:
            f = expect(SequentKind.GOAL, Or, "a disjunction")
            side = self.side(n, fail)
            return [s.goal(f.left if side == 1 else f.right)]

        raise fail("unknown rule")

    # ── side conditions ──

    def sig_of(self, s: CupSequent) -> Signature:
        return self.sig.extend(s.eigens)

    def selection(self, n: CupProof, fail) -> Selection:
        if not isinstance(n.payload, Selection):
            raise fail("missing clause selection")
        return n.payload

    def clause(self, s: CupSequent, sel: Selection, fail) -> Formula:
        if sel.origin is Origin.PROGRAM:
            try:
                return self.p.lookup(sel.name)
            except KeyError:
                raise fail(f"no clause named {sel.name!r} in P") from None
        pool = s.program_extra if sel.origin is Origin.ASSUMPTION else s.hyps
        if sel.index is None or not 0 <= sel.index < len(pool):
            raise fail(f"no {sel.origin.value} #{sel.index}")
        return pool[sel.index]

    def side(self, n: CupProof, fail) -> int:
        if not isinstance(n.payload, Side) or n.payload.index not in (1, 2):
            raise fail("missing branch index")
        return n.payload.index

    def fresh(self, n: CupProof, s: CupSequent, ty, fail) -> str:
        if not isinstance(n.payload, Eigen):
            raise fail("missing eigenvariable")
        c = n.payload.name
        sig = self.sig_of(s)
        if c in sig.terms or c in sig.preds:
            raise fail(f"eigenvariable {c} is not fresh")
        return c

    def witness(self, n: CupProof, s: CupSequent, ty, fail) -> Term:
        if not isinstance(n.payload, Witness):
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

    def init(self, focus: Formula, goal: Formula, fail) -> None:
        if isinstance(focus, Top) and isinstance(goal, Top):
            return
        if not (isinstance(focus, Atom) and isinstance(goal, Atom)):
            raise fail(f"focus {focus} is not an atom")
        if focus.pred != goal.pred or len(focus.args) != len(goal.args):
            raise fail(f"{focus} does not match {goal}")
        for a, b in zip(focus.args, goal.args):
            verdict = convertible(a, b, self.fuel)
            if verdict is not Conv.YES:
                raise fail(f"{a} and {b} are not convertible ({verdict.value})")


def _show(s: CupSequent) -> str:
    if s.kind is SequentKind.FOCUS:
        return f"[{s.focus}] {s.formula}"
    if s.kind is SequentKind.GUARDED:
        return f"<{s.formula}>"
    return str(s.formula)

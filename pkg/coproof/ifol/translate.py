"""Translation of coinductive uniform proofs into iFOL▷.

A proof of ⊢co φ from P becomes a proof of ⌜P⌝ ⊢ φ. The coinduction rule
becomes FP; the coinduction hypothesis is then the assumption ▷φ, and its
uses are derived by pushing the ▷ inwards along the focus chain. Program
clauses are used in guarded form, so each body atom is wanted one step
later; such proofs are closed with Next.

Goals are proved in one of two modes: NOW proves G itself, LATER proves
G with every conjunct under ▷. The coinduction hypothesis is only usable
in LATER mode.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace
from typing import Optional

from ..core.errors import RuleError, UnsupportedShape
from ..kernel.signature import Signature
from ..logic.formulas import Formula, Later
from ..logic.programs import Program, guard_program
from ..prover.proofs import CupProof, Origin, Rule, SequentKind
from .checker import check_ifol_proof
from .proofs import (
    IFolProof, IFolSequent, all_e, all_i, and_e, and_i, and_later_intro, conv, ex_i, fp,
    imp_e, imp_i, later_all_l, later_all_r, later_and_l, later_and_r, mon, mon_l, nxt,
    or_i, proj, push_later, top_i,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class _Env:
    """Where each CUP assumption lives in the iFOL▷ Δ."""

    context: tuple = ()
    assumptions: tuple[Formula, ...] = ()
    extra: tuple[int, ...] = ()    # program_extra index → Δ position
    hyps: tuple[int, ...] = ()     # hyps index → Δ position; hyps[0] holds ▷φ
    pushed: Optional[int] = None   # ▷φ with the ▷ pushed one connective in

    def assume(self, phi: Formula) -> tuple["_Env", int]:
        return replace(self, assumptions=self.assumptions + (phi,)), len(self.assumptions)

    def bind(self, name: str, ty) -> "_Env":
        return replace(self, context=self.context + ((name, ty),))

    def proj(self, index: int) -> IFolProof:
        return proj(self.context, self.assumptions, index)


def translation_root(p: Program, goal: Formula) -> IFolSequent:
    """⌜P⌝ ⊢ φ."""
    return IFolSequent((), tuple(guard_program(p)), goal)


def translate(sig: Signature, p: Program, proof: CupProof) -> IFolProof:
    """Raises UnsupportedShape when the hypothesis is used unguarded, NotHg
    when a clause of ``p`` has no guarded form."""
    result = _Translator(sig, p).root(proof)
    logger.debug(f"translated proof of {proof.sequent.formula}")
    return result


def check_translation(sig: Signature, p: Program, proof: CupProof, target: IFolProof) -> None:
    """``target`` checks and concludes ⌜P⌝ ⊢ φ for the root goal φ of ``proof``."""
    want = translation_root(p, proof.sequent.formula)
    if target.sequent != want:
        raise RuleError((), f"translation concludes {target.goal} from "
                            f"{len(target.sequent.assumptions)} assumptions, expected ⌜P⌝ ⊢ {want.goal}")
    check_ifol_proof(sig, target)


class _Translator:
    def __init__(self, sig: Signature, p: Program):
        self.sig = sig
        self.p = p
        self.guarded_clauses = guard_program(p)
        self.positions = {c.name: i for i, c in enumerate(p.clauses)}

    def root(self, proof: CupProof) -> IFolProof:
        env = _Env(assumptions=tuple(self.guarded_clauses))
        kind = proof.sequent.kind
        if proof.rule is Rule.COFIX:
            env, hyp = env.assume(Later(proof.sequent.formula))
            env = replace(env, hyps=(hyp,))
            return fp(self.guarded(proof.children[0], env, first=True))
        if kind is SequentKind.GOAL:
            return self.now(proof, env)
        raise UnsupportedShape(f"a proof must start with Cofix or a goal rule, not {proof.rule.value}")

    # ── guarded phase ──

    def guarded(self, node: CupProof, env: _Env, first: bool) -> IFolProof:
        phi = node.sequent.formula
        rule = node.rule
        if rule is Rule.DECG:
            return self.decide(node, env)
        if rule not in (Rule.ALL_RG, Rule.AND_RG, Rule.IMP_RG):
            raise UnsupportedShape(f"{rule.value} in the guarded phase")

        pushed_at = None
        if first:
            env, pushed_at = env.assume(push_later(Later(phi)))
            env = replace(env, pushed=pushed_at)

        if rule is Rule.ALL_RG:
            inner = env.bind(node.payload.name, phi.ty)
            result = all_i(self.guarded(node.children[0], inner, False), phi)
            wrap = later_all_l
        elif rule is Rule.AND_RG:
            result = and_i(self.guarded(node.children[0], env, False),
                           self.guarded(node.children[1], env, False))
            wrap = later_and_l
        else:
            inner, at = env.assume(phi.left)
            inner = replace(inner, hyps=inner.hyps + (at,))
            result = imp_i(self.guarded(node.children[0], inner, False))
            wrap = mon_l
        if first:
            result = wrap(result, env.hyps[0])
        return result

    # ── NOW mode ──

    def now(self, node: CupProof, env: _Env) -> IFolProof:
        phi = node.sequent.formula
        rule = node.rule
        if rule is Rule.TOP_R:
            return top_i(env.context, env.assumptions)
        if rule is Rule.AND_R:
            return and_i(self.now(node.children[0], env), self.now(node.children[1], env))
        if rule is Rule.OR_R:
            side = node.payload.index
            other = phi.right if side == 1 else phi.left
            return or_i(self.now(node.children[0], env), other, side)
        if rule is Rule.EX_R:
            return ex_i(self.now(node.children[0], env), phi, node.payload.term)
        if rule is Rule.ALL_R:
            inner = env.bind(node.payload.name, phi.ty)
            return all_i(self.now(node.children[0], inner), phi)
        if rule is Rule.IMP_R:
            inner, at = env.assume(phi.left)
            inner = replace(inner, extra=inner.extra + (at,))
            return imp_i(self.now(node.children[0], inner))
        if rule is Rule.DEC:
            return self.decide(node, env)
        raise UnsupportedShape(f"{rule.value} cannot conclude a goal sequent")

    def decide(self, node: CupProof, env: _Env) -> IFolProof:
        """Dec / DecG: resolve the atom against a clause in Δ."""
        sel = node.payload
        if sel.origin is Origin.PROGRAM:
            start = env.proj(self.positions[sel.name])
            body = self.later
        elif sel.origin is Origin.ASSUMPTION:
            start = env.proj(env.extra[sel.index])
            body = self.now
        elif sel.index == 0:
            raise UnsupportedShape(
                f"the coinduction hypothesis is used unguarded to prove {node.sequent.formula}")
        else:
            start = env.proj(env.hyps[sel.index])
            body = self.now
        held = self.chain(node.children[0], env, start, body)
        return conv(node.sequent.formula, held)

    def chain(self, focus: CupProof, env: _Env, held: IFolProof, body) -> IFolProof:
        while focus.rule is not Rule.INIT:
            if focus.rule is Rule.ALL_L:
                held = all_e(held, focus.payload.term)
            elif focus.rule is Rule.AND_L:
                held = and_e(held, focus.payload.index)
            elif focus.rule is Rule.IMP_L:
                held = imp_e(held, body(focus.children[1], env))
            else:
                raise UnsupportedShape(f"{focus.rule.value} in a focus chain")
            focus = focus.children[0]
        return held

    # ── LATER mode ──

    def later(self, node: CupProof, env: _Env) -> IFolProof:
        """Prove G with each conjunct under ▷."""
        rule = node.rule
        if rule is Rule.AND_R:
            return and_i(self.later(node.children[0], env), self.later(node.children[1], env))
        if rule is Rule.TOP_R:
            return nxt(top_i(env.context, env.assumptions))
        if rule is Rule.DEC:
            sel = node.payload
            if sel.origin is Origin.HYPOTHESIS and sel.index == 0:
                return self.hypothesis(node, env)
        return nxt(self.now(node, env))

    def whole(self, node: CupProof, env: _Env) -> IFolProof:
        """Prove ▷G."""
        if node.rule is Rule.AND_R:
            return and_later_intro(and_i(self.whole(node.children[0], env),
                                         self.whole(node.children[1], env)))
        return self.later(node, env)

    def hypothesis(self, node: CupProof, env: _Env) -> IFolProof:
        """Use ▷φ: each focus step first pushes the ▷ past the connective."""
        focus = node.children[0]
        if env.pushed is not None:
            held, pushed = env.proj(env.pushed), True
        else:
            held, pushed = env.proj(env.hyps[0]), False
        while focus.rule is not Rule.INIT:
            if focus.rule is Rule.ALL_L:
                held = all_e(held if pushed else later_all_r(held), focus.payload.term)
            elif focus.rule is Rule.AND_L:
                held = and_e(held if pushed else later_and_r(held), focus.payload.index)
            elif focus.rule is Rule.IMP_L:
                held = imp_e(held if pushed else mon(held), self.whole(focus.children[1], env))
            else:
                raise UnsupportedShape(f"{focus.rule.value} in a focus chain")
            pushed = False
            focus = focus.children[0]
        return conv(Later(node.sequent.formula), held)

"""Goal-directed search for coinductive uniform proofs.

The strategy is one admissible determinisation of the rules:

- Cofix once at the root, then the guarded right rules eagerly;
- DecG over the program clauses in declaration order;
- in the uniform phase right rules apply eagerly and Dec backtracks over
  Δ first, then the clauses added by →R, then P;
- ∀L/∃R witnesses are unification variables solved by unifying the
  focused head with the goal atom;
- iterative deepening on the total number of Dec and DecG steps.

Every rule is a generator of (tree, substitution, budget left) triples,
so backtracking is plain iteration.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Iterator, Optional

from ..core import config
from ..core.errors import IllFormedGoal, NoUnifier, RuleError
from ..kernel.signature import Signature
from ..kernel.terms import Const, Lam, Meta, Term, metas
from ..kernel.types import Arrow, Type
from ..logic.classify import LogicId, is_coinduction_goal, is_d_formula, is_g_formula
from ..logic.formulas import (
    And, Atom, Exists, Forall, Formula, Imp, Or, Top,
    instantiate_formula, well_formed,
)
from ..logic.programs import Program
from .checker import check_proof
from .proofs import (
    CupProof, CupSequent, Eigen, Origin, Rule, Selection, SequentKind, Side, Witness,
)
from .unify import EMPTY, Substitution, Unifier, UnifyMode

logger = logging.getLogger(__name__)

Step = tuple[CupProof, Substitution, int]


@dataclass(frozen=True)
class SearchConfig:
    logic: LogicId = LogicId.COHOHH_FIX
    max_depth: int = field(default_factory=lambda: config.MAX_DEPTH)
    fuel: int = field(default_factory=lambda: config.DEFAULT_FUEL)
    mode: Optional[UnifyMode] = None
    lemmas: tuple[Formula, ...] = ()

    def __post_init__(self):
        if self.max_depth < 1:
            raise ValueError("depth bound must be at least 1")

    @property
    def unify_mode(self) -> UnifyMode:
        if self.mode is not None:
            return self.mode
        return UnifyMode.WHNF if self.logic.fix else UnifyMode.SYNTACTIC


@dataclass(frozen=True)
class Exhausted:
    """No proof with at most ``depth`` Dec/DecG steps."""

    depth: int

    def __bool__(self) -> bool:
        return False


def with_lemmas(p: Program, lemmas) -> Program:
    """P ∪ {lemmas}, each lemma a clause named ``lemma``, ``lemma_1``, …"""
    for lemma in lemmas:
        p = p.with_clause(p.fresh_clause_name("lemma"), lemma)
    return p


def search(sig: Signature, p: Program, goal: Formula, cfg: SearchConfig = SearchConfig()) -> CupProof | Exhausted:
    """Find a proof of ``goal`` from ``p`` (extended by ``cfg.lemmas``).

    A coinduction goal gets a Cofix proof; any other goal of the logic a
    plain uniform proof. Raises IllFormedGoal for anything else.
    """
    p = with_lemmas(p, cfg.lemmas)
    well_formed(sig, (), goal)
    if is_coinduction_goal(cfg.logic, goal, sig):
        root = CupSequent(SequentKind.CO, goal)
    elif is_g_formula(cfg.logic, goal, sig):
        root = CupSequent(SequentKind.GOAL, goal)
    else:
        raise IllFormedGoal(f"{goal} is not a goal of {cfg.logic}")
    for c in p.clauses:
        if not is_d_formula(cfg.logic, c.formula, sig):
            raise IllFormedGoal(f"clause {c.name} is not a D-formula of {cfg.logic}")

    engine = _Search(sig, p, cfg)
    for bound in range(1, cfg.max_depth + 1):
        logger.debug(f"searching {goal} with {bound} resolution steps")
        for tree, subst, _ in engine.root(root, bound):
            proof = engine.finish(tree, subst)
            if proof is None:
                continue
            try:
                check_proof(sig, p, proof, cfg.logic, cfg.fuel)
            except RuleError as e:
                logger.warning(f"discarding a candidate proof: {e}")
                continue
            logger.info(f"proved {goal} in {cfg.logic} with {bound} resolution steps")
            return proof
    logger.info(f"no proof of {goal} within {cfg.max_depth} resolution steps")
    return Exhausted(cfg.max_depth)


def prove_with_lemma(
    sig: Signature,
    p: Program,
    lemma: Formula,
    target: Formula,
    cfg: SearchConfig = SearchConfig(),
) -> tuple[CupProof, CupProof] | Exhausted:
    """Prove ``lemma`` from P, then ``target`` from P ∪ {lemma}."""
    first = search(sig, p, lemma, cfg)
    if not first:
        return first
    second = search(sig, p, target, SearchConfig(
        cfg.logic, cfg.max_depth, cfg.fuel, cfg.mode, cfg.lemmas + (lemma,)))
    if not second:
        return second
    return first, second


class _Search:
    def __init__(self, sig: Signature, p: Program, cfg: SearchConfig):
        self.sig = sig
        self.p = p
        self.cfg = cfg
        self.mode = cfg.unify_mode
        self.ids = itertools.count()

    # ── helpers ──

    def fresh_meta(self, seq: CupSequent, ty: Type, hint: str) -> Meta:
        i = next(self.ids)
        return Meta(i, f"_{hint}{i}", len(seq.eigens), ty)

    def fresh_eigen(self, seq: CupSequent) -> str:
        return self.sig.fresh_name("c", seq.eigen_names)

    def unify(self, seq: CupSequent, a: Formula, b: Formula, subst: Substitution) -> Optional[Substitution]:
        unifier = Unifier(self.sig.extend(seq.eigens), self.mode, seq.eigen_names, self.cfg.fuel)
        try:
            return unifier.unify_atoms(a, b, subst)
        except NoUnifier:
            return None

    # ── coinductive phase ──

    def root(self, seq: CupSequent, budget: int) -> Iterator[Step]:
        if seq.kind is SequentKind.GOAL:
            yield from self.goal(seq, EMPTY, budget)
            return
        child = seq.guarded(seq.formula, hyps=(seq.formula,))
        for t, s, r in self.guarded(child, EMPTY, budget):
            yield CupProof(Rule.COFIX, seq, None, (t,)), s, r

    def guarded(self, seq: CupSequent, subst: Substitution, budget: int) -> Iterator[Step]:
        phi = seq.formula
        if isinstance(phi, Forall):
            c = self.fresh_eigen(seq)
            child = seq.guarded(instantiate_formula(phi.body, Const(c)),
                                eigens=seq.eigens + ((c, phi.ty),))
            for t, s, r in self.guarded(child, subst, budget):
                yield CupProof(Rule.ALL_RG, seq, Eigen(c), (t,)), s, r
        elif isinstance(phi, And):
            for t1, s1, r1 in self.guarded(seq.guarded(phi.left), subst, budget):
                for t2, s2, r2 in self.guarded(seq.guarded(phi.right), s1, r1):
                    yield CupProof(Rule.AND_RG, seq, None, (t1, t2)), s2, r2
        elif isinstance(phi, Imp):
            if not is_d_formula(self.cfg.logic, phi.left, self.sig.extend(seq.eigens)):
                raise IllFormedGoal(f"{phi.left} is not a D-formula of {self.cfg.logic}")
            child = seq.guarded(phi.right, hyps=seq.hyps + (phi.left,))
            for t, s, r in self.guarded(child, subst, budget):
                yield CupProof(Rule.IMP_RG, seq, None, (t,)), s, r
        elif isinstance(phi, (Atom, Top)) and budget > 0:
            for clause in self.p.clauses:
                if not _may_conclude(clause.formula, phi):
                    continue
                focus = seq.focused(clause.formula)
                for t, s, r in self.focus(focus, subst, budget - 1):
                    yield CupProof(Rule.DECG, seq, Selection(Origin.PROGRAM, clause.name), (t,)), s, r

    # ── uniform phase ──

    def goal(self, seq: CupSequent, subst: Substitution, budget: int) -> Iterator[Step]:
        phi = seq.formula
        if isinstance(phi, Top):
            yield CupProof(Rule.TOP_R, seq), subst, budget
        elif isinstance(phi, And):
            for t1, s1, r1 in self.goal(seq.goal(phi.left), subst, budget):
                for t2, s2, r2 in self.goal(seq.goal(phi.right), s1, r1):
                    yield CupProof(Rule.AND_R, seq, None, (t1, t2)), s2, r2
        elif isinstance(phi, Or):
            for side, branch in ((1, phi.left), (2, phi.right)):
                for t, s, r in self.goal(seq.goal(branch), subst, budget):
                    yield CupProof(Rule.OR_R, seq, Side(side), (t,)), s, r
        elif isinstance(phi, Imp):
            child = seq.goal(phi.right, program_extra=seq.program_extra + (phi.left,))
            for t, s, r in self.goal(child, subst, budget):
                yield CupProof(Rule.IMP_R, seq, None, (t,)), s, r
        elif isinstance(phi, Forall):
            c = self.fresh_eigen(seq)
            child = seq.goal(instantiate_formula(phi.body, Const(c)),
                             eigens=seq.eigens + ((c, phi.ty),))
            for t, s, r in self.goal(child, subst, budget):
                yield CupProof(Rule.ALL_R, seq, Eigen(c), (t,)), s, r
        elif isinstance(phi, Exists):
            m = self.fresh_meta(seq, phi.ty, phi.hint)
            for t, s, r in self.goal(seq.goal(instantiate_formula(phi.body, m)), subst, budget):
                yield CupProof(Rule.EX_R, seq, Witness(m), (t,)), s, r
        elif isinstance(phi, Atom) and budget > 0:
            for sel, d in self.candidates(seq):
                if not _may_conclude(d, phi):
                    continue
                for t, s, r in self.focus(seq.focused(d), subst, budget - 1):
                    yield CupProof(Rule.DEC, seq, sel, (t,)), s, r

    def candidates(self, seq: CupSequent) -> Iterator[tuple[Selection, Formula]]:
        for i, d in enumerate(seq.hyps):
            yield Selection(Origin.HYPOTHESIS, index=i), d
        for i, d in enumerate(seq.program_extra):
            yield Selection(Origin.ASSUMPTION, index=i), d
        for clause in self.p.clauses:
            yield Selection(Origin.PROGRAM, name=clause.name), clause.formula

    def focus(self, seq: CupSequent, subst: Substitution, budget: int) -> Iterator[Step]:
        d = seq.focus
        if isinstance(d, (Atom, Top)):
            s = self.unify(seq, d, seq.formula, subst)
            if s is not None:
                yield CupProof(Rule.INIT, seq), s, budget
        elif isinstance(d, And):
            for side, branch in ((1, d.left), (2, d.right)):
                if not _may_conclude(branch, seq.formula):
                    continue
                for t, s, r in self.focus(seq.focused(branch), subst, budget):
                    yield CupProof(Rule.AND_L, seq, Side(side), (t,)), s, r
        elif isinstance(d, Imp):
            for t1, s1, r1 in self.focus(seq.focused(d.right), subst, budget):
                for t2, s2, r2 in self.goal(seq.goal(d.left), s1, r1):
                    yield CupProof(Rule.IMP_L, seq, None, (t1, t2)), s2, r2
        elif isinstance(d, Forall):
            m = self.fresh_meta(seq, d.ty, d.hint)
            for t, s, r in self.focus(seq.focused(instantiate_formula(d.body, m)), subst, budget):
                yield CupProof(Rule.ALL_L, seq, Witness(m), (t,)), s, r

    # ── zonking ──

    def finish(self, tree: CupProof, subst: Substitution) -> Optional[CupProof]:
        """Apply the final substitution; unconstrained witnesses get defaults."""
        leftover: set[Meta] = set()
        self._collect(tree, subst, leftover)
        for m in sorted(leftover, key=lambda m: m.id):
            default = self.default_term(m)
            if default is None:
                return None
            subst = subst.extend(m, default)
        return self._zonk(tree, subst)

    def default_term(self, m: Meta) -> Optional[Term]:
        return _inhabitant(self.sig, m.ty)

    def _collect(self, tree: CupProof, subst: Substitution, out: set[Meta]) -> None:
        stack = [tree]
        while stack:
            node = stack.pop()
            if isinstance(node.payload, Witness):
                for u in metas(subst.resolve(node.payload.term)):
                    out.add(u)
            stack.extend(node.children)

    def _zonk(self, tree: CupProof, subst: Substitution) -> CupProof:
        seq = tree.sequent
        z = subst.resolve_formula
        sequent = CupSequent(
            seq.kind, z(seq.formula), seq.eigens,
            tuple(z(d) for d in seq.program_extra),
            tuple(z(d) for d in seq.hyps),
            z(seq.focus) if seq.focus is not None else None,
        )
        payload = tree.payload
        if isinstance(payload, Witness):
            payload = Witness(subst.resolve(payload.term))
        children = tuple(self._zonk(c, subst) for c in tree.children)
        return CupProof(tree.rule, sequent, payload, children)


def _inhabitant(sig: Signature, ty: Type) -> Optional[Term]:
    if isinstance(ty, Arrow):
        body = _inhabitant(sig, ty.cod)
        return None if body is None else Lam(ty.dom, body, "_")
    for name, sym_ty in sig.terms.items():
        if sym_ty == ty:
            return Const(name)
    return None


def _may_conclude(d: Formula, goal: Formula) -> bool:
    """Cheap filter: can some head of clause ``d`` match ``goal``?"""
    while True:
        if isinstance(d, Forall):
            d = d.body
        elif isinstance(d, Imp):
            d = d.right
        elif isinstance(d, And):
            return _may_conclude(d.left, goal) or _may_conclude(d.right, goal)
        elif isinstance(d, Atom):
            return isinstance(goal, Atom) and d.pred == goal.pred
        elif isinstance(d, Top):
            return isinstance(goal, Top)
        else:
            return False

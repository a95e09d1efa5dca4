"""Invariants read off coinductive proofs of Hg goals.

For a proof of ∀x̄. A₁ ∧ … ∧ Aₙ → A₀ with eigenvariables C, the atoms the
proof establishes (D) and the instantiations of the coinduction
hypothesis (agents) generate the set ⋃_w ⟦D⟧[Θ(w)], with Θ(ε) = θ₀ and
Θ(w:i) = θᵢ ⊙ Θ(w). That set should be contained in its own image under
Φ_P; ``check_invariant`` tests this for words up to a length bound.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Mapping, Optional, Union

from ..core import config
from ..core.errors import NotGround, NotHg, NotHgGoal
from ..kernel.signature import Signature
from ..kernel.terms import Term, constants, is_closed, metas
from ..kernel.types import Type
from ..logic.formulas import Atom, conjuncts
from ..logic.programs import Program, as_horn
from ..prover.proofs import CupProof, Origin, Rule, Selection, SequentKind, iter_nodes
from .coterms import Coterm, KleisliSubst, compose, interpret_guarded, substitute
from .model import clause_patterns, supported
from .truncation import Interpretation, TruncatedAtom, is_ground, observe

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Invariant:
    eigens: tuple[tuple[str, Type], ...]
    theta0: KleisliSubst
    agents: tuple[KleisliSubst, ...]
    proven: tuple[Atom, ...]
    assumed: tuple[Atom, ...] = ()
    len_bound: int = 4

    @property
    def eigen_names(self) -> frozenset[str]:
        return frozenset(name for name, _ in self.eigens)

    def describe(self) -> list[str]:
        lines = [f"θ0 = {self.theta0}"]
        lines += [f"θ{i} = {a}" for i, a in enumerate(self.agents, 1)]
        lines += [f"D: {a}" for a in self.proven]
        if self.assumed:
            lines += [f"I1 ∋ {a}" for a in self.assumed]
        return lines


@dataclass(frozen=True)
class Counterexample:
    """An enumerated atom outside Φ_P of the enumeration; falsy."""

    atom: TruncatedAtom
    word: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return False

    def __str__(self) -> str:
        word = "".join(str(i + 1) for i in self.word) or "ε"
        return f"COUNTEREXAMPLE {self.atom} (Θ({word}))"


# ── Extraction ────────────────────────────────────────────────────

def extract_invariant(
    sig: Signature,
    proof: CupProof,
    theta0: Mapping[str, Union[Term, Coterm]],
    len_bound: Optional[int] = None,
) -> Invariant:
    """Raises NotHgGoal unless ``proof`` proves an Hg goal coinductively."""
    if proof.rule is not Rule.COFIX:
        raise NotHgGoal("invariants are read off proofs that start with Cofix")
    try:
        goal = as_horn(sig, "goal", proof.sequent.formula)
    except NotHg as e:
        raise NotHgGoal(str(e)) from None

    node = proof.children[0]
    eigens = []
    while node.rule is Rule.ALL_RG:
        eigens.append((node.payload.name, node.sequent.formula.ty))
        node = node.children[0]
    assumed = []
    while node.rule is Rule.IMP_RG:
        assumed.extend(a for a in _atoms_of(node.sequent.formula.left))
        node = node.children[0]
    if len(eigens) != len(goal.variables):
        raise NotHgGoal("the guarded phase does not introduce one eigenvariable per variable")

    names = frozenset(n for n, _ in eigens)
    sig_c = sig.extend(eigens)

    proven: list[Atom] = []
    agents: list[KleisliSubst] = []
    seen_witnesses = set()
    for _, n in iter_nodes(proof):
        s = n.sequent
        if s.kind in (SequentKind.GUARDED, SequentKind.GOAL) and isinstance(s.formula, Atom):
            if _over(sig, names, s.formula) and s.formula not in proven \
                    and s.formula not in assumed:
                proven.append(s.formula)
        sel = n.payload
        if n.rule is Rule.DEC and isinstance(sel, Selection) \
                and sel.origin is Origin.HYPOTHESIS and sel.index == 0:
            witnesses = _witnesses(n.children[0])
            if witnesses in seen_witnesses:
                continue
            seen_witnesses.add(witnesses)
            agents.append(KleisliSubst.of({
                name: interpret_guarded(sig_c, w, names)
                for (name, _), w in zip(eigens, witnesses)}))

    base = {}
    for name, _ in eigens:
        if name not in theta0:
            raise NotGround(f"θ0 does not close the eigenvariable {name}")
        value = theta0[name]
        base[name] = value if isinstance(value, Coterm) else interpret_guarded(sig, value)
    inv = Invariant(tuple(eigens), KleisliSubst.of(base), tuple(agents), tuple(proven),
                    tuple(assumed), config.LEN_BOUND if len_bound is None else len_bound)
    logger.info(f"extracted invariant with {len(proven)} atoms and {len(agents)} agents")
    return inv


def _atoms_of(phi) -> list[Atom]:
    return [a for a in conjuncts(phi) if isinstance(a, Atom)]


def _over(sig: Signature, names: frozenset[str], a: Atom) -> bool:
    for t in a.args:
        if metas(t) or not is_closed(t):
            return False
        if any(c not in sig.terms and c not in names for c in constants(t)):
            return False
    return True


def _witnesses(focus: CupProof) -> tuple[Term, ...]:
    result = []
    while focus.rule is Rule.ALL_L:
        result.append(focus.payload.term)
        focus = focus.children[0]
    return tuple(result)


# ── Checking ──────────────────────────────────────────────────────

def enumerate_words(inv: Invariant, len_bound: Optional[int] = None):
    """(w, Θ(w)) in shortlex order for |w| ≤ len_bound."""
    bound = inv.len_bound if len_bound is None else len_bound
    thetas: dict[tuple[int, ...], KleisliSubst] = {(): inv.theta0}
    yield (), inv.theta0
    for length in range(1, bound + 1):
        for word in itertools.product(range(len(inv.agents)), repeat=length):
            theta = compose(inv.agents[word[-1]], thetas[word[:-1]])
            thetas[word] = theta
            yield word, theta


def _instances(sig: Signature, inv: Invariant, atoms, k: int, len_bound):
    sig_c = sig.extend(inv.eigens)
    names = inv.eigen_names
    opened = [(a, [interpret_guarded(sig_c, t, names) for t in a.args]) for a in atoms]
    for word, theta in enumerate_words(inv, len_bound):
        for a, args in opened:
            trees = tuple(observe(substitute(c, theta), k) for c in args)
            if not all(is_ground(t) for t in trees):
                raise NotGround(f"{a} is not closed by Θ at word {word}")
            yield word, TruncatedAtom(a.pred, trees)


def invariant_atoms(p: Program, inv: Invariant, k: Optional[int] = None,
                    len_bound: Optional[int] = None) -> Interpretation:
    """The enumerated I₂ at depth k."""
    k = k or config.TRUNCATION_DEPTH
    return Interpretation.of(k, (t for _, t in _instances(p.signature, inv, inv.proven, k, len_bound)))


def check_invariant(
    p: Program,
    inv: Invariant,
    k: Optional[int] = None,
    len_bound: Optional[int] = None,
) -> Optional[Counterexample]:
    """None when every enumerated atom lies in Φ_P(I₁ ∪ I₂); else the first
    atom that does not."""
    k = k or config.TRUNCATION_DEPTH
    sig = p.signature
    candidates = list(_instances(sig, inv, inv.proven, k, len_bound))
    assumed = [t for _, t in _instances(sig, inv, inv.assumed, k, len_bound)]
    whole = Interpretation.of(k, [t for _, t in candidates] + assumed)
    patterns = clause_patterns(p, k)
    checked = set()
    for word, atom in candidates:
        if atom in checked:
            continue
        checked.add(atom)
        if not supported(patterns, whole, atom, k):
            logger.info(f"invariant fails at {atom}")
            return Counterexample(atom, word)
    logger.info(f"invariant holds for {len(checked)} atoms at depth {k}")
    return None

"""Prover tests — uniform proof search, the independent checker, unification and CoLP"""

import random
from dataclasses import replace

import pytest

from coproof.core.errors import IllFormedGoal, NoUnifier, OccursCheck, RuleError
from coproof.kernel import (
    IOTA, OMICRON, App, Const, Fix, Meta, Signature, Var, arrow, metas, mk_app,
)
from coproof.logic import Atom, LogicId
from coproof.prover import (
    ColpFailure, CupProof, Eigen, Exhausted, Origin, Rule, SearchConfig, Selection, SequentKind,
    Substitution, Unifier, UnifyMode, Witness, check_proof, colp_solve, is_valid_proof,
    iter_nodes, proof_size, prove_with_lemma, rule_counts, search, unify, with_lemmas,
)
from coproof.syntax import parse_formula, parse_query

# ── Helpers ───────────────────────────────────────────────────────

F = Const("f")
A = Const("a")
FA_SIG = Signature({"a": IOTA, "f": arrow(IOTA, IOTA)}, {"p": arrow(IOTA, OMICRON)})

CORPUS = [
    "gamma1.clp", "gamma2.clp", "gamma3.clp", "stream.clp",
    "from.clp", "eq-odd-even.clp", "eq-s-g.clp", "typing.clp",
]


def _prove(src, goal, lemmas=True, **kw):
    cfg = SearchConfig(src.logic, lemmas=tuple(src.lemmas) if lemmas else (), **kw)
    return search(src.signature, src.program, goal, cfg)


def _nodes(proof, rule):
    return [node for _, node in iter_nodes(proof) if node.rule is rule]


def _selected(proof):
    return {node.payload.name for _, node in iter_nodes(proof)
            if isinstance(node.payload, Selection) and node.payload.name is not None}


def _replace_at(proof, path, **changes):
    """Copy of ``proof`` with the node at ``path`` changed"""
    if not path:
        return replace(proof, **changes)
    i, rest = path[0], path[1:]
    children = list(proof.children)
    children[i] = _replace_at(children[i], rest, **changes)
    return replace(proof, children=tuple(children))


# ── Search on the bundled programs ───────────────────────────────

class TestSearch:
    """Goal-directed search with the logic each file names"""

    def test_mutual_recursion(self, corpus):
        """eq (odd Int) resolves k_odd under Cofix and closes the loop on Δ"""
        src = corpus("eq-odd-even.clp")
        proof = _prove(src, src.goals[0])
        assert proof.rule is Rule.COFIX
        decg = proof.children[0]
        assert decg.rule is Rule.DECG
        assert decg.payload == Selection(Origin.PROGRAM, "k_odd")
        assert _nodes(proof, Rule.AND_R)
        assert any(n.payload.origin is Origin.HYPOTHESIS for n in _nodes(proof, Rule.DEC))

    def test_from_lemma_witness(self, corpus):
        """The tail of fromFun c is found by head normalising fromFun c"""
        src = corpus("from.clp")
        proof = _prove(src, src.lemmas[0], lemmas=False)
        (all_rg,) = _nodes(proof, Rule.ALL_RG)
        assert all_rg.payload == Eigen("c")
        tail = mk_app(src.defs["fromFun"], App(Const("s"), Const("c")))
        assert Witness(tail) in [n.payload for n in _nodes(proof, Rule.ALL_L)]

    def test_existential_goal_uses_lemma(self, corpus):
        """exists y. from 0 y has the witness fromFun 0 once the lemma is a clause"""
        src = corpus("from.clp")
        proof = _prove(src, src.goals[0])
        assert proof.rule is not Rule.COFIX
        assert proof.sequent.kind is SequentKind.GOAL
        (ex_r,) = _nodes(proof, Rule.EX_R)
        assert ex_r.payload == Witness(App(src.defs["fromFun"], Const("0")))
        assert "lemma" in _selected(proof)

    def test_irregular_goal_needs_lemma(self, corpus):
        """p a from p (f x) => p x has no regular proof"""
        src = corpus("gamma2.clp")
        result = search(src.signature, src.program, src.goals[0], SearchConfig(LogicId.COFOHC, 12))
        assert isinstance(result, Exhausted)
        assert not result
        assert result.depth == 12

    def test_prove_with_lemma(self, corpus):
        """The lemma is proven first, then used as a clause"""
        src = corpus("gamma2.clp")
        result = prove_with_lemma(src.signature, src.program, src.lemmas[0], src.goals[0],
                                  SearchConfig(src.logic, 12))
        lemma_proof, goal_proof = result
        assert lemma_proof.goal == src.lemmas[0]
        assert goal_proof.goal == src.goals[0]
        assert "lemma" in _selected(goal_proof)

    def test_fix_goal(self, corpus):
        """p (fix x. f x) unifies with p (f X) after one unfolding"""
        src = corpus("gamma3.clp")
        proof = _prove(src, src.goals[0])
        assert proof.rule is Rule.COFIX
        (all_l,) = _nodes(proof, Rule.ALL_L)
        assert all_l.payload == Witness(Fix(IOTA, App(F, Var(0)), "x"))

    @pytest.mark.parametrize("name", CORPUS)
    def test_corpus_goals(self, corpus, name):
        """Every goal and lemma of the corpus is provable and the proof checks"""
        src = corpus(name)
        for lemma in src.lemmas:
            proof = _prove(src, lemma, lemmas=False)
            assert proof, f"{name}: lemma {lemma}"
            check_proof(src.signature, src.program, proof, src.logic)
        for goal in src.goals:
            proof = _prove(src, goal)
            assert proof, f"{name}: goal {goal}"
            p = with_lemmas(src.program, src.lemmas)
            check_proof(src.signature, p, proof, src.logic)
            if src.lemmas:
                assert any(n.startswith("lemma") for n in _selected(proof))

    def test_rule_counts(self, corpus):
        """One Cofix per coinductive proof; sizes agree"""
        src = corpus("eq-odd-even.clp")
        proof = _prove(src, src.goals[0])
        counts = rule_counts(proof)
        assert counts[Rule.COFIX] == 1
        assert sum(counts.values()) == proof_size(proof)

    def test_goal_outside_logic(self, corpus):
        """forall x. p x is not a goal of cofohc"""
        src = corpus("gamma2.clp")
        with pytest.raises(IllFormedGoal):
            search(src.signature, src.program, src.lemmas[0], SearchConfig(LogicId.COFOHC, 3))

    def test_depth_must_be_positive(self):
        """A zero depth bound is a usage error"""
        with pytest.raises(ValueError):
            SearchConfig(LogicId.COFOHC, 0)

    def test_with_lemmas_names(self, corpus):
        """Lemmas are added as lemma, lemma_1, ..."""
        src = corpus("gamma1.clp")
        phi = parse_formula("p a", src.signature)
        p = with_lemmas(src.program, [phi, phi])
        assert [c.name for c in p.clauses] == ["g1", "lemma", "lemma_1"]


# ── Checker ───────────────────────────────────────────────────────

class TestChecker:
    """The checker rejects tampered trees at the offending node"""

    @pytest.fixture
    def eq_proof(self, corpus):
        src = corpus("eq-odd-even.clp")
        return src, _prove(src, src.goals[0])

    def test_valid(self, eq_proof):
        """Search output passes"""
        src, proof = eq_proof
        assert is_valid_proof(src.signature, src.program, proof, src.logic)

    def test_wrong_clause(self, eq_proof):
        """Swapping the selected clause is caught at the focused premise"""
        src, proof = eq_proof
        bad = _replace_at(proof, (0,), payload=Selection(Origin.PROGRAM, "k_even"))
        with pytest.raises(RuleError) as exc:
            check_proof(src.signature, src.program, bad, src.logic)
        assert exc.value.path == (0, 0)

    def test_unknown_clause(self, eq_proof):
        """A selection must name a clause of P"""
        src, proof = eq_proof
        bad = _replace_at(proof, (0,), payload=Selection(Origin.PROGRAM, "k_missing"))
        with pytest.raises(RuleError, match="k_missing"):
            check_proof(src.signature, src.program, bad, src.logic)

    def test_wrong_root_rule(self, eq_proof):
        """Cofix is the only rule for a ⊢co root"""
        src, proof = eq_proof
        bad = replace(proof, rule=Rule.AND_R)
        with pytest.raises(RuleError) as exc:
            check_proof(src.signature, src.program, bad, src.logic)
        assert exc.value.path == ()

    def test_missing_premise(self, eq_proof):
        """Dropping a branch of ∧R is reported at the ∧R node"""
        src, proof = eq_proof
        path = next(p for p, n in iter_nodes(proof) if n.rule is Rule.AND_R)
        node = next(n for p, n in iter_nodes(proof) if p == path)
        bad = _replace_at(proof, path, children=node.children[:1])
        with pytest.raises(RuleError) as exc:
            check_proof(src.signature, src.program, bad, src.logic)
        assert exc.value.path == path

    def test_eigenvariable_must_be_fresh(self, corpus):
        """∀Rg may not reuse a constant of the signature"""
        src = corpus("from.clp")
        proof = _prove(src, src.lemmas[0], lemmas=False)
        bad = _replace_at(proof, (0,), payload=Eigen("0"))
        with pytest.raises(RuleError, match="not fresh") as exc:
            check_proof(src.signature, src.program, bad, src.logic)
        assert exc.value.path == (0,)

    def test_ill_typed_witness(self, corpus):
        """∃R witnesses are closed terms of the bound type"""
        src = corpus("from.clp")
        proof = _prove(src, src.goals[0])
        bad = replace(proof, payload=Witness(Const("s")))
        p = with_lemmas(src.program, src.lemmas)
        with pytest.raises(RuleError, match="witness"):
            check_proof(src.signature, p, bad, src.logic)

    def test_unknown_lemma_clause(self, corpus):
        """The goal proof does not check without its lemma in P"""
        src = corpus("gamma2.clp")
        proof = _prove(src, src.goals[0])
        assert not is_valid_proof(src.signature, src.program, proof, src.logic)


# ── Unification ───────────────────────────────────────────────────

class TestUnify:
    """Syntactic, rational and head-normalising unification"""

    def test_syntactic_occurs_check(self):
        """X = f X has no finite solution"""
        x = Meta(0, "X")
        with pytest.raises(OccursCheck):
            unify(FA_SIG, x, App(F, x))

    def test_rational_circular_solution(self):
        """X = f X is solved by fix x. f x"""
        x = Meta(0, "X")
        subst = unify(FA_SIG, x, App(F, x), UnifyMode.RATIONAL)
        assert subst.resolve(x) == Fix(IOTA, App(F, Var(0)), "x")

    def test_whnf_unfolds_fix(self):
        """f X meets fix x. f x after one unfolding"""
        x = Meta(0, "X")
        knot = Fix(IOTA, App(F, Var(0)), "x")
        subst = unify(FA_SIG, App(F, x), knot, UnifyMode.WHNF)
        assert subst.resolve(x) == knot
        with pytest.raises(NoUnifier):
            unify(FA_SIG, App(F, x), knot, UnifyMode.SYNTACTIC)

    def test_symbol_clash(self):
        """a and f a never unify"""
        with pytest.raises(NoUnifier):
            unify(FA_SIG, A, App(F, A), UnifyMode.RATIONAL)

    def test_eigenvariable_scope(self):
        """A variable may only mention eigenvariables older than itself"""
        sig = FA_SIG.extend((("c", IOTA),))
        unifier = Unifier(sig, UnifyMode.SYNTACTIC, ("c",))
        with pytest.raises(NoUnifier):
            unifier.unify(Meta(0, "X", 0), Const("c"))
        subst = unifier.unify(Meta(1, "Y", 1), Const("c"))
        assert subst.resolve(Meta(1)) == Const("c")

    def test_younger_variable_is_narrowed(self):
        """X := f Y narrows Y to X's scope instead of failing"""
        sig = FA_SIG.extend((("c", IOTA),))
        unifier = Unifier(sig, UnifyMode.SYNTACTIC, ("c",))
        x, y = Meta(0, "X", 0), Meta(1, "Y", 1)
        subst = unifier.unify(x, App(F, y))
        (inner,) = metas(subst.resolve(x))
        assert inner.scope == 0
        assert subst.resolve(y) == inner
        assert unifier.unify(y, A, subst).resolve(x) == App(F, A)
        with pytest.raises(NoUnifier):
            unifier.unify(y, Const("c"), subst)

    def test_substitution_resolves_chains(self):
        """X := Y, Y := f a resolves X to f a"""
        x, y = Meta(0, "X"), Meta(1, "Y")
        s = Substitution().extend(x, y).extend(y, App(F, A))
        assert s.resolve(x) == App(F, A)
        assert s.idempotent() == {x: App(F, A), y: App(F, A)}
        assert len(s) == 2 and x in s

    def test_unify_atoms(self):
        """Different predicates never unify"""
        sig = Signature(FA_SIG.terms, {"p": arrow(IOTA, OMICRON), "q": arrow(IOTA, OMICRON)})
        with pytest.raises(NoUnifier):
            Unifier(sig).unify_atoms(Atom("p", (A,)), Atom("q", (A,)))


# ── CoLP ──────────────────────────────────────────────────────────

class TestColp:
    """Loop detection with circular unifiers"""

    @pytest.mark.parametrize("name", ["gamma1.clp", "gamma2.clp", "gamma3.clp", "stream.clp"])
    def test_answers(self, corpus, expected, name):
        """Answers match the recorded table"""
        src = corpus(name)
        for text, answer in expected[name]["colp"].items():
            query = parse_query(text, src.signature, src.defs)
            assert str(colp_solve(src.signature, src.program, query)) == answer, text

    def test_failure_is_falsy(self, corpus):
        """p a is not derivable in gamma3"""
        src = corpus("gamma3.clp")
        result = colp_solve(src.signature, src.program, parse_query("p a", src.signature), bound=8)
        assert isinstance(result, ColpFailure)
        assert not result
        assert result.bound == 8

    def test_type_inference_query(self, corpus):
        """self-application gets a circular type"""
        src = corpus("typing.clp")
        answer = colp_solve(src.signature, src.program, src.queries[0])
        assert answer
        assert isinstance(answer.as_dict()["t"], Fix)


# ── Randomised search and check ──────────────────────────────────

class TestSearchProperties:
    """Whatever search returns, the checker accepts"""

    def test_random_programs(self, random_horn):
        """500 random programs: proofs check, failures are Exhausted"""
        rng = random.Random(7)
        proved = 0
        for _ in range(500):
            sig, p, goal = random_horn(rng)
            result = search(sig, p, goal, SearchConfig(LogicId.COFOHC, 4))
            if result:
                assert isinstance(result, CupProof)
                check_proof(sig, p, result, LogicId.COFOHC)
                proved += 1
            else:
                assert isinstance(result, Exhausted)
        assert proved > 0

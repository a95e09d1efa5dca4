"""Herbrand tests — truncated trees, the gfp of Φ_P, coterm substitutions and invariants"""

import random
from dataclasses import replace

import pytest

from coproof.core.errors import NotGround, NotHgGoal
from coproof.herbrand import (
    BOTTOM, IDENTITY, Counterexample, Interpretation, KleisliSubst, Tree, TruncatedAtom,
    check_invariant, compatible, compose, conservative_extension, coterm_equal, enumerate_words,
    extract_invariant, gfp_truncated, herbrand_base, interpret_guarded, invariant_atoms,
    list_model, meet, model_member, observe, phi_step, refines, substitute,
    truncate_atom, universe,
)
from coproof.herbrand.coterms import LazyCoterm, interpret_open
from coproof.herbrand.truncation import function_symbols
from coproof.kernel import IOTA, App, Const, Fix, Var, argument_types, mk_app
from coproof.logic import Atom
from coproof.prover import SearchConfig, search
from coproof.syntax import parse_formula, parse_query

# ── Helper trees ──────────────────────────────────────────────────

A = Tree("a")
FA = Tree("f", (A,))
F_BOTTOM = Tree("f", (BOTTOM,))


def _zeros():
    """fix x. scons 0 x"""
    return Fix(IOTA, mk_app(Const("scons"), Const("0"), Var(0)), "x")


def _coinductive_proof(src, formula):
    proof = search(src.signature, src.program, formula, SearchConfig(src.logic))
    assert proof
    return proof


def _ground_atom(rng, sig, depth=3):
    """Random ground atom over the first-order symbols of ``sig``"""
    symbols = function_symbols(sig)
    leaves = [f for f, n in symbols if n == 0]

    def term(d):
        if d <= 0 or rng.random() < 0.3:
            return Const(rng.choice(leaves))
        f, n = rng.choice(symbols)
        return mk_app(Const(f), *(term(d - 1) for _ in range(n)))

    pred = rng.choice(sorted(sig.preds))
    return Atom(pred, tuple(term(depth) for _ in argument_types(sig.preds[pred])))


# ── Truncation ────────────────────────────────────────────────────

class TestTruncation:
    """Depth-k trees and their orders"""

    def test_observe_stream(self, nat_sig):
        """fix x. scons 0 x at depth 2 is scons 0 ⊥"""
        tree = observe(interpret_guarded(nat_sig, _zeros()), 2)
        assert str(tree) == "scons 0 _|_"
        assert str(TruncatedAtom("stream", (tree,))) == "stream (scons 0 _|_)"

    def test_constants_survive_the_cut(self, nat_sig):
        """Only nodes with arguments become ⊥"""
        tree = observe(interpret_guarded(nat_sig, App(Const("s"), Const("0"))), 2)
        assert tree == Tree("s", (Tree("0"),))
        assert observe(interpret_guarded(nat_sig, App(Const("s"), Const("0"))), 1) == BOTTOM

    def test_orders(self):
        """f a ≤ f ⊥; f a and f ⊥ meet in f a; a and f a do not meet"""
        assert refines(FA, F_BOTTOM)
        assert not refines(F_BOTTOM, FA)
        assert compatible(F_BOTTOM, FA)
        assert meet(FA, F_BOTTOM) == FA
        assert meet(A, FA) is None
        assert not compatible(A, FA)

    def test_universe(self, corpus):
        """Depth-2 trees over a and f"""
        sig = corpus("gamma2.clp").signature
        assert {str(t) for t in universe(sig, 2)} == {"a", "f a", "f _|_"}
        assert len(list(herbrand_base(sig, 2))) == 3

    def test_interpretation_lookup(self):
        """supports is compatibility, covers is refinement"""
        i = Interpretation.of(3, [TruncatedAtom("p", (F_BOTTOM,))])
        assert i.supports(TruncatedAtom("p", (FA,)))
        assert i.covers(TruncatedAtom("p", (FA,)))
        assert not i.supports(TruncatedAtom("p", (A,)))
        assert not i.supports(TruncatedAtom("q", (FA,)))
        assert i.lines() == ["p (f _|_)"]

    def test_open_atom_is_rejected(self, corpus):
        """Only ground atoms have a truncation"""
        src = corpus("gamma2.clp")
        with pytest.raises(NotGround):
            truncate_atom(src.signature, parse_query("p x", src.signature), 3)


# ── The truncated model ──────────────────────────────────────────

class TestModel:
    """gfp of Φ_P over the depth-k base"""

    @pytest.mark.parametrize("name", ["gamma1.clp", "gamma2.clp", "gamma3.clp"])
    def test_gfp(self, corpus, expected, name):
        """The depth-3 model matches the recorded listing"""
        src = corpus(name)
        assert list_model(src.program, 3) == expected[name]["model"]["3"]

    def test_gfp_is_a_fixed_point(self, corpus):
        """Φ_P(gfp) = gfp"""
        src = corpus("stream.clp")
        model = gfp_truncated(src.program, 2)
        assert phi_step(src.program, model, 2) == model

    @pytest.mark.parametrize("name", [
        "gamma1.clp", "gamma2.clp", "gamma3.clp", "stream.clp",
        "from.clp", "eq-odd-even.clp", "eq-s-g.clp", "typing.clp",
    ])
    def test_members(self, corpus, expected, name):
        """Recorded membership verdicts"""
        src = corpus(name)
        for text, k, verdict in expected[name]["members"]:
            atom = parse_formula(text, src.signature, src.defs)
            assert model_member(src.program, atom, k) is verdict, text

    @pytest.mark.parametrize("name", [
        "gamma1.clp", "gamma2.clp", "gamma3.clp", "stream.clp", "eq-odd-even.clp", "eq-s-g.clp",
    ])
    def test_provable_goals_are_members(self, corpus, name):
        """Atoms with a coinductive proof survive at every depth"""
        src = corpus(name)
        for goal in src.goals:
            for k in range(1, 7):
                assert model_member(src.program, goal, k), (str(goal), k)

    def test_lemma_instances_are_members(self, corpus):
        """from n (fromFun n) holds for the first few n"""
        src = corpus("from.clp")
        for text in ["from 0 (fromFun 0)", "from (s 0) (fromFun (s 0))"]:
            atom = parse_formula(text, src.signature, src.defs)
            for k in range(1, 7):
                assert model_member(src.program, atom, k), (text, k)

    @pytest.mark.parametrize("name,depths", [
        ("gamma1.clp", (1, 2, 3, 4)), ("gamma2.clp", (1, 2, 3, 4)), ("gamma3.clp", (1, 2, 3, 4)),
        ("eq-odd-even.clp", (1, 2, 3, 4)), ("eq-s-g.clp", (1, 2, 3, 4)),
        ("stream.clp", (1, 2, 3)), ("from.clp", (1, 2)),
    ])
    def test_members_are_covered_by_gfp(self, corpus, name, depths):
        """20 random ground atoms per depth: a member refines an atom of the gfp"""
        src = corpus(name)
        rng = random.Random(name)
        for k in depths:
            model = gfp_truncated(src.program, k)
            for _ in range(20):
                atom = _ground_atom(rng, src.signature)
                if model_member(src.program, atom, k):
                    assert model.covers(truncate_atom(src.signature, atom, k)), (str(atom), k)

    def test_covered_atom_need_not_be_member(self, corpus):
        """p (f a) refines p (f ⊥) at depth 2 but has no support below"""
        src = corpus("gamma3.clp")
        atom = parse_formula("p (f a)", src.signature)
        model = gfp_truncated(src.program, 2)
        assert model.lines() == ["p (f _|_)"]
        assert model.covers(truncate_atom(src.signature, atom, 2))
        assert truncate_atom(src.signature, atom, 2) not in model
        assert not model_member(src.program, atom, 2)

    def test_conservative_lemma(self, corpus):
        """forall x. p x adds nothing to the model of p (f x) => p x"""
        src = corpus("gamma2.clp")
        for k in range(1, 6):
            assert conservative_extension(src.program, "lemma", src.lemmas[0], k)

    def test_non_conservative_lemma(self, corpus):
        """forall x. p x does change the model of p x => p (f x)"""
        src = corpus("gamma3.clp")
        lemma = parse_formula("forall x. p x", src.signature)
        assert not conservative_extension(src.program, "lemma", lemma, 3)

    @pytest.mark.parametrize("name,k", [
        ("gamma1.clp", 3), ("gamma2.clp", 3), ("gamma3.clp", 3), ("stream.clp", 2),
    ])
    def test_phi_is_monotone(self, corpus, name, k):
        """I ⊆ J implies Φ_P(I) ⊆ Φ_P(J); 125 random pairs per program"""
        src = corpus(name)
        base = list(herbrand_base(src.signature, k))
        rng = random.Random(k)
        for _ in range(125):
            big = [a for a in base if rng.random() < 0.6]
            small = [a for a in big if rng.random() < 0.6]
            i, j = Interpretation.of(k, small), Interpretation.of(k, big)
            assert phi_step(src.program, i, k) <= phi_step(src.program, j, k)


# ── Coterms ───────────────────────────────────────────────────────

class TestCoterms:
    """Observation equality and Kleisli substitution"""

    def test_rational_and_lazy_agree(self, nat_sig):
        """The graph and the lazy reading of a fixed point observe alike"""
        zeros = _zeros()
        assert coterm_equal(interpret_guarded(nat_sig, zeros), LazyCoterm(zeros), 6)
        assert not coterm_equal(interpret_guarded(nat_sig, zeros),
                                interpret_guarded(nat_sig, Const("0")), 6)

    def test_identity(self):
        """c[id] is c"""
        c = interpret_open(App(Const("s"), Const("x")), frozenset({"x"}))
        assert substitute(c, IDENTITY) is c

    def test_substitution(self, nat_sig):
        """(scons x x)[x ↦ 0] is scons 0 0"""
        c = interpret_open(mk_app(Const("scons"), Const("x"), Const("x")), frozenset({"x"}))
        theta = KleisliSubst.of({"x": interpret_guarded(nat_sig, Const("0"))})
        assert str(observe(substitute(c, theta), 3)) == "scons 0 0"
        assert list(theta) == ["x"] and len(theta) == 1

    def test_composition_law(self):
        """c[θ][δ] = c[θ ⊙ δ] on 500 random rational coterms, observed to depth 6"""
        names = ["x", "y", "z"]
        variables = frozenset(names)

        def term(rng, depth):
            r = rng.random()
            if depth <= 0 or r < 0.25:
                return rng.choice([Const("0")] + [Const(n) for n in names])
            if r < 0.5:
                return App(Const("s"), term(rng, depth - 1))
            if r < 0.8:
                return mk_app(Const("scons"), term(rng, depth - 1), term(rng, depth - 1))
            # a cycle through an open leaf: fix v. scons t v
            return Fix(IOTA, mk_app(Const("scons"), term(rng, depth - 1), Var(0)), "v")

        def subst(rng):
            chosen = [n for n in names if rng.random() < 0.7]
            return KleisliSubst.of({n: interpret_open(term(rng, 3), variables) for n in chosen})

        for seed in range(500):
            rng = random.Random(seed)
            c = interpret_open(term(rng, 4), variables)
            theta, delta = subst(rng), subst(rng)
            left = substitute(substitute(c, theta), delta)
            right = substitute(c, compose(theta, delta))
            assert coterm_equal(left, right, 6), f"seed {seed}: {c} [{theta}] [{delta}]"

    def test_composition_law_with_streams(self, nat_sig):
        """A hand case mixing a closed stream into the substitution"""
        xy = frozenset({"x", "y"})
        x, y = Const("x"), Const("y")
        c = interpret_open(mk_app(Const("scons"), x, App(Const("s"), y)), xy)
        theta = KleisliSubst.of({
            "x": interpret_open(App(Const("s"), y), xy),
            "y": interpret_open(mk_app(Const("scons"), x, _zeros()), xy),
        })
        delta = KleisliSubst.of({
            "x": interpret_guarded(nat_sig, Const("0")),
            "y": interpret_open(App(Const("s"), x), xy),
        })
        left = substitute(substitute(c, theta), delta)
        right = substitute(c, compose(theta, delta))
        assert coterm_equal(left, right, 6)


# ── Invariants ────────────────────────────────────────────────────

class TestInvariants:
    """Invariants extracted from Hg proofs are closed under Φ_P"""

    @pytest.mark.parametrize("name,theta0", [
        ("from.clp", {"c": "0"}),
        ("gamma2.clp", {"c": "a"}),
        ("eq-s-g.clp", {"c": "Int"}),
    ])
    def test_lemma_invariants(self, corpus, name, theta0):
        """Lemma proofs yield invariants that check"""
        src = corpus(name)
        proof = _coinductive_proof(src, src.lemmas[0])
        inv = extract_invariant(src.signature, proof, {k: Const(v) for k, v in theta0.items()},
                                len_bound=4)
        assert [n for n, _ in inv.eigens] == ["c"]
        assert inv.agents
        assert check_invariant(src.program, inv, 4) is None

    @pytest.mark.parametrize("name", ["eq-odd-even.clp", "stream.clp", "gamma3.clp"])
    def test_ground_goal_invariants(self, corpus, name):
        """Ground goals need no θ0"""
        src = corpus(name)
        inv = extract_invariant(src.signature, _coinductive_proof(src, src.goals[0]), {})
        assert inv.eigens == ()
        assert check_invariant(src.program, inv, 4) is None

    def test_assumptions_are_kept_apart(self, corpus):
        """eq c from →Rg is assumed, not proven"""
        src = corpus("eq-s-g.clp")
        inv = extract_invariant(src.signature, _coinductive_proof(src, src.lemmas[0]),
                                {"c": Const("Int")})
        assert inv.assumed == (Atom("eq", (Const("c"),)),)
        assert inv.describe()[0].startswith("θ0 = ")

    def test_corrupted_invariant(self, corpus):
        """Without the second atom and the agents, from (s 0) (fromFun (s 0)) has no support"""
        src = corpus("from.clp")
        inv = extract_invariant(src.signature, _coinductive_proof(src, src.lemmas[0]),
                                {"c": Const("0")}, len_bound=4)
        sig_c = src.signature.extend(inv.eigens)
        first = parse_formula("from c (fromFun c)", sig_c, src.defs)
        second = parse_formula("from (s c) (fromFun (s c))", sig_c, src.defs)
        assert first in inv.proven and second in inv.proven
        result = check_invariant(src.program, replace(inv, proven=(first,), agents=()), 4)
        assert isinstance(result, Counterexample)
        assert not result
        assert result.word == ()
        assert str(result).startswith("COUNTEREXAMPLE from 0")

    def test_agents_regenerate_dropped_atoms(self, corpus):
        """Θ(1) of from c (fromFun c) is the dropped second atom, so the check still passes"""
        src = corpus("from.clp")
        inv = extract_invariant(src.signature, _coinductive_proof(src, src.lemmas[0]),
                                {"c": Const("0")}, len_bound=4)
        second = parse_formula("from (s c) (fromFun (s c))",
                               src.signature.extend(inv.eigens), src.defs)
        dropped = replace(inv, proven=tuple(a for a in inv.proven if a != second))
        assert check_invariant(src.program, dropped, 4) is None

    def test_wrong_atom(self, corpus):
        """from c (fromFun (s c)) is not supported by k_from"""
        src = corpus("from.clp")
        inv = extract_invariant(src.signature, _coinductive_proof(src, src.lemmas[0]),
                                {"c": Const("0")}, len_bound=4)
        wrong = parse_formula("from c (fromFun (s c))", src.signature.extend(inv.eigens), src.defs)
        result = check_invariant(src.program, replace(inv, proven=(wrong,)), 4)
        assert isinstance(result, Counterexample)
        assert not result
        assert str(result).startswith("COUNTEREXAMPLE from")

    def test_words(self, corpus):
        """Shortlex enumeration of agent words"""
        src = corpus("from.clp")
        inv = extract_invariant(src.signature, _coinductive_proof(src, src.lemmas[0]),
                                {"c": Const("0")})
        words = [w for w, _ in enumerate_words(inv, 2)]
        n = len(inv.agents)
        assert words[0] == ()
        assert len(words) == 1 + n + n * n

    def test_enumerated_atoms(self, corpus):
        """Θ walks c through 0, s 0, s (s 0), ..."""
        src = corpus("gamma2.clp")
        inv = extract_invariant(src.signature, _coinductive_proof(src, src.lemmas[0]),
                                {"c": Const("a")}, len_bound=2)
        lines = invariant_atoms(src.program, inv, 4).lines()
        assert "p a" in lines
        assert "p (f a)" in lines

    def test_theta0_must_close_eigenvariables(self, corpus):
        """Every eigenvariable needs a starting value"""
        src = corpus("from.clp")
        with pytest.raises(NotGround):
            extract_invariant(src.signature, _coinductive_proof(src, src.lemmas[0]), {})

    def test_existential_goal(self, corpus):
        """exists y. from 0 y is not an Hg goal"""
        src = corpus("from.clp")
        p = src.program.with_clause("lemma", src.lemmas[0])
        proof = search(src.signature, p, src.goals[0], SearchConfig(src.logic))
        with pytest.raises(NotHgGoal):
            extract_invariant(src.signature, proof, {})

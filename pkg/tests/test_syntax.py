"""Syntax tests — source files, printing, parse errors and the proof exchange format"""

import json
import random

import pytest

from coproof.core.errors import ParseError, ProofFormatError, UnboundVariable, UnknownPredicate
from coproof.ifol import translate
from coproof.kernel import IOTA, OMICRON, App, Arrow, Const, Fix, Lam, Meta, Var, arrow
from coproof.logic import Atom, Forall, LogicId
from coproof.prover import SearchConfig, search, with_lemmas
from coproof.syntax import (
    SourceFile, dumps_proof, load_proof, load_source, loads_proof, parse_formula, parse_program,
    parse_query, parse_term, parse_type, save_proof, show_cup_proof, show_formula, show_ifol_proof,
    show_program, show_term, show_type,
)

CORPUS = [
    "gamma1.clp", "gamma2.clp", "gamma3.clp", "stream.clp",
    "from.clp", "eq-odd-even.clp", "eq-s-g.clp", "typing.clp",
]


# ── Source files ──────────────────────────────────────────────────

class TestSourceFiles:
    """Directives are read in order"""

    def test_gamma2(self, corpus):
        """Declarations, a clause, the logic, lemma, goal and queries"""
        src = corpus("gamma2.clp")
        assert set(src.signature.terms) == {"a", "f"}
        assert set(src.signature.preds) == {"p"}
        assert [c.name for c in src.program.clauses] == ["g2"]
        assert src.logic is LogicId.COFOHH
        assert len(src.lemmas) == 1 and len(src.goals) == 1 and len(src.queries) == 2
        assert src.path.name == "gamma2.clp"

    def test_definitions(self, corpus):
        """def binds a name to a closed term"""
        src = corpus("from.clp")
        body = src.defs["fromFun"]
        assert isinstance(body, Fix)
        assert body.ty == arrow(IOTA, IOTA)
        assert isinstance(body.body, Lam)

    def test_comments_and_multiple_names(self):
        """% comments are skipped; const a, b declares both"""
        src = parse_program("% nothing here\nconst a, b : i.\npred p : i -> o.\n")
        assert set(src.signature.terms) == {"a", "b"}
        assert src.logic is None
        assert len(src.program) == 0

    def test_query_variables(self, corpus):
        """Free names in queries become unification variables"""
        src = corpus("gamma1.clp")
        query = src.queries[1]
        (arg,) = query.args
        assert isinstance(arg, Meta) and arg.hint == "x"
        again = parse_query("p x", src.signature)
        assert isinstance(again.args[0], Meta)

    def test_types(self):
        """-> associates to the right"""
        assert parse_type("i -> i -> o") == arrow(IOTA, IOTA, OMICRON)
        assert parse_type("(i -> i) -> i") == Arrow(arrow(IOTA, IOTA), IOTA)
        assert show_type(Arrow(arrow(IOTA, IOTA), IOTA)) == "(i -> i) -> i"

    def test_terms(self, nat_sig):
        """λ and fix binders default to i"""
        t = parse_term("\\x. s x", nat_sig)
        assert isinstance(t, Lam) and t.ty == IOTA
        assert show_term(parse_term("fix x. scons 0 x", nat_sig)) == "fix x. scons 0 x"


# ── Errors ────────────────────────────────────────────────────────

class TestErrors:
    """Rejected input names its position or its cause"""

    def test_missing_period(self):
        """Every directive ends with ."""
        with pytest.raises(ParseError):
            parse_program("const a : i")

    def test_bad_character_position(self):
        """Errors carry the line of the offending character"""
        with pytest.raises(ParseError) as exc:
            parse_program("const a : i.\nconst $ : i.\n")
        assert exc.value.line == 2
        assert str(exc.value).startswith("2:")

    def test_duplicate_constant(self):
        """A name is declared once"""
        with pytest.raises(ParseError, match="twice"):
            parse_program("const a : i.\nconst a : i.\n")

    def test_duplicate_clause(self):
        """Clause names are unique"""
        with pytest.raises(ParseError, match="unique"):
            parse_program("const a : i.\npred p : i -> o.\nclause k : p a.\nclause k : p a.\n")

    def test_unknown_logic(self):
        """The logic directive names one of the eight logics"""
        with pytest.raises(ParseError, match="unknown logic"):
            parse_program("logic prolog.\n")

    def test_unknown_predicate(self, corpus):
        """r is not declared"""
        with pytest.raises(UnknownPredicate):
            parse_formula("r a", corpus("gamma1.clp").signature)

    def test_unbound_variable(self, corpus):
        """Outside queries every name must be bound or declared"""
        with pytest.raises(UnboundVariable):
            parse_formula("p y", corpus("gamma1.clp").signature)

    def test_missing_file(self, tmp_path):
        """Unreadable files are input errors"""
        with pytest.raises(ParseError, match="cannot read"):
            load_source(tmp_path / "absent.clp")


# ── Printing ──────────────────────────────────────────────────────

class TestPrinting:
    """Printed formulae parse back to themselves"""

    @pytest.mark.parametrize("name", CORPUS)
    def test_round_trip(self, corpus, name):
        """Clauses, lemmas and goals survive show/parse"""
        src = corpus(name)
        formulas = [c.formula for c in src.program.clauses] + src.lemmas + src.goals
        for phi in formulas:
            text = show_formula(phi, src.defs)
            assert parse_formula(text, src.signature, src.defs) == phi, text
            plain = show_formula(phi)
            assert parse_formula(plain, src.signature) == phi, plain

    def test_definitions_fold(self, corpus):
        """Subterms equal to a definition print as its name"""
        src = corpus("from.clp")
        assert show_formula(src.lemmas[0], src.defs) == "forall x. from x (fromFun x)"
        assert "fix" in show_formula(src.lemmas[0])

    def test_clause(self, corpus):
        """Binders of the same type are grouped"""
        src = corpus("stream.clp")
        assert show_formula(src.program.lookup("k_stream")) == \
            "forall x y. nat x /\\ stream y => stream (scons x y)"

    def test_binder_avoids_constants(self, nat_sig):
        """A bound variable never prints as a declared constant"""
        phi = Forall(IOTA, Atom("nat", (App(Const("s"), Var(0)),)), "s")
        text = show_formula(phi)
        assert text == "forall s1. nat (s s1)"
        assert parse_formula(text, nat_sig) == phi

    @pytest.mark.parametrize("name", CORPUS)
    def test_program_round_trip(self, corpus, name):
        """A whole source file prints and parses back to an equal file"""
        src = corpus(name)
        again = parse_program("\n".join(show_program(src)) + "\n")
        assert again.program == src.program
        assert again.defs == src.defs
        assert again.logic is src.logic
        assert (again.lemmas, again.goals, again.queries) == (src.lemmas, src.goals, src.queries)

    def test_program_listing(self, corpus):
        """Declarations first, definitions printed with their binder types"""
        lines = show_program(corpus("from.clp"))
        assert lines[:4] == [
            "const 0 : i.", "const s : i -> i.", "const scons : i -> i -> i.",
            "pred from : i -> i -> o.",
        ]
        assert lines[4] == "def fromFun := fix f : i -> i. \\x. scons x (f (s x))."
        assert lines[-2:] == ["lemma forall x. from x (fromFun x).", "goal exists y. from 0 y."]

    def test_random_programs_round_trip(self, random_horn):
        """500 random Horn programs print and parse back"""
        for seed in range(500):
            sig, p, goal = random_horn(random.Random(seed))
            src = SourceFile(p, LogicId.COFOHC, goals=[goal])
            text = "\n".join(show_program(src))
            again = parse_program(text)
            assert again.signature == sig, text
            assert again.program == p, text
            assert again.goals == [goal], text

    def test_proof_listing(self, corpus):
        """One line per node; the root is Cofix"""
        src = corpus("gamma1.clp")
        proof = search(src.signature, src.program, src.goals[0], SearchConfig(src.logic))
        lines = show_cup_proof(proof)
        assert lines[0].startswith("Cofix")
        assert lines[1].startswith("  DecG [program g1]")
        ifol = show_ifol_proof(translate(src.signature, src.program, proof))
        assert ifol[0].startswith("#0: ")
        assert any(line.startswith("FP") for line in ifol)


# ── Proof files ───────────────────────────────────────────────────

def _proofs(src):
    p = with_lemmas(src.program, src.lemmas)
    for lemma in src.lemmas:
        yield src.program, search(src.signature, src.program, lemma, SearchConfig(src.logic))
    for goal in src.goals:
        yield p, search(src.signature, p, goal, SearchConfig(src.logic))


class TestProofFiles:
    """The JSON exchange format"""

    @pytest.mark.parametrize("name", ["gamma2.clp", "from.clp", "eq-odd-even.clp", "eq-s-g.clp"])
    def test_round_trip(self, corpus, name):
        """CUP proofs and their translations read back equal"""
        src = corpus(name)
        for p, proof in _proofs(src):
            assert loads_proof(dumps_proof(proof), src.signature, src.defs) == proof
            target = translate(src.signature, p, proof)
            assert loads_proof(dumps_proof(target), src.signature, src.defs) == target

    def test_header(self, corpus):
        """format and version come first"""
        src = corpus("gamma1.clp")
        proof = search(src.signature, src.program, src.goals[0], SearchConfig(src.logic))
        data = json.loads(dumps_proof(proof))
        assert data["format"] == "cup-proof"
        assert data["version"] == 1
        assert data["root"]["rule"] == "Cofix"

    def test_files(self, corpus, tmp_path):
        """save_proof / load_proof"""
        src = corpus("gamma3.clp")
        proof = search(src.signature, src.program, src.goals[0], SearchConfig(src.logic))
        path = tmp_path / "gamma3.json"
        save_proof(proof, path)
        assert load_proof(path, src.signature) == proof

    @pytest.mark.parametrize("text,match", [
        ("{", "invalid JSON"),
        ('{"format": "cup-proof", "version": 2, "root": {}}', "version"),
        ('{"format": "tree", "version": 1, "root": {}}', "unknown format"),
        ('{"format": "cup-proof", "version": 1, "root": {"rule": "Nope"}}', "malformed"),
        ("[]", "JSON object"),
    ])
    def test_rejected(self, corpus, text, match):
        """Malformed files raise ProofFormatError"""
        with pytest.raises(ProofFormatError, match=match):
            loads_proof(text, corpus("gamma1.clp").signature)

    def test_undeclared_name(self, corpus):
        """Formulae are read against the source's signature"""
        src = corpus("gamma1.clp")
        proof = search(src.signature, src.program, src.goals[0], SearchConfig(src.logic))
        text = dumps_proof(proof).replace('"p a"', '"r a"')
        with pytest.raises(ProofFormatError, match="UnknownPredicate"):
            loads_proof(text, src.signature)

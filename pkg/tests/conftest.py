"""Common fixtures — bundled corpus programs and their expected outcomes"""

import json

import pytest

from coproof.core import config
from coproof.kernel.signature import Signature
from coproof.kernel.terms import App, Const, Var
from coproof.kernel.types import IOTA, OMICRON, arrow
from coproof.logic import Atom, Clause, Forall, Imp, Program, conjunction
from coproof.syntax import load_source


@pytest.fixture(scope="session")
def corpus():
    """Loader for bundled .clp files, cached per session"""
    cache = {}

    def load(name):
        if name not in cache:
            cache[name] = load_source(config.get_corpus_path(name))
        return cache[name]

    return load


@pytest.fixture(scope="session")
def expected():
    """coproof/corpus/expected.json"""
    with open(config.get_corpus_path("expected.json"), encoding="utf-8") as f:
        return json.load(f)


@pytest.fixture
def nat_sig():
    """0, s, scons with nat/stream predicates"""
    return Signature(
        {"0": IOTA, "s": arrow(IOTA, IOTA), "scons": arrow(IOTA, IOTA, IOTA)},
        {"nat": arrow(IOTA, OMICRON), "stream": arrow(IOTA, OMICRON)},
    )


@pytest.fixture
def isolated_home(tmp_path, monkeypatch):
    """Proofs written by --save land in a temporary directory"""
    monkeypatch.setattr(config, "PROOFS_DIR", tmp_path / "proofs")
    return tmp_path


@pytest.fixture(scope="session")
def random_horn():
    """Generator of small cofohc Horn programs over p, q with terms x, f x and a"""
    sig = Signature(
        {"a": IOTA, "b": IOTA, "f": arrow(IOTA, IOTA)},
        {"p": arrow(IOTA, OMICRON), "q": arrow(IOTA, OMICRON)},
    )
    a, f, x = Const("a"), Const("f"), Var(0, "x")
    terms = [x, App(f, x), a]

    def generate(rng):
        def atom():
            return Atom(rng.choice("pq"), (rng.choice(terms),))

        clauses = []
        for i in range(rng.randint(1, 3)):
            body = [atom() for _ in range(rng.randint(0, 2))]
            phi = Imp(conjunction(body), atom()) if body else atom()
            clauses.append(Clause(f"r{i}", Forall(IOTA, phi, "x")))
        goal = Atom(rng.choice("pq"), (rng.choice([a, Const("b"), App(f, a)]),))
        return sig, Program(sig, tuple(clauses)), goal

    return generate

"""Parser for coproof source files, formulas and terms.

Lark turns text into a raw tree of tuples; the resolver then looks names
up (bound variable, definition, declared constant, or, in queries, a
fresh unification variable) and produces kernel terms and formulas.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path
from typing import Optional, Union

from lark import Lark, Transformer
from lark.exceptions import UnexpectedCharacters, UnexpectedEOF, UnexpectedInput, UnexpectedToken

from ..core import config
from ..core.errors import NotAnAtom, ParseError, UnboundVariable, UnknownPredicate
from ..kernel.signature import Signature
from ..kernel.terms import App, Const, Fix, Lam, Meta, Term, Var
from ..kernel.typecheck import infer_type
from ..kernel.types import IOTA, OMICRON, Arrow, Type, argument_types
from ..logic.classify import LogicId
from ..logic.formulas import (
    TOP, And, Atom, Exists, Forall, Formula, Imp, Later, Or, well_formed,
)
from ..logic.programs import Clause, Program

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _parser() -> Lark:
    return Lark(config.GRAMMAR_PATH.read_text(encoding="utf-8"),
                start=["start", "formula", "term", "type"], parser="lalr",
                propagate_positions=True)


# ── Raw trees ─────────────────────────────────────────────────────

class _Raw(Transformer):
    """Lark tree → nested tuples, still unresolved."""

    def NAME(self, token):
        return str(token)

    def names(self, items):
        return list(items)

    def iota(self, _):
        return IOTA

    def omicron(self, _):
        return OMICRON

    def arrow(self, items):
        return Arrow(items[0], items[1])

    def name(self, items):
        return ("name", items[0])

    def app(self, items):
        return ("app", items[0], items[1])

    def lam(self, items):
        return ("lam",) + _binder(items)

    def fix(self, items):
        return ("fix",) + _binder(items)

    def binders(self, items):
        ty = items[-1] if not isinstance(items[-1], str) else IOTA
        names = [x for x in items if isinstance(x, str)]
        return names, ty

    def forall(self, items):
        return ("forall", items[0], items[1])

    def exists(self, items):
        return ("exists", items[0], items[1])

    def imp(self, items):
        return ("imp", items[0], items[1])

    def or_(self, items):
        return ("or", items[0], items[1])

    def and_(self, items):
        return ("and", items[0], items[1])

    def later(self, items):
        return ("later", items[0])

    def top(self, _):
        return ("top",)

    def atom(self, items):
        return ("atom", items[0], tuple(items[1:]))

    def const_decl(self, items):
        return ("const", items[0], items[1])

    def pred_decl(self, items):
        return ("pred", items[0], items[1])

    def def_decl(self, items):
        return ("def", items[0], items[1])

    def clause_decl(self, items):
        return ("clause", items[0], items[1])

    def logic_decl(self, items):
        return ("logic", items[0])

    def goal_decl(self, items):
        return ("goal", items[0])

    def lemma_decl(self, items):
        return ("lemma", items[0])

    def query_decl(self, items):
        return ("query", items[0])

    def start(self, items):
        return list(items)


def _binder(items):
    if len(items) == 3:
        return items[0], items[1], items[2]
    return items[0], IOTA, items[1]


def _parse(text: str, start: str):
    try:
        tree = _parser().parse(text, start=start)
    except UnexpectedInput as e:
        raise _parse_error(e) from None
    return _Raw().transform(tree)


def _parse_error(e: UnexpectedInput) -> ParseError:
    if isinstance(e, UnexpectedCharacters):
        return ParseError(f"unexpected character {e.char!r}", e.line, e.column, e.allowed or ())
    if isinstance(e, UnexpectedToken):
        return ParseError(f"unexpected {e.token!r}", e.line, e.column, e.expected or ())
    if isinstance(e, UnexpectedEOF):
        return ParseError("unexpected end of input", 0, 0, e.expected or ())
    return ParseError(str(e), getattr(e, "line", 0), getattr(e, "column", 0))


# ── Resolution ────────────────────────────────────────────────────

class _Resolver:
    """Scope-aware name lookup. ``metas`` collects free names in queries."""

    def __init__(self, sig: Signature, defs: dict[str, Term], query: bool = False):
        self.sig = sig
        self.defs = defs
        self.query = query
        self.metas: dict[str, Meta] = {}
        self.ids = itertools.count()

    def term(self, raw, scope: tuple[str, ...] = (), ty: Type = IOTA) -> Term:
        tag = raw[0]
        if tag == "name":
            return self.name(raw[1], scope, ty)
        if tag == "app":
            return App(self.term(raw[1], scope), self.term(raw[2], scope))
        if tag in ("lam", "fix"):
            _, x, binder_ty, body = raw
            cls = Lam if tag == "lam" else Fix
            return cls(binder_ty, self.term(body, scope + (x,)), x)
        raise NotAnAtom(f"expected a term, found a {tag} formula")

    def name(self, x: str, scope: tuple[str, ...], ty: Type = IOTA) -> Term:
        if x in scope:
            return Var(len(scope) - 1 - _last_index(scope, x), x)
        if x in self.defs:
            return self.defs[x]
        if x in self.sig.terms:
            return Const(x)
        if self.query:
            if x not in self.metas:
                self.metas[x] = Meta(next(self.ids), x, 0, ty)
            return self.metas[x]
        if x in self.sig.preds:
            raise NotAnAtom(f"predicate {x} used as a term")
        raise UnboundVariable(f"{x} is neither bound nor declared")

    def formula(self, raw, scope: tuple[str, ...] = ()) -> Formula:
        tag = raw[0]
        if tag == "top":
            return TOP
        if tag == "atom":
            pred, args = raw[1], raw[2]
            if pred not in self.sig.preds:
                if pred in self.sig.terms or pred in self.defs or pred in scope:
                    raise NotAnAtom(f"{pred} is not a predicate")
                raise UnknownPredicate(f"undeclared predicate {pred}")
            expected = argument_types(self.sig.preds[pred])
            if len(expected) != len(args):
                expected = [IOTA] * len(args)
            return Atom(pred, tuple(self.term(a, scope, ty) for a, ty in zip(args, expected)))
        if tag in ("and", "or", "imp"):
            cls = {"and": And, "or": Or, "imp": Imp}[tag]
            return cls(self.formula(raw[1], scope), self.formula(raw[2], scope))
        if tag == "later":
            return Later(self.formula(raw[1], scope))
        if tag in ("forall", "exists"):
            (names, ty), body = raw[1], raw[2]
            cls = Forall if tag == "forall" else Exists
            result = self.formula(body, scope + tuple(names))
            for x in reversed(names):
                result = cls(ty, result, x)
            return result
        raise NotAnAtom(f"expected a formula, found a {tag}")


def _last_index(scope: tuple[str, ...], x: str) -> int:
    return len(scope) - 1 - scope[::-1].index(x)


# ── Source files ──────────────────────────────────────────────────

@dataclass
class SourceFile:
    program: Program
    logic: Optional[LogicId] = None
    goals: list[Formula] = field(default_factory=list)
    lemmas: list[Formula] = field(default_factory=list)
    queries: list[Formula] = field(default_factory=list)
    path: Optional[Path] = None

    @property
    def signature(self) -> Signature:
        return self.program.signature

    @property
    def defs(self) -> dict[str, Term]:
        return self.program.defs


def parse_program(text: str, path: Optional[Path] = None) -> SourceFile:
    """Parse a whole source file; items are read in order, names must be
    declared before use."""
    items = _parse(text, "start")
    sig = Signature({}, {})
    defs: dict[str, Term] = {}
    clauses: list[Clause] = []
    source = SourceFile(Program(sig))
    for item in items:
        tag = item[0]
        try:
            if tag == "const":
                for name in item[1]:
                    sig = sig.with_term(name, item[2])
            elif tag == "pred":
                for name in item[1]:
                    sig = sig.with_pred(name, item[2])
            elif tag == "def":
                name = item[1]
                if name in defs or name in sig.terms or name in sig.preds:
                    raise ParseError(f"{name} is already defined")
                body = _Resolver(sig, defs).term(item[2])
                infer_type(sig, (), body)
                defs[name] = body
            elif tag == "clause":
                phi = _Resolver(sig, defs).formula(item[2])
                well_formed(sig, (), phi)
                clauses.append(Clause(item[1], phi))
            elif tag == "logic":
                try:
                    source.logic = LogicId.parse(item[1])
                except ValueError as e:
                    raise ParseError(str(e)) from None
            elif tag in ("goal", "lemma"):
                phi = _Resolver(sig, defs).formula(item[1])
                well_formed(sig, (), phi)
                (source.goals if tag == "goal" else source.lemmas).append(phi)
            elif tag == "query":
                source.queries.append(_query(sig, defs, item[1]))
        except ValueError as e:
            raise ParseError(str(e)) from None
    try:
        source.program = Program(sig, tuple(clauses), defs)
    except ValueError as e:
        raise ParseError(str(e)) from None
    source.path = path
    logger.debug(f"parsed {len(clauses)} clauses, {len(sig.terms)} constants, {len(defs)} definitions")
    return source


def load_source(path: Union[str, Path]) -> SourceFile:
    path = Path(path)
    if not path.exists():
        candidate = Path(config.get_corpus_path(str(path)))
        if candidate.exists():
            path = candidate
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_program(text, path)


def parse_formula(text: str, sig: Signature, defs: Optional[dict[str, Term]] = None) -> Formula:
    phi = _Resolver(sig, defs or {}).formula(_parse(text, "formula"))
    well_formed(sig, (), phi)
    return phi


def parse_term(text: str, sig: Signature, defs: Optional[dict[str, Term]] = None) -> Term:
    t = _Resolver(sig, defs or {}).term(_parse(text, "term"))
    infer_type(sig, (), t)
    return t


def parse_type(text: str) -> Type:
    return _parse(text, "type")


def parse_query(text: str, sig: Signature, defs: Optional[dict[str, Term]] = None) -> Formula:
    """Like parse_formula, but free names become unification variables."""
    return _query(sig, defs or {}, _parse(text, "formula"))


def _query(sig: Signature, defs: dict[str, Term], raw) -> Formula:
    resolver = _Resolver(sig, defs, query=True)
    phi = resolver.formula(raw)
    if not isinstance(phi, Atom):
        raise NotAnAtom(f"a query must be an atom, got {phi}")
    return phi


__all__ = [
    "SourceFile", "parse_program", "load_source", "parse_formula", "parse_term",
    "parse_type", "parse_query",
]

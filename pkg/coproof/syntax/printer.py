"""Pretty printing in the surface syntax.

Everything printed here parses back with ``parser`` (given the same
signature and definitions), except unification variables, which print by
their hint.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Optional

from ..kernel.terms import App, Const, Fix, Lam, Meta, Term, Var, constants, metas, spine
from ..kernel.types import IOTA, Arrow, Type
from ..logic.formulas import (
    And, Atom, Exists, Forall, Formula, Imp, Later, Or, Top, formula_constants, formula_metas,
)


def show_type(ty: Type) -> str:
    if isinstance(ty, Arrow):
        left = show_type(ty.dom)
        if isinstance(ty.dom, Arrow):
            left = f"({left})"
        return f"{left} -> {show_type(ty.cod)}"
    return str(ty)


def _fresh(hint: str, avoid: set[str]) -> str:
    base = hint.rstrip("0123456789'") or "x"
    if hint not in avoid:
        return hint
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


class _Printer:
    def __init__(self, defs: Optional[Mapping[str, Term]], annotate: bool):
        self.annotate = annotate
        self.folds = {body: name for name, body in (defs or {}).items()}
        self.reserved = set(defs or {})

    def annotation(self, ty: Type) -> str:
        if not self.annotate or ty == IOTA:
            return ""
        return f" : {show_type(ty)}"

    def binder(self, hint: str, names: tuple[str, ...], used: Iterable[str]) -> str:
        return _fresh(hint, set(names) | set(used) | self.reserved)

    # ── terms ──

    def term(self, t: Term, names: tuple[str, ...]) -> str:
        if t in self.folds:
            return self.folds[t]
        if isinstance(t, Var):
            if t.index < len(names):
                return names[len(names) - 1 - t.index]
            return t.hint
        if isinstance(t, Const):
            return t.name
        if isinstance(t, Meta):
            return t.hint
        if isinstance(t, App):
            head, args = spine(t)
            parts = [self.atomic(head, names)] + [self.atomic(a, names) for a in args]
            return " ".join(parts)
        if isinstance(t, (Lam, Fix)):
            used = constants(t.body) | {m.hint for m in metas(t.body)}
            x = self.binder(t.hint, names, used)
            keyword = "\\" if isinstance(t, Lam) else "fix "
            return f"{keyword}{x}{self.annotation(t.ty)}. {self.term(t.body, names + (x,))}"
        raise TypeError(f"not a term: {t!r}")

    def atomic(self, t: Term, names: tuple[str, ...]) -> str:
        text = self.term(t, names)
        if isinstance(t, (App, Lam, Fix)) and t not in self.folds:
            return f"({text})"
        return text

    # ── formulae ──
    # precedence: 0 quantifier, 1 =>, 2 \/, 3 /\, 4 unary

    def formula(self, phi: Formula, names: tuple[str, ...], level: int = 0) -> str:
        text, own = self._formula(phi, names)
        return f"({text})" if own < level else text

    def _formula(self, phi: Formula, names: tuple[str, ...]) -> tuple[str, int]:
        if isinstance(phi, Top):
            return "true", 4
        if isinstance(phi, Atom):
            return " ".join([phi.pred] + [self.atomic(a, names) for a in phi.args]), 4
        if isinstance(phi, Later):
            return f"later {self.formula(phi.body, names, 4)}", 4
        if isinstance(phi, And):
            return f"{self.formula(phi.left, names, 3)} /\\ {self.formula(phi.right, names, 4)}", 3
        if isinstance(phi, Or):
            return f"{self.formula(phi.left, names, 2)} \\/ {self.formula(phi.right, names, 3)}", 2
        if isinstance(phi, Imp):
            return f"{self.formula(phi.left, names, 2)} => {self.formula(phi.right, names, 1)}", 1
        if isinstance(phi, (Forall, Exists)):
            cls = type(phi)
            keyword = "forall" if cls is Forall else "exists"
            binders = []
            body: Formula = phi
            while type(body) is cls and body.ty == phi.ty:
                used = formula_constants(body.body) | {m.hint for m in formula_metas(body.body)}
                x = self.binder(body.hint, names, used)
                binders.append(x)
                names = names + (x,)
                body = body.body
            return f"{keyword} {' '.join(binders)}{self.annotation(phi.ty)}. {self.formula(body, names)}", 0
        raise TypeError(f"not a formula: {phi!r}")


def show_term(t: Term, defs: Optional[Mapping[str, Term]] = None, annotate: bool = True,
              names: tuple[str, ...] = ()) -> str:
    """Print ``t``; subterms equal to a definition body print as its name."""
    return _Printer(defs, annotate).term(t, names)


def show_formula(phi: Formula, defs: Optional[Mapping[str, Term]] = None,
                 annotate: bool = True, names: tuple[str, ...] = ()) -> str:
    return _Printer(defs, annotate).formula(phi, names)


# ── Proof trees ───────────────────────────────────────────────────

def _cup_payload(node, defs) -> str:
    from ..prover.proofs import Eigen, Selection, Side, Witness
    pl = node.payload
    if isinstance(pl, Selection):
        where = pl.name if pl.name is not None else f"#{pl.index}"
        return f"{pl.origin.value} {where}"
    if isinstance(pl, Witness):
        return show_term(pl.term, defs)
    if isinstance(pl, Eigen):
        return pl.name
    if isinstance(pl, Side):
        return str(pl.index)
    return ""


def _cup_sequent(s, defs) -> str:
    from ..prover.proofs import SequentKind
    phi = show_formula(s.formula, defs)
    if s.kind is SequentKind.CO:
        return f"⊢co {phi}"
    if s.kind is SequentKind.GUARDED:
        return f"⊢ ⟨{phi}⟩"
    if s.kind is SequentKind.FOCUS:
        return f"[{show_formula(s.focus, defs)}] ⊢ {phi}"
    return f"⊢ {phi}"


def show_cup_proof(proof, defs: Optional[Mapping[str, Term]] = None) -> list[str]:
    """One line per node, indented by depth: ``Rule [payload]  sequent``."""
    lines: list[str] = []

    def walk(node, depth: int) -> None:
        payload = _cup_payload(node, defs)
        label = f"{node.rule.value} [{payload}]" if payload else node.rule.value
        lines.append(f"{'  ' * depth}{label}  {_cup_sequent(node.sequent, defs)}")
        for child in node.children:
            walk(child, depth + 1)

    walk(proof, 0)
    return lines


def show_ifol_proof(proof, defs: Optional[Mapping[str, Term]] = None) -> list[str]:
    """One line per node; the assumption list is shown only at the root."""
    from ..ifol.proofs import Fresh, Instance, Pick
    lines: list[str] = []
    root = proof.sequent
    for i, phi in enumerate(root.assumptions):
        lines.append(f"#{i}: {show_formula(phi, defs)}")

    def walk(node, depth: int) -> None:
        pl = node.payload
        if isinstance(pl, Pick):
            payload = f"#{pl.index}"
        elif isinstance(pl, Instance):
            payload = show_term(pl.term, defs)
        elif isinstance(pl, Fresh):
            payload = pl.name if pl.index is None else f"{pl.name} #{pl.index}"
        else:
            payload = ""
        label = f"{node.rule.value} [{payload}]" if payload else node.rule.value
        lines.append(f"{'  ' * depth}{label}  ⊢ {show_formula(node.goal, defs)}")
        for child in node.children:
            walk(child, depth + 1)

    walk(proof, 0)
    return lines


# ── Source files ──────────────────────────────────────────────────

def show_program(source) -> list[str]:
    """A parsed source file as source text, one item per line.

    Declarations come first, then definitions, clauses and directives;
    parsing the joined lines gives back an equal file.
    """
    program = source.program
    sig = program.signature
    lines = [f"const {name} : {show_type(ty)}." for name, ty in sig.terms.items()]
    lines += [f"pred {name} : {show_type(ty)}." for name, ty in sig.preds.items()]
    earlier: dict[str, Term] = {}
    for name, body in program.defs.items():
        lines.append(f"def {name} := {show_term(body, earlier)}.")
        earlier[name] = body
    defs = program.defs
    lines += [f"clause {c.name} : {show_formula(c.formula, defs)}." for c in program.clauses]
    if source.logic is not None:
        lines.append(f"logic {source.logic.value}.")
    lines += [f"lemma {show_formula(phi, defs)}." for phi in source.lemmas]
    lines += [f"goal {show_formula(phi, defs)}." for phi in source.goals]
    lines += [f"query {show_formula(phi, defs)}." for phi in source.queries]
    return lines

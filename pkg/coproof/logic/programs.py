"""Programs, Horn clauses, the fohc → Horn normal form and guarding ⌜P⌝."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Sequence

from ..core.errors import NotAFohcD, NotHg
from ..kernel.signature import Context, Signature, ctx_extend
from ..kernel.types import Type
from .classify import LogicId, atom_allowed, classify_atom, is_g_formula
from .formulas import (
    And, Atom, Forall, Formula, Imp, Later, Top,
    conjunction, conjuncts, shift_formula, well_formed,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class HornClause:
    """∀x̄. A₁ ∧ … ∧ Aₙ → A₀, possibly with n = 0.

    Body and head mention the variables as de Bruijn indices, the last
    variable being index 0.
    """

    name: str
    variables: tuple[tuple[str, Type], ...]
    body: tuple[Formula, ...]
    head: Formula

    @property
    def formula(self) -> Formula:
        phi = Imp(conjunction(list(self.body)), self.head) if self.body else self.head
        for hint, ty in reversed(self.variables):
            phi = Forall(ty, phi, hint)
        return phi

    @property
    def is_fact(self) -> bool:
        return not self.body


@dataclass(frozen=True)
class Clause:
    name: str
    formula: Formula


@dataclass(frozen=True)
class Program:
    signature: Signature
    clauses: tuple[Clause, ...] = ()
    defs: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        names = [c.name for c in self.clauses]
        dupes = {n for n in names if names.count(n) > 1}
        if dupes:
            raise ValueError(f"clause names must be unique: {sorted(dupes)}")

    def __len__(self) -> int:
        return len(self.clauses)

    def lookup(self, name: str) -> Formula:
        for c in self.clauses:
            if c.name == name:
                return c.formula
        raise KeyError(name)

    def with_clause(self, name: str, formula: Formula) -> "Program":
        return Program(self.signature, self.clauses + (Clause(name, formula),), self.defs)

    def fresh_clause_name(self, base: str) -> str:
        taken = {c.name for c in self.clauses}
        if base not in taken:
            return base
        i = 1
        while f"{base}_{i}" in taken:
            i += 1
        return f"{base}_{i}"

    def validate(self) -> None:
        for c in self.clauses:
            well_formed(self.signature, (), c.formula)

    def horn_clauses(self) -> list[HornClause]:
        """View every clause as an Hg-formula; raises NotHg otherwise."""
        return [as_horn(self.signature, c.name, c.formula) for c in self.clauses]


# ── Horn view ─────────────────────────────────────────────────────

def as_horn(sig: Signature, name: str, phi: Formula, guarded: bool = True) -> HornClause:
    """Read ``phi`` as an H-formula (or Hg-formula when ``guarded``)."""
    logic = LogicId.COFOHC_FIX if guarded else LogicId.COFOHC
    variables: list[tuple[str, Type]] = []
    ctx: Context = ()
    while isinstance(phi, Forall):
        variables.append((phi.hint, phi.ty))
        ctx = ctx_extend(ctx, phi.hint, phi.ty)
        phi = phi.body
    if isinstance(phi, Imp):
        body, head = tuple(conjuncts(phi.left)), phi.right
    else:
        body, head = (), phi
    for a in body + (head,):
        if not isinstance(a, (Atom, Top)) or not atom_allowed(logic, classify_atom(sig, ctx, a)):
            kind = "Hg" if guarded else "H"
            raise NotHg(f"clause {name} is not an {kind}-formula: {a}")
    return HornClause(name, tuple(variables), body, head)


def is_hg(sig: Signature, phi: Formula) -> bool:
    try:
        as_horn(sig, "_", phi)
    except NotHg:
        return False
    return True


# ── Normalisation ─────────────────────────────────────────────────

def normalize_to_horn(
    sig: Signature,
    ds: Sequence[Formula],
    names: Sequence[str] | None = None,
    logic: LogicId = LogicId.COFOHC,
) -> list[HornClause]:
    """Turn fohc D-formulae into intuitionistically equivalent Horn clauses.

    Quantifiers move outwards, conjunctions split into separate clauses and
    nested implications are uncurried. Goals in bodies are kept as they are.
    ``logic`` may be ``cofohc_fix`` to admit guarded atoms.
    """
    if logic.hereditary or not logic.first_order:
        raise ValueError(f"normalisation is defined for fohc logics, not {logic}")
    names = list(names) if names is not None else [f"h{i}" for i in range(len(ds))]
    out: list[HornClause] = []
    for name, d in zip(names, ds):
        parts = _normalize(sig, logic, d, (), (), ())
        if len(parts) == 1:
            variables, body, head = parts[0]
            out.append(HornClause(name, variables, body, head))
        else:
            for j, (variables, body, head) in enumerate(parts, 1):
                out.append(HornClause(f"{name}_{j}", variables, body, head))
    logger.debug(f"normalised {len(ds)} formulae into {len(out)} clauses")
    return out


def _normalize(sig, logic, d, variables, ctx, goals):
    if isinstance(d, (Atom, Top)):
        if not atom_allowed(logic, classify_atom(sig, ctx, d)):
            raise NotAFohcD(f"atom {d} is not allowed in {logic}")
        body = tuple(a for g in goals for a in conjuncts(g))
        return [(variables, body, d)]
    if isinstance(d, Imp):
        if not is_g_formula(logic, d.left, sig, ctx):
            raise NotAFohcD(f"{d.left} is not a goal of {logic}")
        return _normalize(sig, logic, d.right, variables, ctx, goals + (d.left,))
    if isinstance(d, And):
        return (_normalize(sig, logic, d.left, variables, ctx, goals)
                + _normalize(sig, logic, d.right, variables, ctx, goals))
    if isinstance(d, Forall):
        shifted = tuple(shift_formula(g, 1) for g in goals)
        return _normalize(sig, logic, d.body, variables + ((d.hint, d.ty),),
                          ctx_extend(ctx, d.hint, d.ty), shifted)
    raise NotAFohcD(f"{d} is not a D-formula of {logic}")


# ── Guarding ──────────────────────────────────────────────────────

def guard_formula(sig: Signature, name: str, phi: Formula) -> Formula:
    """∀x̄. (A₁ ∧ … ∧ Aₙ) → ψ  ↦  ∀x̄. (▷A₁ ∧ … ∧ ▷Aₙ) → ψ."""
    as_horn(sig, name, phi)
    binders = []
    while isinstance(phi, Forall):
        binders.append(phi)
        phi = phi.body
    if isinstance(phi, Imp):
        phi = Imp(_later_leaves(phi.left), phi.right)
    for b in reversed(binders):
        phi = Forall(b.ty, phi, b.hint)
    return phi


def _later_leaves(phi: Formula) -> Formula:
    if isinstance(phi, And):
        return And(_later_leaves(phi.left), _later_leaves(phi.right))
    return Later(phi)


def guard_program(p: Program) -> list[Formula]:
    """⌜P⌝, clause by clause and in program order. Raises NotHg."""
    return [guard_formula(p.signature, c.name, c.formula) for c in p.clauses]

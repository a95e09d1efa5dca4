"""Atom classes and the D/G grammars of the eight logics of the cube."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from ..core.errors import NotAnAtom
from ..kernel.guarded import is_guarded
from ..kernel.signature import Context, Signature, ctx_extend
from ..kernel.terms import has_fix
from ..kernel.types import IOTA, argument_types, order
from .formulas import And, Atom, Exists, Forall, Formula, Imp, Or, Top



@dataclass(frozen=True)
class AtomClass:
    first_order: bool
    guarded: bool
    simple: bool


class LogicId(str, enum.Enum):
    """The cube: fo/ho definite clauses × Horn/hereditary Harrop goals × fix."""

    COFOHC = "cofohc"
    COFOHH = "cofohh"
    COHOHC = "cohohc"
    COHOHH = "cohohh"
    COFOHC_FIX = "cofohc_fix"
    COFOHH_FIX = "cofohh_fix"
    COHOHC_FIX = "cohohc_fix"
    COHOHH_FIX = "cohohh_fix"

    @property
    def first_order(self) -> bool:
        """D₁ and first-order atoms (otherwise D_ω)."""
        return self.value.startswith("cofo")

    @property
    def hereditary(self) -> bool:
        """Goals may contain D → G and ∀G."""
        return self.value[4:6] == "hh"

    @property
    def fix(self) -> bool:
        """Atoms may be guarded rather than simple."""
        return self.value.endswith("_fix")

    def below(self, other: "LogicId") -> bool:
        """True iff ``other`` is reachable from ``self`` along the cube's arrows."""
        return ((self.first_order or not other.first_order)
                and (other.hereditary or not self.hereditary)
                and (other.fix or not self.fix))

    @classmethod
    def parse(cls, name: str) -> "LogicId":
        try:
            return cls(name.strip().lower())
        except ValueError:
            choices = ", ".join(m.value for m in cls)
            raise ValueError(f"unknown logic {name!r} (choose from {choices})") from None

    def __str__(self) -> str:
        return self.value


def classify_atom(sig: Signature, ctx: Context, a: Formula) -> AtomClass:
    if isinstance(a, Top):
        return AtomClass(True, True, True)
    if not isinstance(a, Atom):
        raise NotAnAtom(f"{a} is not an atom")
    first_order = (
        all(ty == IOTA for ty in argument_types(sig.pred_type(a.pred)))
        and all(order(ty) == 0 for _, ty in ctx)
    )
    return AtomClass(
        first_order=first_order,
        guarded=all(is_guarded(sig, ctx, t) for t in a.args),
        simple=not any(has_fix(t) for t in a.args),
    )


def atom_allowed(logic: LogicId, cls: AtomClass) -> bool:
    if logic.first_order and not cls.first_order:
        return False
    return cls.guarded if logic.fix else cls.simple


def is_d_formula(logic: LogicId, phi: Formula, sig: Signature, ctx: Context = ()) -> bool:
    if isinstance(phi, (Atom, Top)):
        return atom_allowed(logic, classify_atom(sig, ctx, phi))
    if isinstance(phi, Imp):
        return is_g_formula(logic, phi.left, sig, ctx) and is_d_formula(logic, phi.right, sig, ctx)
    if isinstance(phi, And):
        return is_d_formula(logic, phi.left, sig, ctx) and is_d_formula(logic, phi.right, sig, ctx)
    if isinstance(phi, Forall):
        return is_d_formula(logic, phi.body, sig, ctx_extend(ctx, phi.hint, phi.ty))
    return False


def is_g_formula(logic: LogicId, phi: Formula, sig: Signature, ctx: Context = ()) -> bool:
    if isinstance(phi, (Atom, Top)):
        return atom_allowed(logic, classify_atom(sig, ctx, phi))
    if isinstance(phi, (And, Or)):
        return is_g_formula(logic, phi.left, sig, ctx) and is_g_formula(logic, phi.right, sig, ctx)
    if isinstance(phi, Exists):
        return is_g_formula(logic, phi.body, sig, ctx_extend(ctx, phi.hint, phi.ty))
    if isinstance(phi, Imp):
        return (logic.hereditary
                and is_d_formula(logic, phi.left, sig, ctx)
                and is_g_formula(logic, phi.right, sig, ctx))
    if isinstance(phi, Forall):
        return logic.hereditary and is_g_formula(
            logic, phi.body, sig, ctx_extend(ctx, phi.hint, phi.ty))
    return False


def is_coinduction_goal(logic: LogicId, phi: Formula, sig: Signature, ctx: Context = ()) -> bool:
    return is_d_formula(logic, phi, sig, ctx) and is_g_formula(logic, phi, sig, ctx)


def logics_where(test, phi: Formula, sig: Signature) -> list[LogicId]:
    """All logics of the cube in which ``test(logic, phi, sig)`` holds."""
    return [logic for logic in LogicId if test(logic, phi, sig)]

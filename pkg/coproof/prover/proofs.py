"""Coinductive uniform proof trees.

A tree node carries its rule, its conclusion and the rule's payload
(selected clause, witness, fresh eigenvariable or branch). Trees are
immutable values produced by search and consumed by the checker, the
iFOL▷ translation and invariant extraction.
"""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, replace
from typing import Iterator, Optional, Union

from ..kernel.terms import Term
from ..kernel.types import Type
from ..logic.formulas import Formula


class SequentKind(str, enum.Enum):
    CO = "co"            # Σ; P ⊢co φ
    GUARDED = "guarded"  # Σ; P; Δ ⊢ ⟨φ⟩
    GOAL = "goal"        # Σ; P; Δ ⊢ G
    FOCUS = "focus"      # Σ; P; Δ --D→ A


class Rule(str, enum.Enum):
    COFIX = "Cofix"
    DECG = "DecG"
    ALL_RG = "AllRg"
    AND_RG = "AndRg"
    IMP_RG = "ImpRg"
    DEC = "Dec"
    INIT = "Init"
    TOP_R = "TopR"
    IMP_L = "ImpL"
    IMP_R = "ImpR"
    AND_L = "AndL"
    AND_R = "AndR"
    ALL_L = "AllL"
    ALL_R = "AllR"
    EX_R = "ExR"
    OR_R = "OrR"


@dataclass(frozen=True)
class CupSequent:
    """One of the four sequent forms.

    ``eigens`` extends the signature, ``program_extra`` holds the clauses
    added to P by →R and ``hyps`` is Δ. For focused sequents ``focus`` is the
    clause D and ``formula`` the atom A.
    """

    kind: SequentKind
    formula: Formula
    eigens: tuple[tuple[str, Type], ...] = ()
    program_extra: tuple[Formula, ...] = ()
    hyps: tuple[Formula, ...] = ()
    focus: Optional[Formula] = None

    def goal(self, formula: Formula, **changes) -> "CupSequent":
        return replace(self, kind=SequentKind.GOAL, formula=formula, focus=None, **changes)

    def guarded(self, formula: Formula, **changes) -> "CupSequent":
        return replace(self, kind=SequentKind.GUARDED, formula=formula, focus=None, **changes)

    def focused(self, focus: Formula) -> "CupSequent":
        return replace(self, kind=SequentKind.FOCUS, focus=focus)

    @property
    def eigen_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.eigens)


# ── Payloads ──────────────────────────────────────────────────────

class Origin(str, enum.Enum):
    PROGRAM = "program"        # a named clause of P
    ASSUMPTION = "assumption"  # a clause added to P by →R
    HYPOTHESIS = "hypothesis"  # an element of Δ


@dataclass(frozen=True)
class Selection:
    origin: Origin
    name: Optional[str] = None
    index: Optional[int] = None


@dataclass(frozen=True)
class Witness:
    term: Term


@dataclass(frozen=True)
class Eigen:
    name: str


@dataclass(frozen=True)
class Side:
    index: int  # 1 or 2


Payload = Union[Selection, Witness, Eigen, Side, None]


@dataclass(frozen=True)
class CupProof:
    rule: Rule
    sequent: CupSequent
    payload: Payload = None
    children: tuple["CupProof", ...] = ()

    @property
    def goal(self) -> Formula:
        return self.sequent.formula

    @property
    def is_coinductive(self) -> bool:
        return self.rule is Rule.COFIX


def iter_nodes(proof: CupProof, path: tuple[int, ...] = ()) -> Iterator[tuple[tuple[int, ...], CupProof]]:
    """Pre-order walk yielding (path, node)."""
    stack = [(path, proof)]
    while stack:
        p, node = stack.pop()
        yield p, node
        for i in reversed(range(len(node.children))):
            stack.append((p + (i,), node.children[i]))


def rule_counts(proof: CupProof) -> Counter:
    return Counter(node.rule for _, node in iter_nodes(proof))


def proof_size(proof: CupProof) -> int:
    return sum(1 for _ in iter_nodes(proof))

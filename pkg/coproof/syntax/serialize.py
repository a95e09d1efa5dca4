"""JSON exchange format for CUP and iFOL▷ proofs.

    {"format": "cup-proof" | "ifol-proof", "version": 1, "root": <node>}

A node is ``{"rule", "conclusion", "payload", "children"}``. Formulae and
terms are stored as surface text and read back against the signature
extended by the node's eigenvariables (CUP) or context (iFOL▷).
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any, Union

from ..core.errors import CoproofError, ProofFormatError
from ..ifol.proofs import Fresh, IFolProof, IFolSequent, Instance, IRule, Pick
from ..kernel.signature import Signature
from ..kernel.types import Type
from ..prover.proofs import (
    CupProof, CupSequent, Eigen, Origin, Rule, Selection, SequentKind, Side, Witness,
)
from .parser import parse_type, _parse, _Resolver
from .printer import show_formula, show_term, show_type

logger = logging.getLogger(__name__)

VERSION = 1
CUP_FORMAT = "cup-proof"
IFOL_FORMAT = "ifol-proof"

Proof = Union[CupProof, IFolProof]


# ── Writing ───────────────────────────────────────────────────────

def _context(pairs) -> list[list[str]]:
    return [[name, show_type(ty)] for name, ty in pairs]


def _cup_node(n: CupProof) -> dict[str, Any]:
    s = n.sequent
    conclusion = {
        "kind": s.kind.value,
        "formula": show_formula(s.formula),
        "eigens": _context(s.eigens),
        "program_extra": [show_formula(d) for d in s.program_extra],
        "hyps": [show_formula(h) for h in s.hyps],
        "focus": show_formula(s.focus) if s.focus is not None else None,
    }
    pl = n.payload
    if isinstance(pl, Selection):
        payload = {"selection": {"origin": pl.origin.value, "name": pl.name, "index": pl.index}}
    elif isinstance(pl, Witness):
        payload = {"witness": show_term(pl.term)}
    elif isinstance(pl, Eigen):
        payload = {"eigen": pl.name}
    elif isinstance(pl, Side):
        payload = {"side": pl.index}
    else:
        payload = None
    return {"rule": n.rule.value, "conclusion": conclusion, "payload": payload,
            "children": [_cup_node(c) for c in n.children]}


def _ifol_node(n: IFolProof) -> dict[str, Any]:
    s = n.sequent
    conclusion = {
        "context": _context(s.context),
        "assumptions": [show_formula(a) for a in s.assumptions],
        "goal": show_formula(s.goal),
    }
    pl = n.payload
    if isinstance(pl, Pick):
        payload = {"pick": pl.index}
    elif isinstance(pl, Instance):
        payload = {"instance": show_term(pl.term)}
    elif isinstance(pl, Fresh):
        payload = {"fresh": pl.name, "index": pl.index}
    else:
        payload = None
    return {"rule": n.rule.value, "conclusion": conclusion, "payload": payload,
            "children": [_ifol_node(c) for c in n.children]}


def proof_to_dict(proof: Proof) -> dict[str, Any]:
    if isinstance(proof, CupProof):
        return {"format": CUP_FORMAT, "version": VERSION, "root": _cup_node(proof)}
    return {"format": IFOL_FORMAT, "version": VERSION, "root": _ifol_node(proof)}


def dumps_proof(proof: Proof) -> str:
    return json.dumps(proof_to_dict(proof), ensure_ascii=False, indent=2)


def save_proof(proof: Proof, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps_proof(proof) + "\n", encoding="utf-8")
    logger.info(f"wrote proof to {path}")


# ── Reading ───────────────────────────────────────────────────────

class _Reader:
    """Parses node texts against ``sig`` extended per node; caches by text."""

    def __init__(self, sig: Signature, defs=None):
        self.sig = sig
        self.defs = defs or {}
        self.cache: dict[tuple, Any] = {}

    def extended(self, context) -> Signature:
        return self.sig.extend(context)

    def formula(self, text: str, context):
        key = ("formula", text, context)
        if key not in self.cache:
            self.cache[key] = _Resolver(self.extended(context), self.defs).formula(_parse(text, "formula"))
        return self.cache[key]

    def term(self, text: str, context):
        key = ("term", text, context)
        if key not in self.cache:
            self.cache[key] = _Resolver(self.extended(context), self.defs).term(_parse(text, "term"))
        return self.cache[key]

    def context(self, pairs) -> tuple[tuple[str, Type], ...]:
        return tuple((str(name), parse_type(ty)) for name, ty in pairs)

    # ── CUP ──

    def cup(self, node: dict) -> CupProof:
        c = node["conclusion"]
        eigens = self.context(c.get("eigens", []))
        focus = c.get("focus")
        sequent = CupSequent(
            SequentKind(c["kind"]),
            self.formula(c["formula"], eigens),
            eigens,
            tuple(self.formula(d, eigens) for d in c.get("program_extra", [])),
            tuple(self.formula(h, eigens) for h in c.get("hyps", [])),
            self.formula(focus, eigens) if focus is not None else None,
        )
        pl = node.get("payload")
        payload = None
        if pl:
            if "selection" in pl:
                sel = pl["selection"]
                payload = Selection(Origin(sel["origin"]), sel.get("name"), sel.get("index"))
            elif "witness" in pl:
                payload = Witness(self.term(pl["witness"], eigens))
            elif "eigen" in pl:
                payload = Eigen(str(pl["eigen"]))
            elif "side" in pl:
                payload = Side(int(pl["side"]))
            else:
                raise ProofFormatError(f"unknown payload {sorted(pl)}")
        return CupProof(Rule(node["rule"]), sequent, payload,
                        tuple(self.cup(child) for child in node.get("children", [])))

    # ── iFOL▷ ──

    def ifol(self, node: dict) -> IFolProof:
        c = node["conclusion"]
        context = self.context(c.get("context", []))
        sequent = IFolSequent(
            context,
            tuple(self.formula(a, context) for a in c.get("assumptions", [])),
            self.formula(c["goal"], context),
        )
        pl = node.get("payload")
        payload = None
        if pl:
            if "pick" in pl:
                payload = Pick(int(pl["pick"]))
            elif "instance" in pl:
                payload = Instance(self.term(pl["instance"], context))
            elif "fresh" in pl:
                index = pl.get("index")
                payload = Fresh(str(pl["fresh"]), None if index is None else int(index))
            else:
                raise ProofFormatError(f"unknown payload {sorted(pl)}")
        return IFolProof(IRule(node["rule"]), sequent, payload,
                         tuple(self.ifol(child) for child in node.get("children", [])))


def proof_from_dict(data: dict, sig: Signature, defs=None) -> Proof:
    """Raises ProofFormatError for anything that is not a well-formed proof file."""
    if not isinstance(data, dict):
        raise ProofFormatError("a proof file holds a JSON object")
    fmt = data.get("format")
    if data.get("version") != VERSION:
        raise ProofFormatError(f"unsupported version {data.get('version')!r}")
    reader = _Reader(sig, defs)
    try:
        if fmt == CUP_FORMAT:
            return reader.cup(data["root"])
        if fmt == IFOL_FORMAT:
            return reader.ifol(data["root"])
    except ProofFormatError:
        raise
    except CoproofError as e:
        raise ProofFormatError(f"{e.category}: {e}") from None
    except (KeyError, TypeError, ValueError, AttributeError) as e:
        raise ProofFormatError(f"malformed proof node: {e!r}") from None
    raise ProofFormatError(f"unknown format {fmt!r}")


def loads_proof(text: str, sig: Signature, defs=None) -> Proof:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProofFormatError(f"invalid JSON at {e.lineno}:{e.colno}: {e.msg}") from None
    return proof_from_dict(data, sig, defs)


def load_proof(path: Union[str, Path], sig: Signature, defs=None) -> Proof:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ProofFormatError(f"cannot read {path}: {e.strerror}") from None
    return loads_proof(text, sig, defs)

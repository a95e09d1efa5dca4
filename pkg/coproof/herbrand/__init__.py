"""Desk-scale coinductive Herbrand semantics: coterms, truncated models and invariants."""

from ..kernel.rational import rational_equal
from .coterms import (
    IDENTITY, Coterm, KleisliSubst, LazyCoterm, Observation, RationalCoterm, SubstCoterm,
    VarCoterm, compose, coterm_equal, interpret_guarded, substitute,
)
from .invariant import (
    Counterexample, Invariant, check_invariant, enumerate_words, extract_invariant,
    invariant_atoms,
)
from .model import (
    ClausePattern, clause_patterns, conservative_extension, gfp_truncated, list_model,
    model_member, phi_step, supported, truncate_atom,
)
from .truncation import (
    BOTTOM, BOTTOM_SYMBOL, Interpretation, Tree, TruncatedAtom, atom_compatible,
    atom_refines, compatible, herbrand_base, meet, observe, refines, universe,
)

__all__ = [
    "rational_equal",
    "IDENTITY", "Coterm", "KleisliSubst", "LazyCoterm", "Observation", "RationalCoterm",
    "SubstCoterm", "VarCoterm", "compose", "coterm_equal", "interpret_guarded", "substitute",
    "Counterexample", "Invariant", "check_invariant", "enumerate_words", "extract_invariant",
    "invariant_atoms",
    "ClausePattern", "clause_patterns", "conservative_extension", "gfp_truncated",
    "list_model", "model_member", "phi_step", "supported", "truncate_atom",
    "BOTTOM", "BOTTOM_SYMBOL", "Interpretation", "Tree", "TruncatedAtom", "atom_compatible",
    "atom_refines", "compatible", "herbrand_base", "meet", "observe", "refines", "universe",
]

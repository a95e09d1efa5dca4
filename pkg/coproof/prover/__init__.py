"""coproof.prover — coinductive uniform proofs: search, checking, CoLP."""

from .proofs import (  # noqa: F401
    CupProof, CupSequent, Eigen, Origin, Rule, Selection, SequentKind, Side, Witness,
    iter_nodes, proof_size, rule_counts,
)
from .unify import EMPTY, Substitution, Unifier, UnifyMode, unify  # noqa: F401
from .checker import check_proof, is_valid_proof, root_sequent  # noqa: F401
from .search import Exhausted, SearchConfig, prove_with_lemma, search, with_lemmas  # noqa: F401
from .colp import ColpAnswer, ColpFailure, colp_solve  # noqa: F401

"""iFOL▷: proof trees, checker, derived rules and the translation from CUP."""

from .checker import check_ifol_proof, formulas_convertible, is_valid_ifol_proof
from .derived import expand_all, expand_derived, weaken
from .proofs import (
    Fresh, IFolProof, IFolSequent, IRule, Instance, Pick, irule_counts, iter_inodes,
    main_branch, push_later,
)
from .translate import check_translation, translate, translation_root

__all__ = [
    "check_ifol_proof", "formulas_convertible", "is_valid_ifol_proof",
    "expand_all", "expand_derived", "weaken",
    "Fresh", "IFolProof", "IFolSequent", "IRule", "Instance", "Pick",
    "irule_counts", "iter_inodes", "main_branch", "push_later",
    "check_translation", "translate", "translation_root",
]

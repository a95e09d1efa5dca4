"""coproof.logic — formulae, the cube of logics, programs and guarding."""

from .formulas import (  # noqa: F401
    TOP, And, Atom, Exists, Forall, Formula, Imp, Later, Or, Top,
    abstract_formula, atoms, conjunction, conjuncts, formula_constants,
    formula_metas, has_later, instantiate_formula, is_atom, map_terms,
    replace_const_formula, shift_formula, terms_of, well_formed,
)
from .classify import (  # noqa: F401
    AtomClass, LogicId, atom_allowed, classify_atom,
    is_coinduction_goal, is_d_formula, is_g_formula, logics_where,
)
from .programs import (  # noqa: F401
    Clause, HornClause, Program,
    as_horn, guard_formula, guard_program, is_hg, normalize_to_horn,
)

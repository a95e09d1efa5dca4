"""coproof.syntax — surface syntax: parsing, printing and proof files."""

from .parser import (  # noqa: F401
    SourceFile, load_source, parse_formula, parse_program, parse_query, parse_term, parse_type,
)
from .printer import (  # noqa: F401
    show_cup_proof, show_formula, show_ifol_proof, show_program, show_term, show_type,
)
from .serialize import (  # noqa: F401
    dumps_proof, load_proof, loads_proof, proof_from_dict, proof_to_dict, save_proof,
)

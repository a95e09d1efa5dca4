"""coproof.kernel — simply typed λ-terms with guarded fixed points."""

from .types import (  # noqa: F401
    IOTA, OMICRON, Arrow, Iota, Omicron, Type,
    arity, arrow, argument_types, is_prop, is_simple, order, result_type,
)
from .terms import (  # noqa: F401
    App, Const, Fix, Lam, Meta, Term, Var,
    abstract, constants, free_indices, has_fix, instantiate, is_closed,
    metas, mk_app, replace_const, shift, spine, subst, subterms,
)
from .signature import Context, Signature, ctx_extend, ctx_name, ctx_type  # noqa: F401
from .typecheck import has_type, infer_type  # noqa: F401
from .reduction import Conv, HeadNormalForm, convertible, head_normal_form, whnf  # noqa: F401
from .guarded import is_first_order_guarded, is_guarded, is_guarded_base  # noqa: F401
from .rational import Node, TermGraph, canonical, minimize, rational_equal, to_graph, to_term  # noqa: F401

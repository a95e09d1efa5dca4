"""Syntax-directed typing Γ ⊢ M : τ."""

from __future__ import annotations

from ..core.errors import ArrowMismatch, KernelError
from .signature import Context, Signature, ctx_extend, ctx_type
from .terms import App, Const, Fix, Lam, Meta, Term, Var
from .types import Arrow, Type


def infer_type(sig: Signature, ctx: Context, m: Term) -> Type:
    """Return the unique type of ``m``.

    Raises UnboundVariable, UnknownConstant or ArrowMismatch.
    """
    if isinstance(m, Var):
        return ctx_type(ctx, m.index)
    if isinstance(m, Const):
        return sig.term_type(m.name)
    if isinstance(m, Meta):
        return m.ty
    if isinstance(m, App):
        fn_ty = infer_type(sig, ctx, m.fn)
        if not isinstance(fn_ty, Arrow):
            raise ArrowMismatch(f"cannot apply a term of type {fn_ty}")
        arg_ty = infer_type(sig, ctx, m.arg)
        if arg_ty != fn_ty.dom:
            raise ArrowMismatch(f"argument of type {arg_ty} where {fn_ty.dom} was expected")
        return fn_ty.cod
    if isinstance(m, Lam):
        return Arrow(m.ty, infer_type(sig, ctx_extend(ctx, m.hint, m.ty), m.body))
    if isinstance(m, Fix):
        body_ty = infer_type(sig, ctx_extend(ctx, m.hint, m.ty), m.body)
        if body_ty != m.ty:
            raise ArrowMismatch(f"fixed point declared {m.ty} but body has type {body_ty}")
        return m.ty
    raise TypeError(f"not a term: {m!r}")


def has_type(sig: Signature, ctx: Context, m: Term, ty: Type) -> bool:
    try:
        return infer_type(sig, ctx, m) == ty
    except KernelError:
        return False

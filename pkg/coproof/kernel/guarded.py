"""Guarded base terms, guarded terms and first-order guarded terms.

Guarded base terms are the fixed points whose unfolding is productive:
the body of every ``fix x. λȳ. …`` starts with a signature symbol.
Guarded terms close guarded base terms under the λ-calculus operations.
"""

from __future__ import annotations

from ..core.errors import KernelError
from .signature import Context, Signature, ctx_extend, ctx_type
from .terms import App, Const, Fix, Lam, Meta, Term, Var, has_fix, is_closed, spine
from .typecheck import infer_type
from .types import IOTA, Arrow, Type, arity, order


def is_guarded_base(sig: Signature, ctx: Context, m: Term, ty: Type) -> bool:
    if isinstance(m, Var):
        try:
            var_ty = ctx_type(ctx, m.index)
        except KernelError:
            return False
        return var_ty == ty and order(var_ty) <= 1
    if isinstance(m, Const):
        return sig.terms.get(m.name) == ty
    if isinstance(m, Meta):
        return m.ty == ty
    if isinstance(m, App):
        try:
            arg_ty = infer_type(sig, ctx, m.arg)
        except KernelError:
            return False
        return (is_guarded_base(sig, ctx, m.fn, Arrow(arg_ty, ty))
                and is_guarded_base(sig, ctx, m.arg, arg_ty))
    if isinstance(m, Fix):
        return _is_guarded_fix(sig, ctx, m, ty)
    return False


def _is_guarded_fix(sig: Signature, ctx: Context, m: Fix, ty: Type) -> bool:
    if m.ty != ty or order(ty) > 1:
        return False
    inner_ctx = ctx_extend(ctx, m.hint, ty)
    body = m.body
    for _ in range(arity(ty)):
        if not isinstance(body, Lam) or body.ty != IOTA:
            return False
        inner_ctx = ctx_extend(inner_ctx, body.hint, IOTA)
        body = body.body
    head, args = spine(body)
    if not isinstance(head, Const) or head.name not in sig.terms:
        return False
    head_ty = sig.terms[head.name]
    if order(head_ty) > 1 or len(args) != arity(head_ty):
        return False
    return all(is_guarded_base(sig, inner_ctx, a, IOTA) for a in args)


def is_guarded(sig: Signature, ctx: Context, m: Term) -> bool:
    """True iff every fix-subterm of ``m`` sits in a closed guarded base term."""
    if not has_fix(m):
        return True
    if is_closed(m) and _is_closed_guarded_base(sig, m):
        return True
    if isinstance(m, App):
        return is_guarded(sig, ctx, m.fn) and is_guarded(sig, ctx, m.arg)
    if isinstance(m, Lam):
        return is_guarded(sig, ctx_extend(ctx, m.hint, m.ty), m.body)
    return False


def _is_closed_guarded_base(sig: Signature, m: Term) -> bool:
    try:
        ty = infer_type(sig, (), m)
    except KernelError:
        return False
    return is_guarded_base(sig, (), m, ty)


def is_first_order_guarded(sig: Signature, ctx: Context, m: Term) -> bool:
    if any(order(ty) != 0 for _, ty in ctx):
        return False
    try:
        if infer_type(sig, ctx, m) != IOTA:
            return False
    except KernelError:
        return False
    return is_guarded(sig, ctx, m)

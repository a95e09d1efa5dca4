"""Weak head reduction, conversion and head normal forms.

Reduction is β plus fixed-point unfolding ``fix x. M ⇒ M[fix x. M / x]``.
Conversion is semi-decided: heads are compared after weak head reduction
and arguments are compared breadth-first, assuming every pair already
visited to be equal so that regular unfoldings close.
"""

from __future__ import annotations

import enum
import logging
from collections import deque
from dataclasses import dataclass

from ..core import config
from ..core.errors import FuelExhausted, NotHeadNormal
from .terms import Const, Fix, Lam, Meta, Term, Var, instantiate, mk_app, spine

logger = logging.getLogger(__name__)


class Conv(enum.Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Fuel:
    """Head steps shared across one conversion query."""

    def __init__(self, fuel: int):
        self.initial = fuel
        self.left = fuel

    def step(self) -> None:
        if self.left <= 0:
            raise FuelExhausted(self.initial)
        self.left -= 1


def whnf_with(m: Term, fuel: Fuel) -> Term:
    while True:
        head, args = spine(m)
        if isinstance(head, Lam) and args:
            fuel.step()
            m = mk_app(instantiate(head.body, args[0]), *args[1:])
        elif isinstance(head, Fix):
            fuel.step()
            m = mk_app(instantiate(head.body, head), *args)
        else:
            return m


def whnf(m: Term, fuel: int | None = None) -> Term:
    """Reduce head redexes until none is left.

    Raises FuelExhausted after ``fuel`` head steps.
    """
    return whnf_with(m, Fuel(config.DEFAULT_FUEL if fuel is None else fuel))


def convertible(m: Term, n: Term, fuel: int | None = None) -> Conv:
    budget = Fuel(config.DEFAULT_FUEL if fuel is None else fuel)
    seen: set[tuple[Term, Term]] = set()
    queue = deque([(m, n)])
    verdict = Conv.YES
    try:
        while queue:
            a, b = queue.popleft()
            if a == b or (a, b) in seen:
                continue
            seen.add((a, b))
            a, b = whnf_with(a, budget), whnf_with(b, budget)
            if a == b:
                continue
            if isinstance(a, Lam) and isinstance(b, Lam):
                queue.append((a.body, b.body))
                continue
            if isinstance(a, Lam) or isinstance(b, Lam):
                verdict = Conv.UNKNOWN
                continue
            ha, aa = spine(a)
            hb, ab = spine(b)
            if ha != hb:
                if isinstance(ha, Meta) or isinstance(hb, Meta):
                    verdict = Conv.UNKNOWN
                    continue
                return Conv.NO
            if len(aa) != len(ab):
                return Conv.NO
            queue.extend(zip(aa, ab))
    except FuelExhausted:
        logger.debug(f"conversion undecided after {budget.initial} steps")
        return Conv.UNKNOWN
    return verdict


@dataclass(frozen=True)
class HeadNormalForm:
    head: Term  # Const, Var or Meta
    args: tuple[Term, ...]


def head_normal_form(m: Term, fuel: int | None = None) -> HeadNormalForm:
    """``f N̄`` or a bare variable, per the guarded computation lemma."""
    head, args = spine(whnf(m, fuel))
    if isinstance(head, Lam):
        raise NotHeadNormal("head normal form is an abstraction")
    if isinstance(head, Var) and args:
        raise NotHeadNormal("variable applied to arguments")
    if not isinstance(head, (Const, Var, Meta)):
        raise NotHeadNormal(f"unexpected head {head!r}")
    return HeadNormalForm(head, tuple(args))

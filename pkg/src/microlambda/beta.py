"""Ordinary β-reduction: single steps, normal order, full development, spine redexes."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .terms import (
    App,
    Edge,
    Lam,
    Path,
    PathError,
    Term,
    _plug,
    is_redex,
    subterm_at,
    substitute,
)

DEFAULT_BETA_FUEL = 1_000


class Status(str, Enum):
    NORMAL_FORM = "normal-form"
    FUEL_EXHAUSTED = "fuel-exhausted"


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class NormalizeOutcome:
    status: Status
    result: Term
    steps_used: int


class NotARedex(PathError):
    pass


def contract_beta(redex: Term) -> Term:
    if not is_redex(redex):
        raise NotARedex("subterm is not a β-redex")
    return substitute(redex.fun.body, redex.arg)


def beta_step(term: Term, path: Path) -> Term:
    path = tuple(path)
    return _plug(term, path, contract_beta(subterm_at(term, path)))


def leftmost_outermost_step(term: Term) -> Optional[tuple[Path, Term]]:
    """Contract the leftmost-outermost redex; None on a normal form."""
    if term.normal:
        return None
    if is_redex(term):
        return (), substitute(term.fun.body, term.arg)
    if isinstance(term, Lam):
        found = leftmost_outermost_step(term.body)
        if found:
            return (Edge.BODY,) + found[0], Lam(found[1])
    elif isinstance(term, App):
        found = leftmost_outermost_step(term.fun)
        if found:
            return (Edge.FUN,) + found[0], App(found[1], term.arg)
        found = leftmost_outermost_step(term.arg)
        if found:
            return (Edge.ARG,) + found[0], App(term.fun, found[1])
    return None


def normal_order_normalize(term: Term, fuel: int = DEFAULT_BETA_FUEL) -> NormalizeOutcome:
    steps = 0
    while True:
        found = leftmost_outermost_step(term)
        if found is None:
            return NormalizeOutcome(Status.NORMAL_FORM, term, steps)
        if steps >= fuel:
            return NormalizeOutcome(Status.FUEL_EXHAUSTED, term, steps)
        term = found[1]
        steps += 1


def full_development(term: Term) -> Term:
    """Contract every redex present in ``term`` (its complete development)."""
    if term.normal:
        return term
    if isinstance(term, Lam):
        return Lam(full_development(term.body))
    if isinstance(term, App):
        if isinstance(term.fun, Lam):
            return substitute(full_development(term.fun.body), full_development(term.arg))
        return App(full_development(term.fun), full_development(term.arg))
    return term


def spine_redexes(term: Term) -> list[Path]:
    """Redexes on the spine (Body under Lam, Fun under App), outermost first."""
    out = []
    path: Path = ()
    while True:
        if isinstance(term, Lam):
            term, path = term.body, path + (Edge.BODY,)
        elif isinstance(term, App):
            if isinstance(term.fun, Lam):
                out.append(path)
            term, path = term.fun, path + (Edge.FUN,)
        else:
            return out


def find_spine_step(m: Term, n: Term) -> Optional[Path]:
    for path in spine_redexes(m):
        if beta_step(m, path) == n:
            return path
    return None


def beta_convertible(a: Term, b: Term, fuel: int = DEFAULT_BETA_FUEL) -> Verdict:
    na = normal_order_normalize(a, fuel)
    nb = normal_order_normalize(b, fuel)
    if na.status is Status.NORMAL_FORM and nb.status is Status.NORMAL_FORM:
        return Verdict.YES if na.result == nb.result else Verdict.NO
    return Verdict.UNKNOWN


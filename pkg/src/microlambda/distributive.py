"""Distributive (micro-step) reduction and the strategies that drive it.

The four micro rules, with ``x`` bound by the redex's abstraction:

    i:  (λx. x) M        ->  M
    c:  (λx. y) M        ->  y
    l:  (λx. λy. M) N    ->  λy. (λx. M) N
    a:  (λx. M N) P      ->  (λx. M) P ((λx. N) P)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, Optional

from .beta import (
    DEFAULT_BETA_FUEL,
    NotARedex,
    Status,
    full_development,
    leftmost_outermost_step,
    spine_redexes,
)
from .terms import (
    App,
    BoundVar,
    Edge,
    FreeVar,
    Lam,
    Path,
    Term,
    _plug,
    is_redex,
    iter_redex_positions,
    shift,
    subterm_at,
    swap_top2,
)

DEFAULT_DIST_FUEL = 10_000

INNER_SPINE = "inner-spine"
OUTER_SPINE = "outer-spine"
LEFTMOST_OUTERMOST_DIST = "leftmost-outermost-dist"
NORMAL_ORDER_BETA = "normal-order-beta"
GROSS_KNUTH = "gross-knuth"

STRATEGIES = (INNER_SPINE, OUTER_SPINE, LEFTMOST_OUTERMOST_DIST, NORMAL_ORDER_BETA, GROSS_KNUTH)
DISTRIBUTIVE_STRATEGIES = (INNER_SPINE, OUTER_SPINE, LEFTMOST_OUTERMOST_DIST)


class Rule(str, Enum):
    """Step labels as they appear in traces. I, C, L, A are the distributive rules."""

    I = "i"  # noqa: E741
    C = "c"
    L = "l"
    A = "a"
    BETA = "beta"
    DEV = "dev"


RuleTag = Rule


class UnknownStrategy(ValueError):
    pass


def classify_redex(redex: Term) -> Rule:
    if not is_redex(redex):
        raise NotARedex("subterm is not a β-redex")
    body = redex.fun.body
    if isinstance(body, BoundVar):
        return Rule.I if body.index == 0 else Rule.C
    if isinstance(body, FreeVar):
        return Rule.C
    if isinstance(body, Lam):
        return Rule.L
    return Rule.A


def contract_dist(redex: Term) -> tuple[Term, Rule]:
    rule = classify_redex(redex)
    body, arg = redex.fun.body, redex.arg
    if rule is Rule.I:
        return arg, rule
    if rule is Rule.C:
        return (BoundVar(body.index - 1) if isinstance(body, BoundVar) else body), rule
    if rule is Rule.L:
        return Lam(App(Lam(swap_top2(body.body)), shift(arg, 1))), rule
    return App(App(Lam(body.fun), arg), App(Lam(body.arg), arg)), rule


def dist_step(term: Term, path: Path) -> tuple[Term, Rule]:
    path = tuple(path)
    result, rule = contract_dist(subterm_at(term, path))
    return _plug(term, path, result), rule


def is_destructive(term: Term, path: Path) -> bool:
    """Whether contracting the redex at path distributes over a body that is itself a redex."""
    redex = subterm_at(term, tuple(path))
    if not is_redex(redex):
        raise NotARedex("subterm is not a β-redex")
    return is_redex(redex.fun.body)


def inner_spine_redex(term: Term) -> Optional[Path]:
    spine = spine_redexes(term)
    return spine[-1] if spine else None


def outer_spine_redex(term: Term) -> Optional[Path]:
    spine = spine_redexes(term)
    return spine[0] if spine else None


def _spine_then_arguments(term: Term, pick) -> Optional[Path]:
    """Pick among the spine redexes; at a head normal form, recurse into the
    arguments of the head variable, leftmost first."""
    spine = spine_redexes(term)
    if spine:
        return pick(spine)
    prefix: Path = ()
    while isinstance(term, Lam):
        term, prefix = term.body, prefix + (Edge.BODY,)
    apps = []
    while isinstance(term, App):
        apps.append((prefix, term.arg))
        term, prefix = term.fun, prefix + (Edge.FUN,)
    for app_path, arg in reversed(apps):
        if arg.normal:
            continue
        found = _spine_then_arguments(arg, pick)
        if found is not None:
            return app_path + (Edge.ARG,) + found
    return None


def inner_spine_position(term: Term) -> Optional[Path]:
    """Where the inner spine strategy acts: the innermost spine redex, or, at a
    head normal form, the inner spine position of the leftmost non-normal argument."""
    return _spine_then_arguments(term, lambda spine: spine[-1])


def outer_spine_position(term: Term) -> Optional[Path]:
    return _spine_then_arguments(term, lambda spine: spine[0])


def leftmost_outermost_redex(term: Term) -> Optional[Path]:
    return next(iter_redex_positions(term), None)


@dataclass(frozen=True)
class Step:
    path: Path
    rule: Rule
    destructive: bool
    result: Term


@dataclass
class Trace:
    initial: Term
    strategy: str
    steps: list[Step] = field(default_factory=list)
    status: Status = Status.FUEL_EXHAUSTED

    @property
    def final(self) -> Term:
        return self.steps[-1].result if self.steps else self.initial

    @property
    def destructive_steps(self) -> int:
        return sum(s.destructive for s in self.steps)

    def rules(self) -> list[str]:
        return [s.rule.value for s in self.steps]


_SELECTORS = {
    INNER_SPINE: inner_spine_position,
    OUTER_SPINE: outer_spine_position,
    LEFTMOST_OUTERMOST_DIST: leftmost_outermost_redex,
}


def default_fuel(strategy: str) -> int:
    return DEFAULT_DIST_FUEL if strategy in DISTRIBUTIVE_STRATEGIES else DEFAULT_BETA_FUEL


def _next_step(term: Term, strategy: str) -> Optional[Step]:
    if strategy in _SELECTORS:
        path = _SELECTORS[strategy](term)
        if path is None:
            return None
        redex = subterm_at(term, path)
        result, rule = contract_dist(redex)
        return Step(path, rule, is_redex(redex.fun.body), _plug(term, path, result))
    if strategy == NORMAL_ORDER_BETA:
        found = leftmost_outermost_step(term)
        return None if found is None else Step(found[0], Rule.BETA, False, found[1])
    # gross-knuth: one complete development per step
    if term.normal:
        return None
    return Step((), Rule.DEV, False, full_development(term))


def iter_steps(term: Term, strategy: str = INNER_SPINE) -> Iterator[Step]:
    """The (possibly infinite) sequence of steps ``strategy`` takes from ``term``."""
    if strategy not in STRATEGIES:
        raise UnknownStrategy(f"unknown strategy {strategy!r}; expected one of {', '.join(STRATEGIES)}")
    while True:
        step = _next_step(term, strategy)
        if step is None:
            return
        yield step
        term = step.result


def reduce(term: Term, strategy: str = INNER_SPINE, fuel: Optional[int] = None) -> Trace:
    """Run ``strategy`` from ``term`` until a normal form or until ``fuel`` steps are spent."""
    steps = iter_steps(term, strategy)
    if fuel is None:
        fuel = default_fuel(strategy)
    trace = Trace(term, strategy)
    for step in steps:
        if len(trace.steps) >= fuel:
            return trace
        trace.steps.append(step)
    trace.status = Status.NORMAL_FORM
    return trace

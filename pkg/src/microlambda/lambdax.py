"""The λx calculus of explicit substitutions (composition-free).

``Sub(body, subst)`` is the closure ``body[x := subst]``; it binds index 0 in
``body`` exactly like ``Lam`` does, and binds nothing in ``subst``.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterator, Optional, Union

from .terms import App, BoundVar, Edge, FreeVar, Lam, Path, PathError, Term, _Node, _set


class Sub(_Node):
    __slots__ = ("body", "subst", "reach", "size", "normal")
    _fields = ("body", "subst")

    def __init__(self, body: "XTerm", subst: "XTerm"):
        _set(self, "body", body)
        _set(self, "subst", subst)
        _set(self, "reach", max(body.reach - 1 if body.reach else 0, subst.reach))
        _set(self, "size", body.size + subst.size + 1)
        _set(self, "normal", False)  # a closure is never a pure normal form

    def __eq__(self, other):
        return self is other or (
            type(other) is Sub and self.body == other.body and self.subst == other.subst
        )

    def __hash__(self):
        return hash((Sub, self.body, self.subst))


XTerm = Union[BoundVar, FreeVar, Lam, App, Sub]
XPath = Path


class XRule(str, Enum):
    VAR_HIT = "x-var-hit"
    VAR_MISS = "x-var-miss"
    APP = "x-app"
    ABS = "x-abs"


class XFuelExhausted(RuntimeError):
    """x-reduction ran past its safety fuel. x-reduction terminates, so this is a bug."""


def x_size(t: XTerm) -> int:
    return t.size


def sub_count(t: XTerm) -> int:
    if isinstance(t, Sub):
        return 1 + sub_count(t.body) + sub_count(t.subst)
    if isinstance(t, App):
        return sub_count(t.fun) + sub_count(t.arg)
    if isinstance(t, Lam):
        return sub_count(t.body)
    return 0


def x_max_dangling(t: XTerm) -> int:
    return t.reach


def is_pure(t: XTerm) -> bool:
    return sub_count(t) == 0


def _rewrite_indices(t: XTerm, cutoff: int, leaf) -> XTerm:
    """Rebuild t, replacing each BoundVar with index >= its local cutoff by leaf(var, cutoff)."""
    memo: dict = {}

    def go(t: XTerm, c: int) -> XTerm:
        if t.reach <= c:
            return t
        key = (id(t), c)
        if key in memo:
            return memo[key]
        if isinstance(t, BoundVar):
            out = leaf(t, c)
        elif isinstance(t, App):
            out = App(go(t.fun, c), go(t.arg, c))
        elif isinstance(t, Lam):
            out = Lam(go(t.body, c + 1))
        else:
            out = Sub(go(t.body, c + 1), go(t.subst, c))
        memo[key] = out
        return out

    return go(t, cutoff)


def x_shift(t: XTerm, d: int, cutoff: int = 0) -> XTerm:
    if d == 0:
        return t
    return _rewrite_indices(t, cutoff, lambda v, c: BoundVar(v.index + d))


def _swap_leaf(v: BoundVar, c: int) -> BoundVar:
    if v.index == c:
        return BoundVar(c + 1)
    if v.index == c + 1:
        return BoundVar(c)
    return v


def x_swap_top2(t: XTerm, cutoff: int = 0) -> XTerm:
    return _rewrite_indices(t, cutoff, _swap_leaf)


def explicify(term: Term) -> XTerm:
    """Turn every β-redex (λ.B) A into the closure B[x := A]."""
    if term.normal:
        return term
    if isinstance(term, Lam):
        return Lam(explicify(term.body))
    if isinstance(term, App):
        if isinstance(term.fun, Lam):
            return Sub(explicify(term.fun.body), explicify(term.arg))
        return App(explicify(term.fun), explicify(term.arg))
    return term


def _classify(body: XTerm) -> Optional[XRule]:
    if isinstance(body, BoundVar):
        return XRule.VAR_HIT if body.index == 0 else XRule.VAR_MISS
    if isinstance(body, FreeVar):
        return XRule.VAR_MISS
    if isinstance(body, App):
        return XRule.APP
    if isinstance(body, Lam):
        return XRule.ABS
    return None  # Sub over Sub: blocked, there is no composition rule


def _walk(t: XTerm, path: Path) -> Iterator[tuple[Path, XRule]]:
    # post-order, left to right: leftmost-innermost first
    if t.normal:  # no closure below
        return
    if isinstance(t, App):
        yield from _walk(t.fun, path + (Edge.FUN,))
        yield from _walk(t.arg, path + (Edge.ARG,))
    elif isinstance(t, Lam):
        yield from _walk(t.body, path + (Edge.BODY,))
    elif isinstance(t, Sub):
        yield from _walk(t.body, path + (Edge.SUB_BODY,))
        yield from _walk(t.subst, path + (Edge.SUB_ARG,))
        rule = _classify(t.body)
        if rule is not None:
            yield path, rule


def x_redexes(xterm: XTerm) -> list[tuple[XPath, XRule]]:
    return list(_walk(xterm, ()))


def _child(t: XTerm, edge: Edge) -> XTerm:
    if isinstance(t, App) and edge in (Edge.FUN, Edge.ARG):
        return t.fun if edge is Edge.FUN else t.arg
    if isinstance(t, Lam) and edge is Edge.BODY:
        return t.body
    if isinstance(t, Sub) and edge in (Edge.SUB_BODY, Edge.SUB_ARG):
        return t.body if edge is Edge.SUB_BODY else t.subst
    raise PathError(f"edge {edge.value} not available at {type(t).__name__}")


def x_subterm_at(t: XTerm, path: XPath) -> XTerm:
    for edge in path:
        t = _child(t, edge)
    return t


def _x_plug(t: XTerm, path: XPath, replacement: XTerm) -> XTerm:
    if not path:
        return replacement
    edge, rest = path[0], path[1:]
    child = _x_plug(_child(t, edge), rest, replacement)
    if edge is Edge.FUN:
        return App(child, t.arg)
    if edge is Edge.ARG:
        return App(t.fun, child)
    if edge is Edge.BODY:
        return Lam(child)
    if edge is Edge.SUB_BODY:
        return Sub(child, t.subst)
    return Sub(t.body, child)


def contract(redex: Sub) -> tuple[XTerm, XRule]:
    body, n = redex.body, redex.subst
    rule = _classify(body)
    if rule is XRule.VAR_HIT:
        return n, rule
    if rule is XRule.VAR_MISS:
        if isinstance(body, BoundVar):
            return BoundVar(body.index - 1), rule
        return body, rule
    if rule is XRule.APP:
        return App(Sub(body.fun, n), Sub(body.arg, n)), rule
    if rule is XRule.ABS:
        return Lam(Sub(x_swap_top2(body.body), x_shift(n, 1))), rule
    raise ValueError("closure over a closure has no x-rule")


def x_step(xterm: XTerm, path: XPath) -> XTerm:
    return x_step_tagged(xterm, path)[0]


def x_step_tagged(xterm: XTerm, path: XPath) -> tuple[XTerm, XRule]:
    path = tuple(path)
    redex = x_subterm_at(xterm, path)
    if not isinstance(redex, Sub):
        raise ValueError(f"no closure at {[e.value for e in path]}")
    result, rule = contract(redex)
    return _x_plug(xterm, path, result), rule


def default_x_fuel(xterm: XTerm) -> int:
    return 4 * x_size(xterm) ** 2


def x_reduce(xterm: XTerm, fuel: Optional[int] = None) -> Iterator[tuple[XPath, XRule, XTerm]]:
    """Yield (path, rule, result) for each leftmost-innermost x-step until no closure is left."""
    if fuel is None:
        fuel = default_x_fuel(xterm)
    steps = 0
    while True:
        redexes = x_redexes(xterm)
        if not redexes:
            return
        if steps >= fuel:
            raise XFuelExhausted(f"x-reduction exceeded {fuel} steps")
        path, _ = redexes[0]
        xterm, rule = x_step_tagged(xterm, path)
        steps += 1
        yield path, rule, xterm


def x_normalize(xterm: XTerm, fuel: Optional[int] = None) -> tuple[Term, int]:
    """x-normal form (a pure term) and the number of x-steps taken.

    Raises XFuelExhausted if ``fuel`` steps (default ``4 * size**2``) do not suffice.
    """
    steps = 0
    for _, _, xterm in x_reduce(xterm, fuel):
        steps += 1
    return xterm, steps


def match_single_x_step(a: XTerm, b: XTerm) -> Optional[tuple[XPath, XRule]]:
    for path, rule in x_redexes(a):
        if x_step(a, path) == b:
            return path, rule
    return None

"""Locally-nameless λ-terms: de Bruijn indices for bound variables, names for free ones.

All nodes are frozen; structural equality on nodes *is* α-equivalence.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterator, Tuple, Union


class _Node:
    """Immutable node base. Every node caches three derived attributes:

    ``reach``  how many enclosing binders its indices need (0 for a closed-over term)
    ``size``   node count
    ``normal`` True iff it contains no β-redex

    ``reach`` lets shifting and substitution return untouched subterms as-is,
    which keeps shared subterms shared.
    """

    __slots__ = ()

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __delattr__(self, name):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return type(self), tuple(getattr(self, f) for f in self._fields)

    def __repr__(self) -> str:
        args = ", ".join(repr(getattr(self, f)) for f in self._fields)
        return f"{type(self).__name__}({args})"


_set = object.__setattr__


class BoundVar(_Node):
    __slots__ = ("index", "reach", "size", "normal")
    _fields = ("index",)

    def __init__(self, index: int):
        _set(self, "index", index)
        _set(self, "reach", index + 1)
        _set(self, "size", 1)
        _set(self, "normal", True)

    def __eq__(self, other):
        return type(other) is BoundVar and other.index == self.index

    def __hash__(self):
        return hash((BoundVar, self.index))


class FreeVar(_Node):
    __slots__ = ("name", "reach", "size", "normal")
    _fields = ("name",)

    def __init__(self, name: str):
        _set(self, "name", name)
        _set(self, "reach", 0)
        _set(self, "size", 1)
        _set(self, "normal", True)

    def __eq__(self, other):
        return type(other) is FreeVar and other.name == self.name

    def __hash__(self):
        return hash((FreeVar, self.name))


class Lam(_Node):
    __slots__ = ("body", "reach", "size", "normal")
    _fields = ("body",)

    def __init__(self, body: "Term"):
        _set(self, "body", body)
        _set(self, "reach", body.reach - 1 if body.reach else 0)
        _set(self, "size", body.size + 1)
        _set(self, "normal", body.normal)

    def __eq__(self, other):
        return self is other or (type(other) is Lam and self.body == other.body)

    def __hash__(self):
        return hash((Lam, self.body))


class App(_Node):
    __slots__ = ("fun", "arg", "reach", "size", "normal")
    _fields = ("fun", "arg")

    def __init__(self, fun: "Term", arg: "Term"):
        _set(self, "fun", fun)
        _set(self, "arg", arg)
        _set(self, "reach", max(fun.reach, arg.reach))
        _set(self, "size", fun.size + arg.size + 1)
        _set(self, "normal", fun.normal and arg.normal and type(fun) is not Lam)

    def __eq__(self, other):
        return self is other or (
            type(other) is App and self.fun == other.fun and self.arg == other.arg
        )

    def __hash__(self):
        return hash((App, self.fun, self.arg))


Term = Union[BoundVar, FreeVar, Lam, App]


class Edge(str, Enum):
    """Edge labels of a position; SubBody/SubArg only occur in λx terms."""

    FUN = "Fun"
    ARG = "Arg"
    BODY = "Body"
    SUB_BODY = "SubBody"
    SUB_ARG = "SubArg"

    def __repr__(self) -> str:
        return self.value


Fun, Arg, Body = Edge.FUN, Edge.ARG, Edge.BODY

Path = Tuple[Edge, ...]


class PathError(ValueError):
    pass


class IndexDisciplineError(ValueError):
    pass


def is_redex(term: Term) -> bool:
    return type(term) is App and type(term.fun) is Lam


def size(term: Term) -> int:
    """Node count (of the tree, not of the shared representation)."""
    return term.size


def free_names(term: Term) -> set[str]:
    out: set[str] = set()
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, FreeVar):
            out.add(t.name)
        elif isinstance(t, App):
            stack.append(t.fun)
            stack.append(t.arg)
        elif isinstance(t, Lam):
            stack.append(t.body)
    return out


def max_dangling(term: Term) -> int:
    """Number of binders the term needs from outside (0 for a closed-over term)."""
    return term.reach


def is_well_formed(term: Term, binders: int = 0) -> bool:
    return max_dangling(term) <= binders


def alpha_eq(a: Term, b: Term) -> bool:
    return a == b


# -- index arithmetic -------------------------------------------------------


# Rewrites memoize on (node identity, cutoff) so that shared subterms are
# rewritten once and stay shared in the result.


def shift(term: Term, d: int, cutoff: int = 0) -> Term:
    """Add d to every index >= cutoff."""
    if d == 0:
        return term
    memo: dict = {}

    def go(t: Term, c: int) -> Term:
        if t.reach <= c:
            return t
        key = (id(t), c)
        if key in memo:
            return memo[key]
        if isinstance(t, BoundVar):
            out = BoundVar(t.index + d)
        elif isinstance(t, App):
            out = App(go(t.fun, c), go(t.arg, c))
        else:
            out = Lam(go(t.body, c + 1))
        memo[key] = out
        return out

    return go(term, cutoff)


def swap_top2(term: Term, cutoff: int = 0) -> Term:
    """Exchange indices cutoff and cutoff+1 (the two innermost outer binders)."""
    memo: dict = {}

    def go(t: Term, c: int) -> Term:
        if t.reach <= c:
            return t
        key = (id(t), c)
        if key in memo:
            return memo[key]
        if isinstance(t, BoundVar):
            out = BoundVar(c + 1) if t.index == c else BoundVar(c) if t.index == c + 1 else t
        elif isinstance(t, App):
            out = App(go(t.fun, c), go(t.arg, c))
        else:
            out = Lam(go(t.body, c + 1))
        memo[key] = out
        return out

    return go(term, cutoff)


def substitute(body: Term, arg: Term) -> Term:
    """body[0 := arg], with the remaining outer indices of body lowered by one."""
    memo: dict = {}
    shifted: dict[int, Term] = {}

    def go(t: Term, depth: int) -> Term:
        if t.reach <= depth:
            return t
        key = (id(t), depth)
        if key in memo:
            return memo[key]
        if isinstance(t, BoundVar):
            if t.index == depth:
                if depth not in shifted:
                    shifted[depth] = shift(arg, depth)
                out = shifted[depth]
            else:
                out = BoundVar(t.index - 1)
        elif isinstance(t, App):
            out = App(go(t.fun, depth), go(t.arg, depth))
        else:
            out = Lam(go(t.body, depth + 1))
        memo[key] = out
        return out

    return go(body, 0)


# -- positions --------------------------------------------------------------


def _child(term: Term, edge: Edge) -> Term:
    if isinstance(term, App):
        if edge is Edge.FUN:
            return term.fun
        if edge is Edge.ARG:
            return term.arg
    elif isinstance(term, Lam) and edge is Edge.BODY:
        return term.body
    raise PathError(f"edge {edge.value} not available at {type(term).__name__}")


def subterm_at(term: Term, path: Path) -> Term:
    for edge in path:
        term = _child(term, edge)
    return term


def binders_on(term: Term, path: Path) -> int:
    """How many Lam nodes the path crosses."""
    n = 0
    for edge in path:
        if edge is Edge.BODY:
            n += 1
        term = _child(term, edge)
    return n


def replace_at(term: Term, path: Path, replacement: Term) -> Term:
    if max_dangling(replacement) > binders_on(term, path):
        raise IndexDisciplineError("replacement has indices escaping the enclosing binders")
    return _plug(term, tuple(path), replacement)


def _plug(term: Term, path: Path, replacement: Term) -> Term:
    # unchecked variant used by the engines, whose rewrites preserve scoping
    if not path:
        return replacement
    edge, rest = path[0], path[1:]
    if isinstance(term, App):
        if edge is Edge.FUN:
            return App(_plug(term.fun, rest, replacement), term.arg)
        if edge is Edge.ARG:
            return App(term.fun, _plug(term.arg, rest, replacement))
    elif isinstance(term, Lam) and edge is Edge.BODY:
        return Lam(_plug(term.body, rest, replacement))
    raise PathError(f"edge {edge.value} not available at {type(term).__name__}")


def iter_positions(term: Term, prefix: Path = ()) -> Iterator[tuple[Path, Term]]:
    """All (path, subterm) pairs, pre-order, function before argument."""
    stack: list[tuple[Path, Term]] = [(prefix, term)]
    while stack:
        path, t = stack.pop()
        yield path, t
        if isinstance(t, App):
            stack.append((path + (Edge.ARG,), t.arg))
            stack.append((path + (Edge.FUN,), t.fun))
        elif isinstance(t, Lam):
            stack.append((path + (Edge.BODY,), t.body))


def iter_redex_positions(term: Term, prefix: Path = ()) -> Iterator[Path]:
    """Paths of β-redexes in leftmost-outermost order; redex-free subterms are skipped."""
    stack: list[tuple[Path, Term]] = [(prefix, term)]
    while stack:
        path, t = stack.pop()
        if t.normal:
            continue
        if isinstance(t, App):
            if isinstance(t.fun, Lam):
                yield path
            stack.append((path + (Edge.ARG,), t.arg))
            stack.append((path + (Edge.FUN,), t.fun))
        elif isinstance(t, Lam):
            stack.append((path + (Edge.BODY,), t.body))


def redex_positions(term: Term) -> list[Path]:
    """Paths of all β-redexes, leftmost-outermost first."""
    return list(iter_redex_positions(term))


def format_path(path: Path) -> str:
    return "[" + ", ".join(e.value for e in path) + "]"

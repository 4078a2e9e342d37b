r"""Surface syntax for terms and λx terms.

    term  := lam | app
    lam   := ('\' | 'λ') ident+ '.' term
    app   := atom+ [lam]                    (left-associative)
    atom  := (ident | '(' term ')') ('[' ident ':=' term ']')*

The closure suffix is only accepted by :func:`parse_x`.  Printing names
binders by depth from the stream x, y, z, x1, y1, ..., skipping any name
that occurs free in the term.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count
from typing import Iterator, Optional

from .lambdax import Sub, XTerm
from .terms import App, BoundVar, FreeVar, Lam, Term

IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_']*")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"{message} at line {line}, column {column}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Token:
    kind: str  # 'lam' '.' '(' ')' '[' ']' ':=' 'ident' 'eof'
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col, i = 1, 1, 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line, col, i = line + 1, 1, i + 1
            continue
        if ch.isspace():
            col, i = col + 1, i + 1
            continue
        if ch in "\\λ":
            tokens.append(_Token("lam", ch, line, col))
            width = 1
        elif ch in ".()[]":
            tokens.append(_Token(ch, ch, line, col))
            width = 1
        elif text.startswith(":=", i):
            tokens.append(_Token(":=", ":=", line, col))
            width = 2
        else:
            m = IDENT.match(text, i)
            if not m:
                raise ParseError(f"unexpected character {ch!r}", line, col)
            tokens.append(_Token("ident", m.group(), line, col))
            width = len(m.group())
        i += width
        col += width
    tokens.append(_Token("eof", "", line, col))
    return tokens


# Named syntax tree, resolved to de Bruijn form afterwards because a closure's
# binder appears after its body.
@dataclass(frozen=True)
class _NVar:
    name: str


@dataclass(frozen=True)
class _NLam:
    name: str
    body: object


@dataclass(frozen=True)
class _NApp:
    fun: object
    arg: object


@dataclass(frozen=True)
class _NSub:
    body: object
    name: str
    subst: object


class _Parser:
    def __init__(self, text: str, closures: bool):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.closures = closures

    @property
    def tok(self) -> _Token:
        return self.tokens[self.pos]

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.tok.line, self.tok.column)

    def expect(self, kind: str) -> _Token:
        if self.tok.kind != kind:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {kind!r}, found {found!r}")
        tok = self.tok
        self.pos += 1
        return tok

    def parse(self):
        if self.tok.kind == "eof":
            raise self.error("empty input")
        t = self.term()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return t

    def term(self):
        if self.tok.kind == "lam":
            return self.lam()
        return self.app()

    def lam(self):
        self.expect("lam")
        names = [self.expect("ident").text]
        while self.tok.kind == "ident":
            names.append(self.expect("ident").text)
        self.expect(".")
        body = self.term()
        for name in reversed(names):
            body = _NLam(name, body)
        return body

    def app(self):
        t = self.atom()
        while self.tok.kind in ("ident", "(", "lam"):
            if self.tok.kind == "lam":
                return _NApp(t, self.lam())
            t = _NApp(t, self.atom())
        return t

    def atom(self):
        if self.tok.kind == "ident":
            t = _NVar(self.expect("ident").text)
        elif self.tok.kind == "(":
            self.expect("(")
            t = self.term()
            self.expect(")")
        else:
            found = self.tok.text or "end of input"
            raise self.error(f"expected a term, found {found!r}")
        while self.tok.kind == "[":
            if not self.closures:
                raise self.error("explicit substitution is not allowed in a pure term")
            self.expect("[")
            name = self.expect("ident").text
            self.expect(":=")
            subst = self.term()
            self.expect("]")
            t = _NSub(t, name, subst)
        return t


def _resolve(node, scope: tuple[str, ...]) -> XTerm:
    # scope[0] is the innermost binder
    if isinstance(node, _NVar):
        try:
            return BoundVar(scope.index(node.name))
        except ValueError:
            return FreeVar(node.name)
    if isinstance(node, _NLam):
        return Lam(_resolve(node.body, (node.name,) + scope))
    if isinstance(node, _NApp):
        return App(_resolve(node.fun, scope), _resolve(node.arg, scope))
    return Sub(_resolve(node.body, (node.name,) + scope), _resolve(node.subst, scope))


def parse(text: str) -> Term:
    """Parse a pure λ-term; unbound identifiers become free variables."""
    return _resolve(_Parser(text, closures=False).parse(), ())


def parse_x(text: str) -> XTerm:
    """Parse a λx term (closures ``B[x := N]`` allowed)."""
    return _resolve(_Parser(text, closures=True).parse(), ())


# -- printing ---------------------------------------------------------------


def name_stream() -> Iterator[str]:
    for i in count():
        suffix = str(i) if i else ""
        for base in "xyz":
            yield base + suffix


def _free(t: XTerm, out: set[str]) -> set[str]:
    stack = [t]
    while stack:
        t = stack.pop()
        if isinstance(t, FreeVar):
            out.add(t.name)
        elif isinstance(t, App):
            stack += [t.fun, t.arg]
        elif isinstance(t, Lam):
            stack.append(t.body)
        elif isinstance(t, Sub):
            stack += [t.body, t.subst]
    return out


class _Printer:
    def __init__(self, term: XTerm):
        self.avoid = _free(term, set())
        self.names: list[str] = []
        self.stream = (n for n in name_stream() if n not in self.avoid)

    def binder(self, depth: int) -> str:
        while len(self.names) <= depth:
            self.names.append(next(self.stream))
        return self.names[depth]

    def show(self, t: XTerm, depth: int) -> str:
        if isinstance(t, BoundVar):
            if t.index >= depth:
                raise ValueError(f"dangling index {t.index} at depth {depth}")
            return self.binder(depth - 1 - t.index)
        if isinstance(t, FreeVar):
            return t.name
        if isinstance(t, Lam):
            return f"\\{self.binder(depth)}. {self.show(t.body, depth + 1)}"
        if isinstance(t, App):
            fun = self.show(t.fun, depth)
            if isinstance(t.fun, (Lam, Sub)):
                fun = f"({fun})"
            arg = self.show(t.arg, depth)
            if isinstance(t.arg, (App, Lam, Sub)):
                arg = f"({arg})"
            return f"{fun} {arg}"
        body = self.show(t.body, depth + 1)
        if not isinstance(t.body, (BoundVar, FreeVar)):
            body = f"({body})"
        return f"{body}[{self.binder(depth)} := {self.show(t.subst, depth)}]"


def print_term(term: XTerm) -> str:
    """Render a (λx) term in re-parseable named syntax."""
    return _Printer(term).show(term, 0)


def show(term: Optional[XTerm]) -> str:
    return "<none>" if term is None else print_term(term)

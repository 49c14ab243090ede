"""Term trees over the five operations and a small recursive-descent parser.

Grammar::

    term ::= name | u(term, term) | o(term, term) | v(term, term)
           | p(term, term) | t(term)

``u``/``o``/``v`` are the under, over and virtual operations, ``p`` the partial
vertex product and ``t`` the twist involution.  A name followed by ``(`` is a
function symbol, so ``u`` on its own is still a legal variable.
"""

from __future__ import annotations

import re
from typing import Callable, NamedTuple, Union

from .errors import ParseError

OPERATORS = {"u": 2, "o": 2, "v": 2, "p": 2, "t": 1}
# position of each operator in an ops tuple, see TwistedVirtualBikeigebra.ops
OP_SLOT = {"u": 0, "o": 1, "v": 2, "p": 3, "t": 4}

NAME_RE = re.compile(r"[A-Za-z0-9_]+")
_TOKEN_RE = re.compile(r"\s*(?:([A-Za-z0-9_]+)|(.))")


class Var(NamedTuple):
    name: str

    def __str__(self):
        return self.name


class App(NamedTuple):
    op: str
    args: tuple

    def __str__(self):
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


Term = Union[Var, App]


def variables(term: Term) -> set[str]:
    if isinstance(term, Var):
        return {term.name}
    out: set[str] = set()
    for a in term.args:
        out |= variables(a)
    return out


def ordered_variables(term: Term, acc: list[str] | None = None) -> list[str]:
    """Variables in order of first occurrence."""
    if acc is None:
        acc = []
    if isinstance(term, Var):
        if term.name not in acc:
            acc.append(term.name)
    else:
        for a in term.args:
            ordered_variables(a, acc)
    return acc


def size(term: Term) -> int:
    if isinstance(term, Var):
        return 1
    return 1 + sum(size(a) for a in term.args)


class _Tokens:
    def __init__(self, text: str, line: int, col0: int):
        self.toks = []
        self.line = line
        pos = 0
        while pos < len(text):
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos:
                break
            if m.group(1) is not None:
                self.toks.append((m.group(1), m.start(1) + col0 + 1, True))
            elif m.group(2) is not None:
                self.toks.append((m.group(2), m.start(2) + col0 + 1, False))
            pos = m.end()
        self.i = 0
        self.end_col = len(text) + col0 + 1

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, self.end_col, False)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, sym: str):
        tok, col, _ = self.take()
        if tok != sym:
            found = "end of line" if tok is None else repr(tok)
            raise ParseError("SYNTAX", f"expected {sym!r}, found {found}", self.line, col)


def _term(ts: _Tokens) -> Term:
    tok, col, is_name = ts.take()
    if tok is None:
        raise ParseError("SYNTAX", "expected a term, found end of line", ts.line, col)
    if not is_name:
        raise ParseError("SYNTAX", f"expected a term, found {tok!r}", ts.line, col)
    if ts.peek()[0] != "(":
        return Var(tok)
    if tok not in OPERATORS:
        raise ParseError("SYNTAX", f"unknown function symbol {tok!r}", ts.line, col)
    ts.take()
    args = [_term(ts)]
    for _ in range(OPERATORS[tok] - 1):
        ts.expect(",")
        args.append(_term(ts))
    nxt, ncol, _ = ts.peek()
    if nxt == ",":
        raise ParseError("SYNTAX", f"{tok} takes {OPERATORS[tok]} argument(s)", ts.line, ncol)
    ts.expect(")")
    return App(tok, tuple(args))


def parse_term(text: str, line: int = 1, col0: int = 0) -> Term:
    ts = _Tokens(text, line, col0)
    t = _term(ts)
    tok, col, _ = ts.peek()
    if tok is not None:
        raise ParseError("SYNTAX", f"unexpected {tok!r} after term", line, col)
    return t


def parse_equation(text: str, line: int = 1) -> tuple[Term, Term]:
    ts = _Tokens(text, line, 0)
    lhs = _term(ts)
    ts.expect("=")
    rhs = _term(ts)
    tok, col, _ = ts.peek()
    if tok is not None:
        raise ParseError("SYNTAX", f"unexpected {tok!r} after equation", line, col)
    return lhs, rhs


Compiled = Callable[[tuple, list], object]


def compile_term(term: Term, slots: dict[str, int]) -> Compiled:
    """Turn a term into ``f(ops, env)``; variables read ``env[slots[name]]``."""
    if isinstance(term, Var):
        i = slots[term.name]
        return lambda ops, env: env[i]
    k = OP_SLOT[term.op]
    fs = [compile_term(a, slots) for a in term.args]
    if len(fs) == 1:
        (f,) = fs
        return lambda ops, env: ops[k](f(ops, env))
    f, g = fs
    return lambda ops, env: ops[k](f(ops, env), g(ops, env))

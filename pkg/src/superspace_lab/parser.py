"""Symbol table and recursive-descent parser for the expression DSL.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' integer)?
    base   := rational | symbol | symbol '(' expr (',' expr)* ')' | '(' expr ')'

Symbols match ``[A-Za-z][A-Za-z0-9_]*``.  A trailing ``dot`` (repeatable) on a
declared time-dependent symbol is its time derivative: ``qdot``, ``qdotdot``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .errors import (
    ArityError,
    ConstructionError,
    ParseDivisionError,
    ParseError,
    UndeclaredSymbolError,
)
from .scalar import ScalarExpr, apply, const, symbol

KINDS = {
    "const": "constant",
    "var": "phase-space",
    "aux": "auxiliary",
    "time": "time",
    "func": "function",
}
_TIME_DEPENDENT = {"phase-space", "auxiliary"}
NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class SymbolInfo:
    name: str
    kind: str
    arity: int = 0

    @property
    def timedep(self) -> bool:
        return self.kind in _TIME_DEPENDENT


class SymbolTable:
    """Declared names: constants, phase-space variables, auxiliaries, time, functions."""

    def __init__(self):
        self._entries: dict[str, SymbolInfo] = {}

    def declare(self, name: str, kind: str, arity: int = 0) -> SymbolInfo:
        kind = KINDS.get(kind, kind)
        if kind not in KINDS.values():
            raise ConstructionError(f"unknown symbol kind {kind!r}")
        if not NAME_RE.match(name):
            raise ConstructionError(f"invalid symbol name {name!r}")
        if name in self._entries:
            raise ConstructionError(f"symbol {name!r} declared twice")
        if kind == "function" and arity < 1:
            raise ConstructionError(f"function {name!r} needs arity >= 1")
        info = SymbolInfo(name, kind, arity)
        self._entries[name] = info
        return info

    def declare_line(self, line: str) -> bool:
        """Handle ``const m``, ``var q p``, ``aux lam``, ``func H 2``; False if not a declaration."""
        words = line.split()
        if not words or words[0] not in KINDS:
            return False
        if len(words) < 2:
            raise ConstructionError(f"declaration {line.strip()!r} names no symbol")
        if words[0] == "func":
            if len(words) != 3 or not words[2].isdigit():
                raise ConstructionError("function declaration must read 'func NAME ARITY'")
            self.declare(words[1], "func", int(words[2]))
        else:
            for name in words[1:]:
                self.declare(name, words[0])
        return True

    def __contains__(self, name: str) -> bool:
        return name in self._entries

    def __getitem__(self, name: str) -> SymbolInfo:
        return self._entries[name]

    def __iter__(self) -> Iterator[SymbolInfo]:
        return iter(self._entries.values())

    def of_kind(self, kind: str) -> list[str]:
        kind = KINDS.get(kind, kind)
        return [e.name for e in self._entries.values() if e.kind == kind]

    def expr(self, name: str, dots: int = 0) -> ScalarExpr:
        info = self._entries[name]
        if info.kind == "function":
            raise ConstructionError(f"{name!r} is a function")
        return symbol(name, dots, info.timedep)

    def resolve(self, name: str) -> tuple[str, int] | None:
        """Map a DSL name to ``(declared name, dot count)`` or None."""
        if name in self._entries:
            return name, 0
        base, dots = name, 0
        while base.endswith("dot") and len(base) > 3:
            base, dots = base[:-3], dots + 1
            info = self._entries.get(base)
            if info is not None:
                return (base, dots) if info.timedep else None
        return None


_TOKEN_RE = re.compile(
    r"(?P<ws>[ \t\r\n]+)|(?P<num>\d+(?:\.\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)"
    r"|(?P<op>[-+*/^(),])"
)


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "ws":
            for i, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, i + 1
        else:
            tokens.append(_Token(kind, m.group(), line, pos - line_start + 1))
        pos = m.end()
    tokens.append(_Token("eof", "", line, pos - line_start + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, table: SymbolTable):
        self.tokens = _tokenize(text)
        self.table = table
        self.i = 0

    @property
    def tok(self) -> _Token:
        return self.tokens[self.i]

    def error(self, message: str, tok: _Token | None = None, cls=ParseError):
        tok = tok or self.tok
        return cls(message, tok.line, tok.col)

    def take(self, text: str | None = None, kind: str | None = None) -> _Token:
        tok = self.tok
        if (text is not None and tok.text != text) or (kind is not None and tok.kind != kind):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}")
        self.i += 1
        return tok

    def parse(self) -> ScalarExpr:
        e = self.expr()
        if self.tok.kind != "eof":
            raise self.error(f"unexpected {self.tok.text!r}")
        return e

    def expr(self) -> ScalarExpr:
        e = self.term()
        while self.tok.text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> ScalarExpr:
        e = self.factor()
        while self.tok.text in ("*", "/"):
            op_tok = self.take()
            rhs = self.factor()
            if op_tok.text == "*":
                e = e * rhs
            else:
                if rhs.is_zero:
                    raise self.error("division by zero", op_tok, ParseDivisionError)
                e = e / rhs
        return e

    def factor(self) -> ScalarExpr:
        e = self.base()
        if self.tok.text == "^":
            caret = self.take()
            sign = -1 if self.tok.text == "-" and self.take() else 1
            num_tok = self.take(kind="num")
            if "." in num_tok.text:
                raise self.error("exponent must be an integer", num_tok)
            n = int(num_tok.text) * sign
            if n < 0 and e.is_zero:
                raise self.error("division by zero", caret, ParseDivisionError)
            e = e**n
        return e

    def base(self) -> ScalarExpr:
        tok = self.tok
        if tok.kind == "num":
            self.take()
            return const(Fraction(tok.text))
        if tok.text == "(":
            self.take()
            e = self.expr()
            self.take(")")
            return e
        if tok.kind == "name":
            self.take()
            if self.tok.text == "(":
                return self.call(tok)
            resolved = self.table.resolve(tok.text)
            if resolved is None:
                raise self.error(f"undeclared symbol {tok.text!r}", tok, UndeclaredSymbolError)
            name, dots = resolved
            if self.table[name].kind == "function":
                raise self.error(f"function {name!r} used without arguments", tok, ArityError)
            return self.table.expr(name, dots)
        got = repr(tok.text) if tok.kind != "eof" else "end of input"
        raise self.error(f"expected an operand, got {got}")

    def call(self, name_tok: _Token) -> ScalarExpr:
        info = self.table._entries.get(name_tok.text)
        if info is None:
            raise self.error(f"undeclared function {name_tok.text!r}", name_tok, UndeclaredSymbolError)
        if info.kind != "function":
            raise self.error(f"{name_tok.text!r} is not a function", name_tok, ArityError)
        self.take("(")
        args = [self.expr()]
        while self.tok.text == ",":
            self.take()
            args.append(self.expr())
        self.take(")")
        if len(args) != info.arity:
            raise self.error(
                f"{info.name} takes {info.arity} argument(s), got {len(args)}",
                name_tok,
                ArityError,
            )
        return apply(info.name, args)


def parse(text: str, table: SymbolTable) -> ScalarExpr:
    """Parse DSL text into a canonical :class:`ScalarExpr`."""
    return _Parser(text, table).parse()

"""Recursive-descent parser for the calculator's expression grammar.

Values are polynomials, free Lie-Rinehart elements (with `d{i}` generators
and `F[a,b]` brackets), subset-indexed k-fields (`K{arity=2; 0: d0; ...}`
literals or cup/compose/... calls) and polyvectors (`a ^ b` wedges).  The
caret is type-dispatched: integer power on polynomials, wedge on fields.
Errors carry line and column.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .chart_algebra import ChartSpec, Poly
from .errors import DomainError
from .free_lr import FreeLRElem, free_bracket, project_to_lie
from .groupoid import KField, compose, cup, face, homotopy, strong_diff
from .polyvector import Polyvector, wedge, schouten


class ParseError(Exception):
    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(f"{message} (line {line}, column {column})")


@dataclass
class Session:
    """Parsing/evaluation context: the chart plus named bindings."""

    chart: ChartSpec
    bindings: dict[str, Any] = field(default_factory=dict)
    fmt: str = "text"
    seed: int = 0


_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|([-+*^/()\[\]{},;:=]))")


@dataclass
class _Token:
    kind: str  # int | ident | op | eof
    text: str
    line: int
    column: int


def _tokenize(src: str) -> list[_Token]:
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(src):
        nl = src.count("\n", line_start, pos)
        m = _TOKEN_RE.match(src, pos)
        if not m:
            if src[pos:].strip():
                col = pos - src.rfind("\n", 0, pos)
                raise ParseError(f"unexpected character {src[pos:].strip()[0]!r}", line + nl, col)
            break
        start = m.start(m.lastindex)
        line_no = 1 + src.count("\n", 0, start)
        col = start - src.rfind("\n", 0, start)
        if m.group(1):
            tokens.append(_Token("int", m.group(1), line_no, col))
        elif m.group(2):
            tokens.append(_Token("ident", m.group(2), line_no, col))
        else:
            tokens.append(_Token("op", m.group(3), line_no, col))
        pos = m.end()
    tokens.append(_Token("eof", "", 1 + src.count("\n"), len(src) - src.rfind("\n", 0, len(src))))
    return tokens


_VAR_RE = re.compile(r"^x(\d+)$")
_GEN_RE = re.compile(r"^d(\d+)$")


class _Parser:
    def __init__(self, src: str, session: Session):
        self.tokens = _tokenize(src)
        self.pos = 0
        self.session = session

    @property
    def current(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def _expect(self, text: str) -> _Token:
        tok = self.current
        if tok.kind == "eof" or tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text or 'end of input'!r}", tok.line, tok.column)
        return self._advance()

    def _error(self, message: str):
        tok = self.current
        raise ParseError(message, tok.line, tok.column)

    # grammar ---------------------------------------------------------------

    def parse(self):
        value = self.sum()
        if self.current.kind != "eof":
            self._error(f"unexpected trailing input {self.current.text!r}")
        return value

    def sum(self):
        value = self.product()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            rhs = self.product()
            value = _add(value, rhs) if op == "+" else _add(value, _neg(rhs))
        return value

    def product(self):
        value = self.unary()
        while self.current.kind == "op" and self.current.text == "*":
            self._advance()
            value = _mul(value, self.unary())
        return value

    def unary(self):
        if self.current.kind == "op" and self.current.text == "-":
            self._advance()
            return _neg(self.unary())
        return self.power()

    def power(self):
        value = self.atom()
        while self.current.kind == "op" and self.current.text == "^":
            self._advance()
            value = _pow(value, self.atom())
        return value

    def atom(self):
        tok = self.current
        dim = self.session.chart.dim
        if tok.kind == "int":
            self._advance()
            num = int(tok.text)
            if self.current.kind == "op" and self.current.text == "/":
                self._advance()
                den_tok = self.current
                if den_tok.kind != "int":
                    self._error("expected an integer denominator")
                self._advance()
                return Poly.const(dim, Fraction(num, int(den_tok.text)))
            return Poly.const(dim, num)
        if tok.kind == "op" and tok.text == "(":
            self._advance()
            value = self.sum()
            self._expect(")")
            return value
        if tok.kind == "ident":
            return self.ident_atom()
        self._error(f"unexpected token {tok.text or 'end of input'!r}")

    def ident_atom(self):
        tok = self._advance()
        name = tok.text
        dim = self.session.chart.dim
        if name == "F" and self.current.text == "[":
            self._advance()
            lhs = as_elem(self.sum(), self.session.chart)
            self._expect(",")
            rhs = as_elem(self.sum(), self.session.chart)
            self._expect("]")
            return free_bracket(lhs, rhs)
        if name == "K" and self.current.text == "{":
            return self.kfield_literal()
        m = _VAR_RE.match(name)
        if m:
            i = int(m.group(1))
            if i >= dim:
                raise ParseError(f"coordinate x{i} out of range for dimension {dim}", tok.line, tok.column)
            return Poly.var(dim, i)
        m = _GEN_RE.match(name)
        if m:
            i = int(m.group(1))
            if i >= dim:
                raise ParseError(f"generator d{i} out of range for dimension {dim}", tok.line, tok.column)
            return FreeLRElem.generator(self.session.chart, i)
        if self.current.kind == "op" and self.current.text == "(":
            return self.call(name, tok)
        if name in self.session.bindings:
            return self.session.bindings[name]
        raise ParseError(f"unknown identifier {name!r}", tok.line, tok.column)

    def call(self, name: str, tok: _Token):
        self._expect("(")
        args = [self.sum()]
        while self.current.text == ",":
            self._advance()
            args.append(self.sum())
        self._expect(")")
        chart = self.session.chart

        def arity(n):
            if len(args) != n:
                raise ParseError(f"{name} expects {n} arguments, got {len(args)}", tok.line, tok.column)

        if name == "cup":
            arity(2)
            return cup(as_kfield(args[0], chart), as_kfield(args[1], chart))
        if name == "compose":
            arity(2)
            return compose(as_kfield(args[0], chart), as_kfield(args[1], chart))
        if name == "face":
            arity(2)
            return face(as_kfield(args[0], chart), as_int(args[1]))
        if name == "sdiff":
            arity(4)
            return strong_diff(
                as_kfield(args[0], chart),
                as_kfield(args[1], chart),
                (as_int(args[2]), as_int(args[3])),
            )
        if name == "homotopy":
            arity(3)
            return homotopy(as_kfield(args[0], chart), as_int(args[1]), as_int(args[2]))
        if name == "wedge":
            arity(2)
            return wedge(as_pv(args[0], chart), as_pv(args[1], chart))
        if name == "schouten":
            arity(2)
            return schouten(as_pv(args[0], chart), as_pv(args[1], chart))
        raise ParseError(f"unknown function {name!r}", tok.line, tok.column)

    def kfield_literal(self):
        chart = self.session.chart
        self._expect("{")
        ident = self.current
        if ident.kind != "ident" or ident.text != "arity":
            self._error("K literal starts with arity=<k>")
        self._advance()
        self._expect("=")
        k_tok = self.current
        if k_tok.kind != "int":
            self._error("arity must be an integer")
        self._advance()
        k = int(k_tok.text)
        comps = {}
        while self.current.text == ";":
            self._advance()
            indices = [self._subset_index()]
            while self.current.text == ",":
                self._advance()
                indices.append(self._subset_index())
            self._expect(":")
            comps[frozenset(indices)] = as_elem(self.sum(), chart)
        self._expect("}")
        return KField(chart, k, comps)

    def _subset_index(self) -> int:
        tok = self.current
        if tok.kind != "int":
            self._error("expected a slot index")
        self._advance()
        return int(tok.text)


# value coercion ------------------------------------------------------------


def as_poly(v) -> Poly:
    if isinstance(v, Poly):
        return v
    raise DomainError(f"expected a polynomial, got {type(v).__name__}")


def as_int(v) -> int:
    if isinstance(v, Poly):
        c = v.as_constant()
        if c is not None and c.denominator == 1:
            return int(c)
    raise DomainError("expected an integer argument")


def as_elem(v, chart: ChartSpec) -> FreeLRElem:
    if isinstance(v, FreeLRElem):
        return v
    if isinstance(v, Poly) and v.is_zero():
        return FreeLRElem.zero(chart)
    raise DomainError(f"expected a field element, got {v!r}")


def as_kfield(v, chart: ChartSpec) -> KField:
    if isinstance(v, KField):
        return v
    if isinstance(v, (FreeLRElem, Poly)):
        elem = as_elem(v, chart)
        return KField(chart, 1, {frozenset({0}): elem})
    raise DomainError(f"expected a k-field, got {v!r}")


def as_pv(v, chart: ChartSpec) -> Polyvector:
    if isinstance(v, Polyvector):
        return v
    if isinstance(v, Poly) and v.is_zero():
        return Polyvector.zero(chart.dim)
    if isinstance(v, FreeLRElem):
        if not v.is_classical():
            raise DomainError("only classical elements convert to polyvectors")
        return Polyvector.from_vfield(project_to_lie(v))
    raise DomainError(f"expected a polyvector, got {v!r}")


# type-dispatched operators ---------------------------------------------------


def _neg(v):
    if isinstance(v, KField):
        raise DomainError("k-fields have no global negation; additions are face-wise")
    return -v


def _add(a, b):
    if isinstance(a, KField) or isinstance(b, KField):
        raise DomainError("k-fields have no global addition; additions are face-wise")
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a + b
    if isinstance(a, Polyvector) or isinstance(b, Polyvector):
        dim = a.dim if isinstance(a, Polyvector) else b.dim
        chart = ChartSpec(dim)
        return as_pv(a, chart) + as_pv(b, chart)
    if isinstance(a, FreeLRElem) or isinstance(b, FreeLRElem):
        chart = a.chart if isinstance(a, FreeLRElem) else b.chart
        return as_elem(a, chart) + as_elem(b, chart)
    raise DomainError(f"cannot add {type(a).__name__} and {type(b).__name__}")


def _mul(a, b):
    if isinstance(a, Poly) and isinstance(b, Poly):
        return a * b
    if isinstance(a, Poly) and isinstance(b, (FreeLRElem, Polyvector)):
        return b * a
    if isinstance(b, Poly) and isinstance(a, (FreeLRElem, Polyvector)):
        return a * b
    raise DomainError(f"cannot multiply {type(a).__name__} and {type(b).__name__}")


def _pow(a, b):
    if isinstance(a, Poly) and isinstance(b, Poly):
        c = b.as_constant()
        if c is None or c.denominator != 1 or c < 0:
            raise DomainError("polynomial exponent must be a nonnegative integer")
        return a ** int(c)
    dim = a.dim if isinstance(a, Polyvector) else getattr(getattr(a, "chart", None), "dim", None)
    if dim is None:
        dim = b.dim if isinstance(b, Polyvector) else b.chart.dim
    chart = ChartSpec(dim)
    return wedge(as_pv(a, chart), as_pv(b, chart))


def parse_expression(src: str, session: Session):
    """Parse and evaluate one expression in the session's chart."""
    return _Parser(src, session).parse()

"""Coordinate-wise map expressions: parser, printer, integer evaluator.

Grammar (whitespace insignificant):

    map    := "vars" namelist ":" "(" expr { "," expr } ")"
    expr   := term { ("+" | "-") term }
    term   := factor { "*" factor }
    factor := ["-"] ( integer | name | "(" expr ")" )

Unary minus binds tighter than "*", which binds tighter than "+"/"-";
binary operators associate to the left. Expressions are integer
polynomials in the declared variables; reduction modulo the target ring's
moduli happens at table-materialization time, not here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rings import SpecError


class DslError(SpecError):
    """Syntax or scoping error, with 1-based line/column position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


# -- expression trees ---------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    value: int


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Add:
    left: object
    right: object


@dataclass(frozen=True)
class Sub:
    left: object
    right: object


@dataclass(frozen=True)
class Mul:
    left: object
    right: object


@dataclass(frozen=True)
class MapExpr:
    """A coordinate-wise map: one expression per output coordinate."""

    vars: tuple[str, ...]
    coords: tuple[object, ...]

    def __str__(self) -> str:
        return map_expr_to_text(self)


# -- tokenizer ----------------------------------------------------------------

_SYMBOLS = set("+-*(),:")


@dataclass(frozen=True)
class _Token:
    kind: str  # "int" | "name" | one of the symbol characters | "end"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            col += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(_Token("int", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(_Token(ch, ch, line, start_col))
            i += 1
            col += 1
            continue
        raise DslError(f"unknown character {ch!r}", line, start_col)
    tokens.append(_Token("end", "", line, col))
    return tokens


# -- recursive descent parser ---------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.declared: tuple[str, ...] = ()

    @property
    def cur(self) -> _Token:
        return self.tokens[self.pos]

    def _advance(self) -> _Token:
        tok = self.cur
        self.pos += 1
        return tok

    def _expect(self, kind: str, what: str) -> _Token:
        tok = self.cur
        if tok.kind != kind:
            shown = tok.text or "end of input"
            raise DslError(f"expected {what}, found {shown!r}", tok.line, tok.col)
        return self._advance()

    def parse_map(self) -> MapExpr:
        kw = self._expect("name", "'vars'")
        if kw.text != "vars":
            raise DslError("map expression must start with 'vars'", kw.line, kw.col)
        names = [self._expect("name", "variable name").text]
        while self.cur.kind == ",":
            self._advance()
            names.append(self._expect("name", "variable name").text)
        if len(set(names)) != len(names):
            raise DslError("duplicate variable name", kw.line, kw.col)
        self.declared = tuple(names)
        self._expect(":", "':'")
        self._expect("(", "'('")
        coords = [self.parse_expr()]
        while self.cur.kind == ",":
            self._advance()
            coords.append(self.parse_expr())
        self._expect(")", "')'")
        tok = self.cur
        if tok.kind != "end":
            raise DslError(f"trailing input {tok.text!r}", tok.line, tok.col)
        return MapExpr(self.declared, tuple(coords))

    def parse_expr(self):
        node = self.parse_term()
        while self.cur.kind in ("+", "-"):
            op = self._advance().kind
            rhs = self.parse_term()
            node = Add(node, rhs) if op == "+" else Sub(node, rhs)
        return node

    def parse_term(self):
        node = self.parse_factor()
        while self.cur.kind == "*":
            self._advance()
            node = Mul(node, self.parse_factor())
        return node

    def parse_factor(self):
        if self.cur.kind == "-":
            self._advance()
            return Neg(self._parse_atom())
        return self._parse_atom()

    def _parse_atom(self):
        tok = self.cur
        if tok.kind == "int":
            self._advance()
            return Lit(int(tok.text))
        if tok.kind == "name":
            self._advance()
            if tok.text not in self.declared:
                raise DslError(f"undeclared variable {tok.text!r}", tok.line, tok.col)
            return Var(tok.text)
        if tok.kind == "(":
            self._advance()
            node = self.parse_expr()
            self._expect(")", "')'")
            return node
        shown = tok.text or "end of input"
        raise DslError(f"expected integer, name or '(', found {shown!r}", tok.line, tok.col)


def parse_map_expr(text: str) -> MapExpr:
    """Parse the full 'vars a,b : (expr, ...)' form into a MapExpr."""
    return _Parser(text).parse_map()


# -- printer ------------------------------------------------------------------
# Emits exactly the parens needed so that parse(print(t)) == t.


def _print_expr(node, parent: str = "top") -> str:
    if isinstance(node, Lit):
        return str(node.value)
    if isinstance(node, Var):
        return node.name
    if isinstance(node, Neg):
        inner = _print_expr(node.operand, "neg")
        if isinstance(node.operand, (Lit, Var)):
            return "-" + inner
        return "-(" + inner + ")"
    if isinstance(node, Mul):
        left = _print_expr(node.left, "mul_left")
        right = _print_expr(node.right, "mul_right")
        if isinstance(node.left, (Add, Sub)):
            left = "(" + left + ")"
        if isinstance(node.right, (Add, Sub, Mul)):
            right = "(" + right + ")"
        return f"{left}*{right}"
    if isinstance(node, (Add, Sub)):
        op = " + " if isinstance(node, Add) else " - "
        left = _print_expr(node.left, "sum_left")
        right = _print_expr(node.right, "sum_right")
        if isinstance(node.right, (Add, Sub)):
            right = "(" + right + ")"
        return left + op + right
    raise TypeError(f"not an expression node: {node!r}")


def map_expr_to_text(expr: MapExpr) -> str:
    coords = ", ".join(_print_expr(c) for c in expr.coords)
    return f"vars {','.join(expr.vars)} : ({coords})"


# -- evaluation over the integers ----------------------------------------------


def eval_expr(node, env: dict[str, int]) -> int:
    if isinstance(node, Lit):
        return node.value
    if isinstance(node, Var):
        return env[node.name]
    if isinstance(node, Neg):
        return -eval_expr(node.operand, env)
    if isinstance(node, Add):
        return eval_expr(node.left, env) + eval_expr(node.right, env)
    if isinstance(node, Sub):
        return eval_expr(node.left, env) - eval_expr(node.right, env)
    if isinstance(node, Mul):
        return eval_expr(node.left, env) * eval_expr(node.right, env)
    raise TypeError(f"not an expression node: {node!r}")


def eval_coords(expr: MapExpr, values) -> tuple[int, ...]:
    """Evaluate all coordinate expressions at an integer coordinate vector."""
    values = tuple(values)
    if len(values) != len(expr.vars):
        raise SpecError(
            f"expression declares {len(expr.vars)} variables, got {len(values)} values"
        )
    env = dict(zip(expr.vars, values))
    return tuple(eval_expr(c, env) for c in expr.coords)

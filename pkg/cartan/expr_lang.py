"""
Expression language for graphing functions phi(x, y, u) and implicit defining
functions F(z, w, zb, wb).

Grammar (recursive descent, one method per rule):

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := "-" unary | power
    power  := atom ("^" signed_int)?
    atom   := NUMBER | IDENT | IDENT "(" expr ")" | "(" expr ")"
    NUMBER := digits ("." digits)? (("e" | "E") ("+" | "-")? digits)?
    IDENT  := letter (letter | digit | "_")*

There is no conjugation operator: zb and wb are independent variables.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple, Union

from .errors import (
    ExprEvaluationError,
    ExprSyntaxError,
    JetDomainError,
    JetShapeError,
    UnknownIdentifierError,
)
from .jet_algebra import REAL_FUNCTIONS, Jet, apply_function, arith, constant_jet, pow_int

GRAPH_VARIABLES: Tuple[str, ...] = ("x", "y", "u")
IMPLICIT_VARIABLES: Tuple[str, ...] = ("z", "w", "zb", "wb")
REAL_C2_VARIABLES: Tuple[str, ...] = ("x", "y", "u", "v")

CALLABLE_FUNCTIONS = frozenset(name for name in REAL_FUNCTIONS if name != "pow_int")

Scalar = Union[float, complex]


# ----------------------------------------------------------------------- AST
@dataclass(frozen=True)
class Number:
    value: float


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Neg:
    operand: "Expr"


@dataclass(frozen=True)
class Add:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Sub:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Mul:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Div:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class PowInt:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Call:
    name: str
    arg: "Expr"


Expr = Union[Number, Param, Var, Neg, Add, Sub, Mul, Div, PowInt, Call]

_BINARY_SYMBOLS = {Add: "+", Sub: "-", Mul: "*", Div: "/"}
_BINARY_OPS = {Add: "add", Sub: "sub", Mul: "mul", Div: "div"}


# ------------------------------------------------------------------- lexing
_TOKEN_REGEXP = re.compile(
    r"""
    (?P<ws>\s+)
    |(?P<number>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
    |(?P<ident>[A-Za-z][A-Za-z0-9_]*)
    |(?P<op>[-+*/^()])
    """,
    re.X,
)
_INTEGER_REGEXP = re.compile(r"\d+")


@dataclass(frozen=True)
class _Token:
    kind: str  # number | ident | op | end
    text: str
    position: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_REGEXP.match(text, pos)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = match.lastgroup or ""
        if kind != "ws":
            tokens.append(_Token(kind, match.group(), pos))
        pos = match.end()
    tokens.append(_Token("end", "", len(text)))
    return tokens


# ------------------------------------------------------------------ parsing
class _Parser:
    def __init__(self, text: str, variables: Iterable[str], params: Optional[Iterable[str]]) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0
        self.variables = frozenset(variables)
        self.params = None if params is None else frozenset(params)

    @property
    def token(self) -> _Token:
        return self.tokens[self.index]

    def _advance(self) -> _Token:
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def _error(self, message: str, tok: Optional[_Token] = None) -> ExprSyntaxError:
        tok = tok or self.token
        return ExprSyntaxError(message, tok.position, self.text)

    def _expect(self, symbol: str) -> None:
        if self.token.kind != "op" or self.token.text != symbol:
            found = self.token.text or "end of input"
            raise self._error(f"expected '{symbol}', found '{found}'")
        self._advance()

    def parse(self) -> Expr:
        node = self.expr()
        if self.token.kind != "end":
            raise self._error(f"unexpected token '{self.token.text}'")
        return node

    def expr(self) -> Expr:
        node = self.term()
        while self.token.kind == "op" and self.token.text in "+-":
            op = self._advance().text
            right = self.term()
            node = Add(node, right) if op == "+" else Sub(node, right)
        return node

    def term(self) -> Expr:
        node = self.unary()
        while self.token.kind == "op" and self.token.text in "*/":
            op = self._advance().text
            right = self.unary()
            node = Mul(node, right) if op == "*" else Div(node, right)
        return node

    def unary(self) -> Expr:
        if self.token.kind == "op" and self.token.text == "-":
            self._advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.token.kind == "op" and self.token.text == "^":
            self._advance()
            return PowInt(base, self.signed_int())
        return base

    def signed_int(self) -> int:
        sign = 1
        if self.token.kind == "op" and self.token.text in "+-":
            sign = -1 if self._advance().text == "-" else 1
        tok = self.token
        if tok.kind != "number" or not _INTEGER_REGEXP.fullmatch(tok.text):
            raise self._error("exponent must be an integer literal")
        self._advance()
        return sign * int(tok.text)

    def atom(self) -> Expr:
        tok = self.token
        if tok.kind == "number":
            self._advance()
            return Number(float(tok.text))
        if tok.kind == "ident":
            self._advance()
            called = self.token.kind == "op" and self.token.text == "("
            return self._identifier(tok, called)
        if tok.kind == "op" and tok.text == "(":
            self._advance()
            node = self.expr()
            self._expect(")")
            return node
        raise self._error("expected a number, identifier or '('" if tok.kind != "end" else "unexpected end of input")

    def _identifier(self, tok: _Token, called: bool) -> Expr:
        name = tok.text
        if called:
            if name not in CALLABLE_FUNCTIONS:
                if name in self.variables or (self.params is not None and name in self.params):
                    raise self._error(f"'{name}' is not a function", tok)
                raise UnknownIdentifierError(name, tok.position, self.text)
            self._expect("(")
            arg = self.expr()
            self._expect(")")
            return Call(name, arg)
        if name in self.variables:
            return Var(name)
        if name in CALLABLE_FUNCTIONS:
            raise self._error(f"function '{name}' needs an argument in parentheses", tok)
        if self.params is None or name in self.params:
            return Param(name)
        raise UnknownIdentifierError(name, tok.position, self.text)


def parse(text: str, variables: Iterable[str], params: Optional[Iterable[str]] = None) -> Expr:
    """
    Parse ``text`` into an AST.

    Args:
        text: expression source.
        variables: declared variable names (e.g. ``GRAPH_VARIABLES``).
        params: declared parameter names; ``None`` accepts any other identifier as a parameter.

    Returns:
        The expression tree.
    """
    return _Parser(text, variables, params).parse()


# ---------------------------------------------------------------- printing
def to_text(e: Expr) -> str:
    """Canonical, fully parenthesized form; parses back to the same tree."""
    if isinstance(e, Number):
        return repr(float(e.value))
    if isinstance(e, (Param, Var)):
        return e.name
    if isinstance(e, Neg):
        return f"(-{to_text(e.operand)})"
    if isinstance(e, PowInt):
        return f"({to_text(e.base)}^{e.exponent})"
    if isinstance(e, Call):
        return f"{e.name}({to_text(e.arg)})"
    symbol = _BINARY_SYMBOLS[type(e)]
    return f"({to_text(e.left)} {symbol} {to_text(e.right)})"


def free_symbols(e: Expr) -> Tuple[Set[str], Set[str]]:
    """Return (variables, params) used by ``e``."""
    variables: Set[str] = set()
    params: Set[str] = set()
    stack: List[Expr] = [e]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            variables.add(node.name)
        elif isinstance(node, Param):
            params.add(node.name)
        elif isinstance(node, Neg):
            stack.append(node.operand)
        elif isinstance(node, PowInt):
            stack.append(node.base)
        elif isinstance(node, Call):
            stack.append(node.arg)
        elif isinstance(node, (Add, Sub, Mul, Div)):
            stack.extend((node.left, node.right))
    return variables, params


def substitute(e: Expr, renaming: Mapping[str, str]) -> Expr:
    """Rename variables (used to relabel charts)."""
    if isinstance(e, Var):
        return Var(renaming.get(e.name, e.name))
    if isinstance(e, (Number, Param)):
        return e
    if isinstance(e, Neg):
        return Neg(substitute(e.operand, renaming))
    if isinstance(e, PowInt):
        return PowInt(substitute(e.base, renaming), e.exponent)
    if isinstance(e, Call):
        return Call(e.name, substitute(e.arg, renaming))
    return type(e)(substitute(e.left, renaming), substitute(e.right, renaming))


# -------------------------------------------------------------- evaluation
def _is_complex(value: object) -> bool:
    return isinstance(value, complex) and value.imag != 0


class _JetEvaluator:
    def __init__(self, bindings: Mapping[str, Jet], params: Mapping[str, Scalar]) -> None:
        self.bindings = bindings
        self.params = params
        self.template = next(iter(bindings.values()))

    def _wrap(self, node: Expr, fn, *args) -> Jet:
        try:
            return fn(*args)
        except (JetDomainError, JetShapeError) as exc:
            raise ExprEvaluationError(str(exc), location=to_text(node)) from exc

    def eval(self, node: Expr) -> Jet:
        if isinstance(node, Number):
            return self.template.constant_like(node.value)
        if isinstance(node, Param):
            if node.name not in self.params:
                raise ExprEvaluationError(f"unbound parameter '{node.name}'", location=node.name)
            value = self.params[node.name]
            if self.template.kind == "real" and isinstance(value, complex):
                value = value.real
            return self._wrap(node, self.template.constant_like, value)
        if isinstance(node, Var):
            if node.name not in self.bindings:
                raise ExprEvaluationError(f"unbound variable '{node.name}'", location=node.name)
            return self.bindings[node.name]
        if isinstance(node, Neg):
            return -self.eval(node.operand)
        if isinstance(node, PowInt):
            base = self.eval(node.base)
            return self._wrap(node, pow_int, base, node.exponent)
        if isinstance(node, Call):
            arg = self.eval(node.arg)
            return self._wrap(node, apply_function, node.name, arg)
        left = self.eval(node.left)
        right = self.eval(node.right)
        return self._wrap(node, arith, _BINARY_OPS[type(node)], left, right)


def eval_jet(e: Expr, bindings: Mapping[str, Jet], params: Optional[Mapping[str, Scalar]] = None) -> Jet:
    """
    Evaluate ``e`` on jets.

    Args:
        e: expression tree.
        bindings: variable name to jet; all jets share num_vars, degree and kind.
        params: scalar parameter values (complex allowed).

    Returns:
        The resulting jet. Jet failures surface as ``ExprEvaluationError`` naming the node.
    """
    params = dict(params or {})
    if not bindings:
        raise ExprEvaluationError("no variable bindings given")
    jets = dict(bindings)
    first = next(iter(jets.values()))
    for name, jet in jets.items():
        if (jet.num_vars, jet.degree, jet.kind) != (first.num_vars, first.degree, first.kind):
            raise JetShapeError(f"binding '{name}' does not share the shape of the other bindings")
    _, used_params = free_symbols(e)
    if first.kind == "real" and any(_is_complex(params.get(name)) for name in used_params):
        jets = {name: jet.as_complex() for name, jet in jets.items()}
    return _JetEvaluator(jets, params).eval(e)


def eval_scalar(e: Expr, point: Mapping[str, Scalar], params: Optional[Mapping[str, Scalar]] = None) -> Scalar:
    """Degree-0 specialization of ``eval_jet``."""
    values = dict(point)
    params = dict(params or {})
    complex_kind = any(isinstance(v, complex) for v in values.values()) or any(
        isinstance(v, complex) for v in params.values()
    )
    kind = "complex" if complex_kind else "real"
    if values:
        bindings = {name: constant_jet(value, 1, 0, kind=kind) for name, value in values.items()}
    else:
        bindings = {"__unit__": constant_jet(0.0, 1, 0, kind=kind)}
    return eval_jet(e, bindings, params).value


__all__ = [
    "GRAPH_VARIABLES",
    "IMPLICIT_VARIABLES",
    "REAL_C2_VARIABLES",
    "CALLABLE_FUNCTIONS",
    "Expr",
    "Number",
    "Param",
    "Var",
    "Neg",
    "Add",
    "Sub",
    "Mul",
    "Div",
    "PowInt",
    "Call",
    "parse",
    "to_text",
    "free_symbols",
    "substitute",
    "eval_jet",
    "eval_scalar",
]

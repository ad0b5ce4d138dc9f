"""A small expression language for problem data.

Grammar (loosest binding first)::

    expr     := term (("+" | "-") term)*
    term     := unary (("*" | "/") unary)*
    unary    := "-" unary | power
    power    := primary ["^" exponent]
    exponent := ["-"] INTEGER ["^" exponent] | "(" exponent ")"
    primary  := NUMBER | "x" | "t" | "i" | FUNC "(" expr ")" | "(" expr ")"

with ``FUNC`` one of exp, sin, cos, sinh, cosh, sqrt. Exponents are integer
literals, which keeps the language closed under differentiation. A minus
sign directly in front of a number literal is folded into the literal.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

import numpy as np

from .exceptions import ParseError

FUNCTIONS = ("exp", "sin", "cos", "sinh", "cosh", "sqrt")
VARIABLES = ("x", "t")


class Expr:
    __slots__ = ()

    def __str__(self):
        return to_string(self)

    def __call__(self, **env):
        return evaluate(self, **env)


@dataclass(frozen=True)
class Num(Expr):
    value: float


@dataclass(frozen=True)
class ImagUnit(Expr):
    pass


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exp: int


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr


Node = Union[Num, ImagUnit, Var, Neg, Add, Sub, Mul, Div, Pow, Call]


# -- tokenizer ----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)|(?P<name>[A-Za-z_]\w*)|(?P<op>[-+*/^()]))"
)


@dataclass(frozen=True)
class _Tok:
    kind: str  # "num", "name", "op", "end"
    text: str
    offset: int


def _tokenize(text):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            pos = n
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", _byte_offset(text, start),
                             {"number", "name", "operator"})
        kind = m.lastgroup
        tokens.append(_Tok(kind, m.group(kind), _byte_offset(text, m.start(kind))))
        pos = m.end()
    tokens.append(_Tok("end", "", _byte_offset(text, n)))
    return tokens


def _byte_offset(text, index):
    return len(text[:index].encode("utf-8"))


# -- parser -------------------------------------------------------------------

_PRIMARY_START = {"number", "x", "t", "i", "(", "-", *FUNCTIONS}


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def peek(self, k=1):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def advance(self):
        tok = self.tok
        self.i += 1
        return tok

    def fail(self, expected, what=None):
        tok = self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(what or f"unexpected {found}", tok.offset, expected)

    def expect_op(self, op):
        if self.tok.kind == "op" and self.tok.text == op:
            return self.advance()
        self.fail({op})

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail({"+", "-", "*", "/", "^", "end of input"})
        return e

    def expr(self):
        left = self.term()
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            right = self.term()
            left = Add(left, right) if op == "+" else Sub(left, right)
        return left

    def term(self):
        left = self.unary()
        while self.tok.kind == "op" and self.tok.text in "*/":
            op = self.advance().text
            right = self.unary()
            left = Mul(left, right) if op == "*" else Div(left, right)
        return left

    def unary(self):
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            nxt = self.peek()
            if self.tok.kind == "num" and not (nxt.kind == "op" and nxt.text == "^"):
                return Num(-float(self.advance().text))
            return Neg(self.unary())
        return self.power()

    def power(self):
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            return Pow(base, self.exponent())
        return base

    def exponent(self):
        if self.tok.kind == "op" and self.tok.text == "(":
            self.advance()
            value = self.exponent()
            self.expect_op(")")
            return value
        sign = 1
        if self.tok.kind == "op" and self.tok.text == "-":
            self.advance()
            sign = -1
        if self.tok.kind != "num" or not self.tok.text.isdigit():
            self.fail({"integer"}, "exponent must be an integer literal")
        value = sign * int(self.advance().text)
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            inner = self.exponent()
            if inner < 0 and abs(value) != 1:
                raise ParseError("integer exponent tower does not evaluate to an integer",
                                 self.tok.offset, {"integer"})
            value = int(value**inner)
        return value

    def primary(self):
        tok = self.tok
        if tok.kind == "num":
            self.advance()
            return Num(float(tok.text))
        if tok.kind == "name":
            if tok.text in VARIABLES:
                self.advance()
                return Var(tok.text)
            if tok.text == "i":
                self.advance()
                return ImagUnit()
            if tok.text in FUNCTIONS:
                self.advance()
                self.expect_op("(")
                arg = self.expr()
                self.expect_op(")")
                return Call(tok.text, arg)
            self.fail(_PRIMARY_START - {"-"}, f"unknown name {tok.text!r}")
        if tok.kind == "op" and tok.text == "(":
            self.advance()
            e = self.expr()
            self.expect_op(")")
            return e
        self.fail(_PRIMARY_START)


def parse_expr(text):
    """Parse ``text`` into an expression tree; raises :class:`ParseError`."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return _Parser(text).parse()


# -- printing -----------------------------------------------------------------

_PREC = {Add: 1, Sub: 1, Mul: 2, Div: 2, Neg: 3, Pow: 4}


def _prec(e):
    if isinstance(e, Num) and (e.value < 0 or str(e.value).startswith("-")):
        return 3
    return _PREC.get(type(e), 5)


def _wrap(e, need):
    s = to_string(e)
    return f"({s})" if _prec(e) < need else s


def to_string(e):
    """Render ``e`` so that parsing the text gives back the same tree."""
    if isinstance(e, Num):
        return repr(float(e.value))
    if isinstance(e, ImagUnit):
        return "i"
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Call):
        return f"{e.func}({to_string(e.arg)})"
    if isinstance(e, Neg):
        if isinstance(e.arg, Num):
            return f"-({to_string(e.arg)})"
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, Pow):
        return f"{_wrap(e.base, 5)}^{e.exp}"
    p = _PREC[type(e)]
    op = {Add: "+", Sub: "-", Mul: "*", Div: "/"}[type(e)]
    return f"{_wrap(e.left, p)} {op} {_wrap(e.right, p + 1)}"


# -- evaluation ---------------------------------------------------------------

_NUMPY_FUNCS = {
    "exp": np.exp,
    "sin": np.sin,
    "cos": np.cos,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "sqrt": np.emath.sqrt,
}


def evaluate(e, **env):
    """Evaluate with numpy semantics; ``env`` binds ``x`` and/or ``t``."""
    if isinstance(e, Num):
        return e.value
    if isinstance(e, ImagUnit):
        return 1j
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise ValueError(f"no value bound for variable {e.name!r}") from None
    if isinstance(e, Neg):
        return -evaluate(e.arg, **env)
    if isinstance(e, Call):
        return _NUMPY_FUNCS[e.func](evaluate(e.arg, **env))
    if isinstance(e, Pow):
        base = evaluate(e.base, **env)
        if e.exp < 0:
            return 1.0 / np.power(base, -e.exp)
        return np.power(base, e.exp)
    a, b = evaluate(e.left, **env), evaluate(e.right, **env)
    if isinstance(e, Add):
        return a + b
    if isinstance(e, Sub):
        return a - b
    if isinstance(e, Mul):
        return a * b
    return a / b


def variables(e):
    if isinstance(e, Var):
        return {e.name}
    out = set()
    for child in _children(e):
        out |= variables(child)
    return out


def _children(e):
    if isinstance(e, (Neg, Call)):
        return (e.arg,)
    if isinstance(e, Pow):
        return (e.base,)
    if isinstance(e, (Add, Sub, Mul, Div)):
        return (e.left, e.right)
    return ()


def to_function(e, *names):
    """Vectorized callable of the given variables, broadcasting constant results."""

    def fn(*args):
        env = dict(zip(names, args))
        out = np.asarray(evaluate(e, **env))
        if args:
            shape = np.broadcast(*[np.asarray(a) for a in args]).shape
            out = np.broadcast_to(out, shape) if out.shape != shape else out
        return out

    fn.expr = e
    return fn


# -- differentiation ----------------------------------------------------------

ZERO, ONE = Num(0.0), Num(1.0)


def _is(e, v):
    return isinstance(e, Num) and e.value == v


def _neg(a):
    if isinstance(a, Num):
        return Num(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def _add(a, b):
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value + b.value)
    if isinstance(b, Neg):
        return _sub(a, b.arg)
    return Add(a, b)


def _sub(a, b):
    if _is(b, 0):
        return a
    if _is(a, 0):
        return _neg(b)
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value - b.value)
    if isinstance(b, Neg):
        return _add(a, b.arg)
    return Sub(a, b)


def _mul(a, b):
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    if _is(a, -1):
        return _neg(b)
    if _is(b, -1):
        return _neg(a)
    if isinstance(a, Num) and isinstance(b, Num):
        return Num(a.value * b.value)
    if isinstance(a, Neg):
        return _neg(_mul(a.arg, b))
    if isinstance(b, Neg):
        return _neg(_mul(a, b.arg))
    if isinstance(b, Num) and not isinstance(a, Num):
        return _mul(b, a)
    if isinstance(a, Num) and isinstance(b, Mul) and isinstance(b.left, Num):
        return _mul(Num(a.value * b.left.value), b.right)
    return Mul(a, b)


def _div(a, b):
    if _is(a, 0):
        return ZERO
    if _is(b, 1):
        return a
    return Div(a, b)


def _pow(base, n):
    if n == 0:
        return ONE
    if n == 1:
        return base
    return Pow(base, n)


def differentiate(e, var):
    """Symbolic derivative of ``e`` with respect to ``var`` (``"x"`` or ``"t"``)."""
    if var not in VARIABLES:
        raise ValueError(f"can only differentiate with respect to {VARIABLES}")
    d = differentiate
    if isinstance(e, (Num, ImagUnit)):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == var else ZERO
    if isinstance(e, Neg):
        return _neg(d(e.arg, var))
    if isinstance(e, Add):
        return _add(d(e.left, var), d(e.right, var))
    if isinstance(e, Sub):
        return _sub(d(e.left, var), d(e.right, var))
    if isinstance(e, Mul):
        return _add(_mul(d(e.left, var), e.right), _mul(e.left, d(e.right, var)))
    if isinstance(e, Div):
        num = _sub(_mul(d(e.left, var), e.right), _mul(e.left, d(e.right, var)))
        return _div(num, _pow(e.right, 2))
    if isinstance(e, Pow):
        inner = d(e.base, var)
        return _mul(_mul(Num(float(e.exp)), _pow(e.base, e.exp - 1)), inner)
    inner = d(e.arg, var)
    if _is(inner, 0):
        return ZERO
    u = e.arg
    outer = {
        "exp": lambda: e,
        "sin": lambda: Call("cos", u),
        "cos": lambda: _neg(Call("sin", u)),
        "sinh": lambda: Call("cosh", u),
        "cosh": lambda: Call("sinh", u),
        "sqrt": lambda: _div(ONE, _mul(Num(2.0), e)),
    }[e.func]()
    return _mul(inner, outer)


def nth_derivative(e, var, n):
    for _ in range(n):
        e = differentiate(e, var)
    return e


class DerivativeProvider:
    """Callable ``(j, t) -> d^j e / dvar^j`` evaluated at ``t``, with memoized derivatives."""

    def __init__(self, e, var="t"):
        self.var = var
        self._derivs = [e]

    def expr(self, j):
        while len(self._derivs) <= j:
            self._derivs.append(differentiate(self._derivs[-1], self.var))
        return self._derivs[j]

    def __call__(self, j, value):
        value = np.asarray(value, dtype=float)
        out = np.asarray(evaluate(self.expr(j), **{self.var: value}))
        return np.broadcast_to(out, value.shape) if out.shape != value.shape else out

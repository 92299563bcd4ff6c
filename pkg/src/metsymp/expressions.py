"""Small closed-form expression trees over chart coordinates.

Every component function in this package (contact forms, metrics, almost
complex structures, anything produced by an exterior derivative or a Lie
derivative) is one of these trees.  The node set is deliberately tiny:
constants, coordinates, the four arithmetic operations, powers with a
constant exponent, exp, sin, cos and sqrt.  Trees support

  * exact symbolic partial differentiation (``diff``), which is how the
    first-order operators (d, Lie derivative, bracket, Nijenhuis) produce
    new component functions, and
  * evaluation on second-order jets (``evaluate``), which is how every
    numeric derivative in the package is obtained.

Trees are immutable.  The constructors fold constants and prune additive
and multiplicative identities so that fields with many structurally zero
components stay cheap to evaluate.
"""

from __future__ import annotations

import math
from typing import Sequence

from .jets import Jet2

__all__ = [
    "Expr",
    "Const",
    "Coord",
    "as_expr",
    "parse_expression",
    "ExpressionSyntaxError",
    "ZERO",
    "ONE",
]


class Expr:
    """Base class for expression nodes."""

    __slots__ = ()

    def diff(self, i: int) -> "Expr":
        raise NotImplementedError

    def evaluate(self, jets: Sequence[Jet2], memo: dict | None = None) -> Jet2:
        """Evaluate on jets, sharing work across repeated subtrees.

        ``memo`` caches results by node identity; callers evaluating many
        components of one field at the same points pass a common dict so
        shared subexpressions (an inverse determinant, a Reeb component)
        are computed once.
        """
        if memo is None:
            memo = {}
        key = id(self)
        hit = memo.get(key)
        if hit is None:
            hit = self._eval(jets, memo)
            memo[key] = hit
        return hit

    def _eval(self, jets: Sequence[Jet2], memo: dict) -> Jet2:
        raise NotImplementedError

    def subs(self, replacements: Sequence["Expr"]) -> "Expr":
        """Substitute ``replacements[k]`` for coordinate ``k``."""
        raise NotImplementedError

    # Operator sugar.  All algebra goes through the simplifying helpers.

    def __add__(self, other):
        return _add(self, as_expr(other))

    def __radd__(self, other):
        return _add(as_expr(other), self)

    def __sub__(self, other):
        return _sub(self, as_expr(other))

    def __rsub__(self, other):
        return _sub(as_expr(other), self)

    def __mul__(self, other):
        return _mul(self, as_expr(other))

    def __rmul__(self, other):
        return _mul(as_expr(other), self)

    def __truediv__(self, other):
        return _div(self, as_expr(other))

    def __rtruediv__(self, other):
        return _div(as_expr(other), self)

    def __neg__(self):
        return _neg(self)

    def __pow__(self, exponent):
        if isinstance(exponent, Const):
            exponent = exponent.value
        if not isinstance(exponent, (int, float)):
            raise TypeError("exponent must be a number")
        return _pow(self, float(exponent))

    def is_zero(self) -> bool:
        return isinstance(self, Const) and self.value == 0.0


class Const(Expr):
    __slots__ = ("value",)

    def __init__(self, value: float):
        self.value = float(value)

    def diff(self, i):
        return ZERO

    def _eval(self, jets, memo):
        return jets[0].constant_like(self.value)

    def subs(self, replacements):
        return self

    def __repr__(self):
        return repr(self.value)


class Coord(Expr):
    __slots__ = ("index", "name")

    def __init__(self, index: int, name: str = ""):
        self.index = index
        self.name = name or f"x{index}"

    def diff(self, i):
        return ONE if i == self.index else ZERO

    def _eval(self, jets, memo):
        return jets[self.index]

    def subs(self, replacements):
        return replacements[self.index]

    def __repr__(self):
        return self.name


class _Binary(Expr):
    __slots__ = ("a", "b")

    def __init__(self, a: Expr, b: Expr):
        self.a = a
        self.b = b


class Add(_Binary):
    __slots__ = ()

    def diff(self, i):
        return _add(self.a.diff(i), self.b.diff(i))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo) + self.b.evaluate(jets, memo)

    def subs(self, r):
        return _add(self.a.subs(r), self.b.subs(r))

    def __repr__(self):
        return f"({self.a!r} + {self.b!r})"


class Sub(_Binary):
    __slots__ = ()

    def diff(self, i):
        return _sub(self.a.diff(i), self.b.diff(i))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo) - self.b.evaluate(jets, memo)

    def subs(self, r):
        return _sub(self.a.subs(r), self.b.subs(r))

    def __repr__(self):
        return f"({self.a!r} - {self.b!r})"


class Mul(_Binary):
    __slots__ = ()

    def diff(self, i):
        return _add(_mul(self.a.diff(i), self.b), _mul(self.a, self.b.diff(i)))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo) * self.b.evaluate(jets, memo)

    def subs(self, r):
        return _mul(self.a.subs(r), self.b.subs(r))

    def __repr__(self):
        return f"({self.a!r} * {self.b!r})"


class Div(_Binary):
    __slots__ = ()

    def diff(self, i):
        num = _sub(_mul(self.a.diff(i), self.b), _mul(self.a, self.b.diff(i)))
        return _div(num, _mul(self.b, self.b))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo) / self.b.evaluate(jets, memo)

    def subs(self, r):
        return _div(self.a.subs(r), self.b.subs(r))

    def __repr__(self):
        return f"({self.a!r} / {self.b!r})"


class Neg(Expr):
    __slots__ = ("a",)

    def __init__(self, a: Expr):
        self.a = a

    def diff(self, i):
        return _neg(self.a.diff(i))

    def _eval(self, jets, memo):
        return -self.a.evaluate(jets, memo)

    def subs(self, r):
        return _neg(self.a.subs(r))

    def __repr__(self):
        return f"(-{self.a!r})"


class Pow(Expr):
    __slots__ = ("a", "exponent")

    def __init__(self, a: Expr, exponent: float):
        self.a = a
        self.exponent = float(exponent)

    def diff(self, i):
        n = self.exponent
        return _mul(_mul(Const(n), _pow(self.a, n - 1.0)), self.a.diff(i))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo).power(self.exponent)

    def subs(self, r):
        return _pow(self.a.subs(r), self.exponent)

    def __repr__(self):
        return f"({self.a!r} ^ {self.exponent})"


class _Unary(Expr):
    __slots__ = ("a",)

    def __init__(self, a: Expr):
        self.a = a


class Exp(_Unary):
    __slots__ = ()

    def diff(self, i):
        return _mul(self, self.a.diff(i))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo).exp()

    def subs(self, r):
        return exp(self.a.subs(r))

    def __repr__(self):
        return f"exp({self.a!r})"


class Sin(_Unary):
    __slots__ = ()

    def diff(self, i):
        return _mul(cos(self.a), self.a.diff(i))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo).sin()

    def subs(self, r):
        return sin(self.a.subs(r))

    def __repr__(self):
        return f"sin({self.a!r})"


class Cos(_Unary):
    __slots__ = ()

    def diff(self, i):
        return _neg(_mul(sin(self.a), self.a.diff(i)))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo).cos()

    def subs(self, r):
        return cos(self.a.subs(r))

    def __repr__(self):
        return f"cos({self.a!r})"


class Sqrt(_Unary):
    __slots__ = ()

    def diff(self, i):
        return _div(self.a.diff(i), _mul(Const(2.0), self))

    def _eval(self, jets, memo):
        return self.a.evaluate(jets, memo).sqrt()

    def subs(self, r):
        return sqrt(self.a.subs(r))

    def __repr__(self):
        return f"sqrt({self.a!r})"


ZERO = Const(0.0)
ONE = Const(1.0)


def as_expr(x) -> Expr:
    if isinstance(x, Expr):
        return x
    if isinstance(x, (int, float)):
        return Const(float(x))
    raise TypeError(f"cannot interpret {x!r} as an expression")


def _add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if b.is_zero():
        return a
    if a.is_zero():
        return _neg(b)
    return Sub(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if a.is_zero() or b.is_zero():
        return ZERO
    if isinstance(a, Const) and a.value == 1.0:
        return b
    if isinstance(b, Const) and b.value == 1.0:
        return a
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if b.is_zero():
        raise ZeroDivisionError("division by the zero expression")
    if a.is_zero():
        return ZERO
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value / b.value)
    if isinstance(b, Const) and b.value == 1.0:
        return a
    return Div(a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def _pow(a: Expr, n: float) -> Expr:
    if n == 0.0:
        return ONE
    if n == 1.0:
        return a
    if isinstance(a, Const):
        return Const(a.value ** n)
    return Pow(a, n)


def exp(a) -> Expr:
    a = as_expr(a)
    if isinstance(a, Const):
        return Const(math.exp(a.value))
    return Exp(a)


def sin(a) -> Expr:
    a = as_expr(a)
    if isinstance(a, Const):
        return Const(math.sin(a.value))
    return Sin(a)


def cos(a) -> Expr:
    a = as_expr(a)
    if isinstance(a, Const):
        return Const(math.cos(a.value))
    return Cos(a)


def sqrt(a) -> Expr:
    a = as_expr(a)
    if isinstance(a, Const):
        return Const(math.sqrt(a.value))
    return Sqrt(a)


# ---------------------------------------------------------------------------
# Parser for the component-expression grammar used in structure files:
# +, -, *, /, ^ (constant exponent), exp, sin, cos, sqrt, numeric literals,
# the named constants pi and e, and coordinate names.  The unicode signs
# "×", "÷" and "−" are accepted as aliases for *, / and -.
# ---------------------------------------------------------------------------


class ExpressionSyntaxError(ValueError):
    """Parse failure, carrying 1-based line and column of the offence."""

    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


_FUNCTIONS = {"exp": exp, "sin": sin, "cos": cos, "sqrt": sqrt}
_NAMED_CONSTANTS = {"pi": math.pi, "e": math.e}


class _Token:
    __slots__ = ("kind", "text", "column")

    def __init__(self, kind: str, text: str, column: int):
        self.kind = kind
        self.text = text
        self.column = column


def _tokenize(text: str, line: int) -> list[_Token]:
    tokens: list[_Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        col = i + 1
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()×÷−":
            canonical = {"×": "*", "÷": "/", "−": "-"}.get(ch, ch)
            tokens.append(_Token("op", canonical, col))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            seen_e = False
            while j < n and (text[j].isdigit() or text[j] == "." or
                             (text[j] in "eE" and j + 1 < n and
                              (text[j + 1].isdigit() or text[j + 1] in "+-") and not seen_e)):
                if text[j] in "eE":
                    seen_e = True
                    j += 1  # consume the exponent sign or first digit too
                j += 1
            lit = text[i:j]
            try:
                float(lit)
            except ValueError:
                raise ExpressionSyntaxError(f"bad numeric literal {lit!r}", line, col)
            tokens.append(_Token("number", lit, col))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(_Token("name", text[i:j], col))
            i = j
            continue
        raise ExpressionSyntaxError(f"unexpected character {ch!r}", line, col)
    tokens.append(_Token("end", "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], coords: dict[str, int], line: int):
        self.tokens = tokens
        self.pos = 0
        self.coords = coords
        self.line = line

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def next(self) -> _Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: _Token):
        raise ExpressionSyntaxError(message, self.line, tok.column)

    def parse(self) -> Expr:
        e = self.expression()
        tok = self.peek()
        if tok.kind != "end":
            self.fail(f"unexpected trailing input {tok.text!r}", tok)
        return e

    def expression(self) -> Expr:
        e = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            op = self.next().text
            rhs = self.term()
            e = e + rhs if op == "+" else e - rhs
        return e

    def term(self) -> Expr:
        e = self.unary()
        while self.peek().kind == "op" and self.peek().text in "*/":
            op = self.next().text
            rhs = self.unary()
            e = e * rhs if op == "*" else e / rhs
        return e

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            return -self.unary()
        if tok.kind == "op" and tok.text == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.peek().kind == "op" and self.peek().text == "^":
            op_tok = self.next()
            # right associative, allow a leading sign on the exponent
            exponent = self.unary_power_operand()
            if not isinstance(exponent, Const):
                self.fail("exponent must be a constant", op_tok)
            return base ** exponent.value
        return base

    def unary_power_operand(self) -> Expr:
        tok = self.peek()
        if tok.kind == "op" and tok.text == "-":
            self.next()
            inner = self.unary_power_operand()
            return -inner
        return self.power()

    def atom(self) -> Expr:
        tok = self.next()
        if tok.kind == "number":
            return Const(float(tok.text))
        if tok.kind == "name":
            name = tok.text
            if self.peek().kind == "op" and self.peek().text == "(":
                if name not in _FUNCTIONS:
                    self.fail(f"unknown function {name!r}", tok)
                self.next()
                arg = self.expression()
                close = self.next()
                if not (close.kind == "op" and close.text == ")"):
                    self.fail("expected ')'", close)
                return _FUNCTIONS[name](arg)
            if name in self.coords:
                return Coord(self.coords[name], name)
            if name in _NAMED_CONSTANTS:
                return Const(_NAMED_CONSTANTS[name])
            self.fail(f"unknown name {name!r}", tok)
        if tok.kind == "op" and tok.text == "(":
            e = self.expression()
            close = self.next()
            if not (close.kind == "op" and close.text == ")"):
                self.fail("expected ')'", close)
            return e
        self.fail(f"unexpected token {tok.text!r}", tok)


def parse_expression(text: str, coord_names: Sequence[str], line: int = 1) -> Expr:
    """Parse one component expression.

    ``coord_names`` fixes the admissible coordinate symbols and their slot
    order.  ``line`` is only used to report error positions.
    """
    coords = {name: i for i, name in enumerate(coord_names)}
    tokens = _tokenize(text, line)
    return _Parser(tokens, coords, line).parse()

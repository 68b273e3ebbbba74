"""Expression language for polynomials and forms.

Grammar (lowest precedence first)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/' | '.') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom ('^' unary)?          right associative
    atom   := NUMBER [atom] | NAME | '(' expr ')'

``*`` multiplies on the right, ``.`` acts from the left (function on the
left), and ``^`` is a power on polynomials or the wedge of two 1-forms.
A number directly followed by a name or parenthesis multiplies it
(``2x``).  Names are ``x``, ``dx``, ``w`` (and ``w2``, ``w3``, ... for
higher invariant forms), ``dxdx`` and ``dxw``; inside ``--m`` the only
name is ``l``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Poly, X
from .calculus import OneForm, act_left, act_right
from .errors import DomainError, ExprSyntaxError, UnknownTokenError, UnsupportedSpecError
from .exterior import QuadSpec, TwoForm, left_act_two, wedge


class ExprTypeError(ExprSyntaxError):
    """Operands of the wrong kind for an operator."""


@dataclass(frozen=True)
class Num:
    value: int
    pos: int


@dataclass(frozen=True)
class Name:
    name: str
    pos: int


@dataclass(frozen=True)
class Neg:
    operand: object
    pos: int


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([-+*/.^()]))")

FORM_NAMES = re.compile(r"^(x|dx|w\d*|dxdx|dxw)$")


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        mt = _TOKEN.match(text, i)
        if not mt:
            raise UnknownTokenError(f"unexpected character {text[i]!r}", *_position(text, i))
        start = mt.start(mt.lastindex)
        if mt.group(1):
            tokens.append(("num", mt.group(1), start))
        elif mt.group(2):
            tokens.append(("name", mt.group(2), start))
        else:
            tokens.append(("op", mt.group(3), start))
        i = mt.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names):
        self.text = text
        self.names = names
        self.tokens = tokenize(text)
        self.i = 0

    def error(self, message, offset, cls=ExprSyntaxError):
        return cls(message, *_position(self.text, offset))

    @property
    def tok(self):
        return self.tokens[self.i]

    def take(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, value):
        kind, text, pos = self.tok
        if kind != "op" or text != value:
            what = "end of input" if kind == "eof" else repr(text)
            raise self.error(f"expected {value!r}, found {what}", pos)
        self.take()

    def parse(self):
        node = self.expr()
        kind, text, pos = self.tok
        if kind != "eof":
            raise self.error(f"unexpected {text!r}", pos)
        return node

    def expr(self):
        node = self.term()
        while self.tok[0] == "op" and self.tok[1] in "+-":
            _, op, pos = self.take()
            node = BinOp(op, node, self.term(), pos)
        return node

    def term(self):
        node = self.unary()
        while self.tok[0] == "op" and self.tok[1] in "*/.":
            _, op, pos = self.take()
            node = BinOp(op, node, self.unary(), pos)
        return node

    def unary(self):
        kind, text, pos = self.tok
        if kind == "op" and text in "+-":
            self.take()
            operand = self.unary()
            return Neg(operand, pos) if text == "-" else operand
        return self.power()

    def power(self):
        base = self.atom()
        kind, text, pos = self.tok
        if kind == "op" and text == "^":
            self.take()
            return BinOp("^", base, self.unary(), pos)
        return base

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            node = Num(int(text), pos)
            nxt = self.tok
            if nxt[0] == "name" or (nxt[0] == "op" and nxt[1] == "("):
                return BinOp("*", node, self.power(), nxt[2])
            return node
        if kind == "name":
            if not self.names.match(text):
                raise self.error(f"unknown name {text!r}", pos, UnknownTokenError)
            return Name(text, pos)
        if kind == "op" and text == "(":
            node = self.expr()
            self.expect(")")
            return node
        what = "end of input" if kind == "eof" else repr(text)
        raise self.error(f"unexpected {what}", pos)


def parse(text, names=FORM_NAMES):
    """Parse *text* into an AST; errors carry 1-based line and column."""
    return _Parser(text, names).parse()


class Evaluator:
    """Evaluate ASTs to ``Poly``, ``OneForm`` or ``TwoForm`` in one calculus."""

    def __init__(self, text, calculus, variable="x"):
        self.text = text
        self.calculus = calculus
        self.variable = variable

    def error(self, message, pos):
        return ExprTypeError(message, *_position(self.text, pos))

    def quad(self, pos):
        try:
            return QuadSpec.from_calculus(self.calculus)
        except UnsupportedSpecError as exc:
            raise UnsupportedSpecError(f"{exc} (at column {_position(self.text, pos)[1]})") from exc

    def name(self, node):
        n = node.name
        if n == self.variable:
            return X
        if self.calculus is None:
            raise self.error(f"forms are not allowed here: {n!r}", node.pos)
        if n in ("dxdx", "dxw"):
            spec = self.quad(node.pos)
            one = Poly.const(1)
            return TwoForm(one, Poly(), spec) if n == "dxdx" else TwoForm(Poly(), one, spec)
        index = 0 if n == "dx" else (1 if n == "w" else int(n[1:]))
        if index >= self.calculus.degree or (n != "w" and n != "dx" and index < 2):
            raise UnsupportedSpecError(
                f"{n!r} is not an invariant form of a calculus of dimension {self.calculus.degree}"
            )
        return OneForm.basis(self.calculus, index)

    def __call__(self, node):
        if isinstance(node, Num):
            return Poly.const(node.value)
        if isinstance(node, Name):
            return self.name(node)
        if isinstance(node, Neg):
            return -self(node.operand)
        left, right = self(node.left), self(node.right)
        return getattr(self, "_" + {"+": "add", "-": "sub", "*": "mul", "/": "div", ".": "act", "^": "pow"}[node.op])(
            left, right, node.pos
        )

    def _same_kind(self, a, b, pos, op):
        if type(a) is not type(b):
            raise self.error(f"cannot {op} {_kind(a)} and {_kind(b)}", pos)

    def _add(self, a, b, pos):
        self._same_kind(a, b, pos, "add")
        return a + b

    def _sub(self, a, b, pos):
        self._same_kind(a, b, pos, "subtract")
        return a - b

    def _mul(self, a, b, pos):
        if isinstance(b, Poly):
            if isinstance(a, Poly):
                return a * b
            if isinstance(a, OneForm):
                return act_right(a, b)
            return a * b
        if isinstance(a, Poly) and a.is_constant():
            return _scale(b, a.coeff(0))
        raise self.error(f"'*' multiplies on the right; use '.' to act by a function from the left", pos)

    def _div(self, a, b, pos):
        if not isinstance(b, Poly) or not b.is_constant():
            raise self.error("can only divide by a rational constant", pos)
        if not b:
            raise DomainError("division by zero")
        return _scale(a, 1 / b.coeff(0))

    def _act(self, a, b, pos):
        if not isinstance(a, Poly):
            raise self.error(f"'.' needs a function on the left, got {_kind(a)}", pos)
        if isinstance(b, Poly):
            return a * b
        if isinstance(b, OneForm):
            return act_left(a, b)
        return left_act_two(a, b)

    def _pow(self, a, b, pos):
        if isinstance(a, Poly) and isinstance(b, Poly):
            e = b.coeff(0)
            if not b.is_constant() or e.denominator != 1 or e < 0:
                raise self.error("exponent must be a non-negative integer", pos)
            return a ** int(e)
        if isinstance(a, OneForm) and isinstance(b, OneForm):
            return wedge(a, b, self.quad(pos))
        raise self.error(f"'^' is a power of a polynomial or a wedge of 1-forms, got {_kind(a)} and {_kind(b)}", pos)


def _kind(v):
    return {Poly: "a polynomial", OneForm: "a 1-form", TwoForm: "a 2-form"}[type(v)]


def _scale(v, c):
    if isinstance(v, OneForm):
        return v.scale(c)
    return v * c


def evaluate(text, calculus):
    """Parse and evaluate a polynomial or form expression."""
    return Evaluator(text, calculus)(parse(text))


def parse_poly(text, variable="x"):
    """Parse a polynomial in one variable (``x``, or ``l`` for minimal polynomials)."""
    names = re.compile(rf"^{re.escape(variable)}$")
    value = Evaluator(text, None, variable)(parse(text, names))
    return value


def parse_rational(text):
    value = parse_poly(text)
    if not value.is_constant():
        raise ExprSyntaxError(f"expected a rational number, got {text!r}", 1, 1)
    return value.coeff(0)


def form_names(degree):
    return ["dx", "w"][:degree] + [f"w{i}" for i in range(2, degree)]


def format_value(v):
    """Canonical text: ``dx*(p) + w*(q)`` for 1-forms, ``dxdx*(p) + dxw*(q)`` for 2-forms."""
    if isinstance(v, Poly):
        return v.format("x")
    if isinstance(v, OneForm):
        return " + ".join(f"{n}*({c})" for n, c in zip(form_names(v.spec.degree), v.coeffs))
    if isinstance(v, TwoForm):
        return f"dxdx*({v.F0}) + dxw*({v.F1})"
    if isinstance(v, Fraction):
        return str(v)
    raise TypeError(f"cannot format {type(v).__name__}")

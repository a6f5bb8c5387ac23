"""Small expression language for CLI arguments and input files.

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | factor
    factor := atom ('^' uint)*
    atom   := rational | ident | '[' expr ',' expr ']' | '(' expr ')'
              | 'd/d' ident | ident '(' expr ')'

Rationals are ``3`` or ``3/4``.  ``d/dz`` is the coordinate derivation (only
meaningful for vector fields) and ``j(f)`` the jet prolongation (only for
jets).  Positions in error messages are 1-based; the end of input is
``len + 1``.
"""

from __future__ import annotations

import difflib
import re
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .core import InputError

__all__ = ["ParseError", "tokenize", "parse", "evaluate", "parse_and_eval", "names_of"]


class ParseError(InputError):
    def __init__(self, msg, pos):
        super().__init__("%s at position %d" % (msg, pos))
        self.pos = pos


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<deriv>d/d[A-Za-z_][A-Za-z0-9_]*)"
                    r"|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^\[\](),]))")


def tokenize(src: str) -> List[Tuple[str, str, int]]:
    out = []
    i = 0
    n = len(src)
    while i < n:
        if src[i].isspace():
            i += 1
            continue
        m = _TOKEN.match(src, i)
        if not m or m.end() == i:
            raise ParseError("unexpected character %r" % src[i], i + 1)
        kind = m.lastgroup
        text = m.group(kind)
        pos = m.start(kind) + 1
        out.append((kind, text, pos))
        i = m.end()
    out.append(("end", "", n + 1))
    return out


class _Parser:
    def __init__(self, src):
        self.toks = tokenize(src)
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect(self, text):
        t = self.take()
        if t[1] != text or t[0] == "end":
            raise ParseError("expected %r" % text, t[2])
        return t

    def expr(self):
        node = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            rhs = self.term()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def term(self):
        node = self.unary()
        while self.peek()[1] == "*" and self.peek()[0] == "op":
            self.take()
            node = ("mul", node, self.unary())
        return node

    def unary(self):
        if self.peek()[1] == "-" and self.peek()[0] == "op":
            self.take()
            return ("neg", self.unary())
        return self.factor()

    def factor(self):
        node = self.atom()
        while self.peek()[1] == "^" and self.peek()[0] == "op":
            self.take()
            t = self.take()
            if t[0] != "num" or "/" in t[1]:
                raise ParseError("exponent must be a non-negative integer", t[2])
            node = ("pow", node, int(t[1]))
        return node

    def atom(self):
        kind, text, pos = self.take()
        if kind == "num":
            return ("num", Fraction(text), pos)
        if kind == "deriv":
            return ("d", text[3:], pos)
        if kind == "id":
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                self.take()
                arg = self.expr()
                self.expect(")")
                return ("call", text, arg, pos)
            return ("id", text, pos)
        if text == "(":
            node = self.expr()
            self.expect(")")
            return node
        if text == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            return ("br", a, b)
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError("unexpected %r" % text, pos)


def names_of(node) -> List[Tuple[str, int]]:
    """Identifiers with positions, in order of appearance."""
    out = []

    def walk(n):
        if n[0] == "id":
            out.append((n[1], n[2]))
        elif n[0] == "d":
            out.append((n[1], n[2] + 3))
        elif n[0] == "call":
            walk(n[2])
        elif n[0] in ("add", "sub", "mul", "br"):
            walk(n[1])
            walk(n[2])
        elif n[0] in ("neg", "pow"):
            walk(n[1])

    walk(node)
    return out


def parse(source: str, names: Optional[Sequence[str]] = None):
    """AST of ``source``; identifiers are checked against ``names`` if given."""
    p = _Parser(source)
    node = p.expr()
    t = p.peek()
    if t[0] != "end":
        raise ParseError("unexpected %r" % t[1], t[2])
    if names is not None:
        known = set(names)
        for n, pos in names_of(node):
            if n not in known:
                close = difflib.get_close_matches(n, sorted(known), n=1)
                hint = "; did you mean %r?" % close[0] if close else ""
                raise ParseError("unknown identifier %r%s" % (n, hint), pos)
    return node


def evaluate(node, sem):
    """Fold the AST with a semantics object (num, ident, add, sub, neg, mul,
    pow, bracket, deriv, call)."""
    op = node[0]
    if op == "num":
        return sem.num(node[1])
    if op == "id":
        return sem.ident(node[1], node[2])
    if op == "d":
        return sem.deriv(node[1], node[2])
    if op == "call":
        return sem.call(node[1], evaluate(node[2], sem), node[3])
    if op == "add":
        return sem.add(evaluate(node[1], sem), evaluate(node[2], sem))
    if op == "sub":
        return sem.sub(evaluate(node[1], sem), evaluate(node[2], sem))
    if op == "neg":
        return sem.neg(evaluate(node[1], sem))
    if op == "mul":
        return sem.mul(evaluate(node[1], sem), evaluate(node[2], sem))
    if op == "pow":
        return sem.pow(evaluate(node[1], sem), node[2])
    if op == "br":
        return sem.bracket(evaluate(node[1], sem), evaluate(node[2], sem))
    raise InputError("bad node %r" % (op,))


class Semantics:
    """Default arithmetic through Python operators."""

    names: Sequence[str] = ()

    def num(self, c):
        return c

    def ident(self, name, pos):
        raise ParseError("unknown identifier %r" % name, pos)

    def deriv(self, name, pos):
        raise ParseError("derivation d/d%s not allowed here" % name, pos)

    def call(self, name, arg, pos):
        raise ParseError("function %r not allowed here" % name, pos)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def pow(self, a, k):
        out = self.num(Fraction(1))
        for _ in range(k):
            out = self.mul(out, a)
        return out

    def bracket(self, a, b):
        raise InputError("brackets are not defined here")


class UESemantics(Semantics):
    """Expressions in U(g); brackets are graded commutators."""

    def __init__(self, alg):
        from .ue import UElement

        self.alg = alg
        self.U = UElement
        self.names = list(alg.labels)

    def num(self, c):
        return self.U.scalar(self.alg, c)

    def ident(self, name, pos):
        return self.U.gen(self.alg, name)

    def bracket(self, a, b):
        from .ue import mono_parity

        out = self.U.zero(self.alg)
        parts_a = _by_parity(a, lambda m: mono_parity(self.alg, m))
        parts_b = _by_parity(b, lambda m: mono_parity(self.alg, m))
        for pa, xa in parts_a.items():
            for pb, xb in parts_b.items():
                s = -1 if pa and pb else 1
                out = out + xa * xb - s * (xb * xa)
        return out


def _by_parity(el, parity):
    parts = {}
    for m, c in el.terms.items():
        parts.setdefault(parity(m), {})[m] = c
    return {p: type(el)(el.alg, t) for p, t in parts.items()}


class LieSemantics(Semantics):
    """Expressions in g itself: linear combinations and brackets only."""

    def __init__(self, alg):
        self.alg = alg
        self.names = list(alg.labels)

    def num(self, c):
        return ("scalar", c)

    def _vec(self, a):
        if isinstance(a, tuple):
            if a[1] == 0:
                return self.alg.zero()
            raise InputError("a nonzero scalar is not an element of the Lie algebra")
        return a

    def ident(self, name, pos):
        return self.alg.gen(name)

    def add(self, a, b):
        if isinstance(a, tuple) and isinstance(b, tuple):
            return ("scalar", a[1] + b[1])
        return self._vec(a) + self._vec(b)

    def sub(self, a, b):
        if isinstance(a, tuple) and isinstance(b, tuple):
            return ("scalar", a[1] - b[1])
        return self._vec(a) - self._vec(b)

    def neg(self, a):
        return ("scalar", -a[1]) if isinstance(a, tuple) else -a

    def mul(self, a, b):
        if isinstance(a, tuple) and isinstance(b, tuple):
            return ("scalar", a[1] * b[1])
        if isinstance(a, tuple):
            return a[1] * b
        if isinstance(b, tuple):
            return b[1] * a
        raise InputError("products of Lie algebra elements are not Lie algebra elements; use [a,b]")

    def pow(self, a, k):
        if isinstance(a, tuple):
            return ("scalar", a[1] ** k)
        if k == 1:
            return a
        raise InputError("powers are not defined in a Lie algebra")

    def bracket(self, a, b):
        return self.alg.bracket(self._vec(a), self._vec(b))


class PolySemantics(Semantics):
    def __init__(self, ring, order=None):
        self.ring = ring
        self.order = order
        self.names = [v.name for v in ring.vars]

    def num(self, c):
        return self.ring.const(c, order=self.order)

    def ident(self, name, pos):
        return self.ring.var(name, order=self.order)


def parse_and_eval(source: str, context):
    """Parse and evaluate against a LieAlgebra (U(g) element), a PolyRing,
    or any object with ``semantics()``."""
    from .lie import LieAlgebra
    from .poly import PolyRing

    if isinstance(context, LieAlgebra):
        sem = UESemantics(context)
    elif isinstance(context, PolyRing):
        sem = PolySemantics(context)
    elif isinstance(context, Semantics):
        sem = context
    else:
        sem = context.semantics()
    node = parse(source, sem.names)
    return evaluate(node, sem)

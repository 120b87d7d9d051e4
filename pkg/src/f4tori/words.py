"""Small languages used by the certificate data.

* q-expressions: integer arithmetic in q (and the sign e = +-1) written with
  ``^`` for powers, e.g. ``(q^2+1)*(q-1)`` or ``(e*q+3)/2``.  Torus coordinates
  use the same syntax with the extra symbols ``z`` (the chosen root of -1) and
  any auxiliary monomials such as ``eta``; they evaluate to sign * z^exponent.
* group words: products of atoms ``n21``, ``h3``, ``n0``, single letters and
  capitalised names (``a``, ``H1``), with ``x^k`` powers, ``x^{y}`` for
  y x y^-1, ``[x,y]`` for x y x^-1 y^-1 and parentheses.  A relation is a
  chain ``u = v = ... = w`` of such words.
"""
from __future__ import annotations

import ast
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Generic, Mapping, TypeVar


class ExpressionError(ValueError):
    pass


@dataclass(frozen=True)
class Monomial:
    """sign * z^exp."""

    sign: int
    exp: Fraction

    def __mul__(self, other):
        if isinstance(other, Monomial):
            return Monomial(self.sign * other.sign, self.exp + other.exp)
        if other in (1, -1):
            return Monomial(self.sign * int(other), self.exp)
        raise ExpressionError("monomials can only be scaled by +-1")

    __rmul__ = __mul__

    def __neg__(self):
        return Monomial(-self.sign, self.exp)

    def __truediv__(self, other):
        return self * other ** -1

    def __pow__(self, k):
        k = Fraction(k)
        if self.sign == -1 and k.denominator != 1:
            raise ExpressionError("fractional power of a negated monomial")
        sign = self.sign ** int(k) if k.denominator == 1 else 1
        return Monomial(sign, self.exp * k)


_ONE = Monomial(1, Fraction(0))

_BINOPS: dict[type, Callable] = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}


def _ev(node, env: Mapping[str, object]):
    if isinstance(node, ast.Expression):
        return _ev(node.body, env)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name):
        if node.id not in env:
            raise ExpressionError(f"unknown symbol {node.id!r}")
        v = env[node.id]
        return v if isinstance(v, Monomial) else Fraction(v)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _ev(node.operand, env)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        a, b = _ev(node.left, env), _ev(node.right, env)
        if isinstance(a, Monomial) or isinstance(b, Monomial):
            if isinstance(node.op, (ast.Add, ast.Sub)):
                raise ExpressionError("cannot add monomials")
            if isinstance(node.op, ast.Pow) and isinstance(b, Monomial):
                raise ExpressionError("monomial exponent")
            if isinstance(node.op, ast.Pow) and not isinstance(a, Monomial):
                raise ExpressionError("power of a number by a monomial")
        if isinstance(node.op, ast.Pow) and not isinstance(a, Monomial):
            if b.denominator != 1:
                raise ExpressionError("non-integral exponent of a number")
            return a ** int(b)
        return _BINOPS[type(node.op)](a, b)
    if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id == "gcd":
        args = [_ev(x, env) for x in node.args]
        if any(isinstance(x, Monomial) or x.denominator != 1 for x in args):
            raise ExpressionError("gcd of non-integers")
        return Fraction(gcd(*[int(x) for x in args]))
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def evaluate(expr: str | int, **env) -> Fraction | Monomial:
    if isinstance(expr, int):
        return Fraction(expr)
    try:
        tree = ast.parse(str(expr).replace("^", "**"), mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {expr!r}") from exc
    return _ev(tree, env)


def eval_int(expr: str | int, **env) -> int:
    v = evaluate(expr, **env)
    if isinstance(v, Monomial) or v.denominator != 1:
        raise ExpressionError(f"{expr!r} is not an integer at {env}")
    return int(v)


def eval_bool(expr: str, q: int, e: int = 1) -> bool:
    """Conditions are written as ``lhs == rhs`` or ``lhs != rhs`` with ``%``."""
    m = re.fullmatch(r"\s*(.+?)\s*%\s*(\d+)\s*(==|!=)\s*(-?\d+)\s*", expr)
    if not m:
        raise ExpressionError(f"bad condition {expr!r}")
    lhs = eval_int(m.group(1), q=q, e=e) % int(m.group(2))
    rhs = int(m.group(4)) % int(m.group(2))
    return (lhs == rhs) == (m.group(3) == "==")


def eval_monomial(expr: str, q: int, e: int = 1, aux: Mapping[str, str] | None = None) -> Monomial:
    """A torus coordinate: an expression in z (and aux monomials) with sign."""
    env: dict[str, object] = {"q": q, "e": e, "z": Monomial(1, Fraction(1))}
    for name, body in (aux or {}).items():
        env[name] = evaluate(body, **env)
    v = evaluate(expr, **env)
    if not isinstance(v, Monomial):
        if v not in (1, -1):
            raise ExpressionError(f"coordinate {expr!r} is a number other than +-1")
        v = Monomial(int(v), Fraction(0))
    if v.exp.denominator != 1:
        raise ExpressionError(f"coordinate {expr!r} has a fractional exponent at q={q}")
    return v


# -- group words --------------------------------------------------------------

G = TypeVar("G")


class WordError(ValueError):
    pass


class GroupAdapter(Generic[G]):
    """What the word evaluator needs from a group."""

    def identity(self) -> G:
        raise NotImplementedError

    def mul(self, a: G, b: G) -> G:
        raise NotImplementedError

    def inv(self, a: G) -> G:
        raise NotImplementedError

    def atom(self, name: str) -> G:
        raise NotImplementedError

    def eq(self, a: G, b: G) -> bool:
        return a == b

    def power(self, a: G, k: int) -> G:
        base = a if k >= 0 else self.inv(a)
        out = self.identity()
        for _ in range(abs(k)):
            out = self.mul(out, base)
        return out


_TOKEN = re.compile(r"\s*(?:(?P<atom>[hn]\d+|[A-Z]\d*|[a-z])|(?P<int>-?\d+)|(?P<sym>[\^\[\]\(\)\{\},*]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WordError(f"unexpected character at {text[pos:]!r}")
        kind = m.lastgroup
        out.append((kind, m.group(kind)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens, adapter: GroupAdapter):
        self.t = tokens
        self.i = 0
        self.g = adapter

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise WordError(f"expected {value!r}, got {tok[1]!r}")
        self.i += 1
        return tok

    def word(self):
        out = self.g.identity()
        seen = False
        while True:
            kind, val = self.peek()
            if kind == "sym" and val == "*":
                self.take()
                continue
            if kind in ("atom", "int") or (kind == "sym" and val in "([") :
                out = self.g.mul(out, self.factor())
                seen = True
            else:
                break
        if not seen:
            raise WordError("empty word")
        return out

    def factor(self):
        base = self.primary()
        while self.peek() == ("sym", "^"):
            self.take()
            kind, val = self.peek()
            if kind == "int":
                self.take()
                base = self.g.power(base, int(val))
            elif (kind, val) == ("sym", "{"):
                self.take()
                y = self.word()
                self.take("}")
                base = self.g.mul(self.g.mul(y, base), self.g.inv(y))
            else:
                raise WordError("expected exponent or {conjugator}")
        return base

    def primary(self):
        kind, val = self.take()
        if kind == "atom":
            return self.g.atom(val)
        if kind == "int":
            if val != "1":
                raise WordError(f"integer {val} is not a group element")
            return self.g.identity()
        if val == "(":
            x = self.word()
            self.take(")")
            return x
        if val == "[":
            x = self.word()
            self.take(",")
            y = self.word()
            self.take("]")
            return self.g.mul(self.g.mul(x, y), self.g.mul(self.g.inv(x), self.g.inv(y)))
        raise WordError(f"unexpected {val!r}")


def parse_word(text: str, adapter: GroupAdapter[G]) -> G:
    p = _Parser(_tokenize(text), adapter)
    out = p.word()
    if p.i != len(p.t):
        raise WordError(f"trailing input in {text!r}")
    return out


def word_atoms(text: str) -> set[str]:
    return {v for k, v in _tokenize(text) if k == "atom"}


def check_chain(text: str, adapter: GroupAdapter[G]) -> tuple[bool, list[G]]:
    """Evaluate every member of ``u = v = ...``; True iff all are equal."""
    parts = [parse_word(p, adapter) for p in text.split("=")]
    return all(adapter.eq(parts[0], x) for x in parts[1:]), parts


class AliasAdapter(GroupAdapter[G]):
    """Wraps an adapter so that lowercase/capitalised names expand to words or
    to fixed elements."""

    def __init__(self, base: GroupAdapter[G], aliases: Mapping[str, object]):
        self.base = base
        self.aliases = dict(aliases)
        self._cache: dict[str, G] = {}

    def identity(self):
        return self.base.identity()

    def mul(self, a, b):
        return self.base.mul(a, b)

    def inv(self, a):
        return self.base.inv(a)

    def eq(self, a, b):
        return self.base.eq(a, b)

    def power(self, a, k):
        return self.base.power(a, k)

    def atom(self, name):
        if name in self._cache:
            return self._cache[name]
        if name in self.aliases:
            v = self.aliases[name]
            val = parse_word(v, self) if isinstance(v, str) else v
            self._cache[name] = val
            return val
        return self.base.atom(name)

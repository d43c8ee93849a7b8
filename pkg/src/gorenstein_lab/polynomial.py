"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a dict mapping exponent tuples to nonzero field elements,
wrapped together with its :class:`PolyRing`.  The ring fixes the variable
names, their (positive integer) degrees, the coefficient field and the term
order.
"""

from __future__ import annotations

import functools

import re
from typing import Callable, Iterable, Sequence

from .field import Field

Exponent = tuple


class ParseError(ValueError):
    """Syntax error in a polynomial string; ``pos`` is a 0-based offset."""

    def __init__(self, message: str, pos: int):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


def _grevlex_key(weights):
    def key(e):
        return (sum(w * a for w, a in zip(weights, e)), tuple(-a for a in reversed(e)))
    return key


def _lex_key(e):
    return e


def _elim_key(weights):
    # block order: the first variable dominates, ties broken by grevlex on the rest
    rest = _grevlex_key(weights[1:])

    def key(e):
        return (e[0], rest(e[1:]))
    return key


class PolyRing:
    """k[x_1, ..., x_n] with weighted degrees and a chosen term order."""

    ORDERS = ("grevlex", "lex", "elim")

    def __init__(
        self,
        variables: Sequence[str],
        field: Field | None = None,
        degrees: Sequence[int] | None = None,
        order: str = "grevlex",
    ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("duplicate variable names: %r" % (variables,))
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", v):
                raise ValueError("bad variable name %r" % v)
        if degrees is None:
            degrees = (1,) * len(variables)
        degrees = tuple(int(d) for d in degrees)
        if len(degrees) != len(variables) or any(d < 1 for d in degrees):
            raise ValueError("need one positive degree per variable")
        if order not in self.ORDERS:
            raise ValueError("unknown term order %r" % order)
        self.variables = variables
        self.field = field if field is not None else Field()
        self.degrees = degrees
        self.order = order
        self.nvars = len(variables)
        if order == "grevlex":
            self.key: Callable = _grevlex_key(degrees)
        elif order == "lex":
            self.key = _lex_key
        else:
            self.key = _elim_key(degrees)
        # exponent tuples recur constantly during reduction
        self.key = functools.lru_cache(maxsize=1 << 16)(self.key)
        self._index = {v: i for i, v in enumerate(variables)}

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
            and self.degrees == other.degrees
            and self.order == other.order
        )

    def __hash__(self):
        return hash((self.variables, self.field, self.degrees, self.order))

    def __repr__(self):
        return "PolyRing(%s over %r, %s)" % (",".join(self.variables), self.field, self.order)

    def with_order(self, order: str) -> "PolyRing":
        return PolyRing(self.variables, self.field, self.degrees, order)

    def with_field(self, field: Field) -> "PolyRing":
        return PolyRing(self.variables, field, self.degrees, self.order)

    # -- constructors ---------------------------------------------------

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(1)

    def const(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial(self, {(0,) * self.nvars: c} if c else {})

    def var(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        e = [0] * self.nvars
        e[i] = 1
        return Polynomial(self, {tuple(e): self.field(1)})

    def gens(self) -> list["Polynomial"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exp: Exponent, coeff=1) -> "Polynomial":
        c = self.field(coeff)
        return Polynomial(self, {tuple(exp): c} if c else {})

    def from_dict(self, terms: dict) -> "Polynomial":
        f = self.field
        return Polynomial(self, {tuple(e): f(c) for e, c in terms.items() if c})

    def index(self, name: str) -> int:
        return self._index[name]

    def mono_degree(self, e: Exponent) -> int:
        return sum(w * a for w, a in zip(self.degrees, e))

    def parse(self, text: str) -> "Polynomial":
        return _Parser(self, text).parse()

    def monomials_of_degree(self, deg: int) -> list[Exponent]:
        """All exponent vectors of weighted degree ``deg``, largest first."""
        out: list[Exponent] = []

        def rec(i, left, acc):
            if i == self.nvars - 1:
                w = self.degrees[i]
                if left % w == 0:
                    out.append(tuple(acc + [left // w]))
                return
            w = self.degrees[i]
            for a in range(left // w, -1, -1):
                rec(i + 1, left - a * w, acc + [a])

        if deg < 0:
            return []
        if self.nvars == 0:
            return [()] if deg == 0 else []
        rec(0, deg, [])
        out.sort(key=self.key, reverse=True)
        return out


class Polynomial:
    """Immutable sparse polynomial; ``terms`` never stores zero coefficients."""

    __slots__ = ("ring", "terms", "_lm", "_hash")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lm = None
        self._hash = None

    # -- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def lm(self) -> Exponent:
        if self._lm is None:
            if not self.terms:
                raise ValueError("zero polynomial has no leading monomial")
            self._lm = max(self.terms, key=self.ring.key)
        return self._lm

    def lc(self):
        return self.terms[self.lm()]

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda t: self.ring.key(t[0]), reverse=True)

    def degree(self) -> int:
        """Weighted total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(self.ring.mono_degree(e) for e in self.terms)

    def is_homogeneous(self) -> bool:
        return len({self.ring.mono_degree(e) for e in self.terms}) <= 1

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.field(0))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        c = self.lc()
        return Polynomial(self.ring, {e: v / c for e, v in self.terms.items()})

    def homogeneous_part(self, deg: int) -> "Polynomial":
        return Polynomial(self.ring, {e: c for e, c in self.terms.items() if self.ring.mono_degree(e) == deg})

    def to_ring(self, ring: PolyRing) -> "Polynomial":
        """Re-home into a ring with the same variables (e.g. another order or field)."""
        if ring.variables != self.ring.variables:
            raise ValueError("variable mismatch")
        f = ring.field
        return Polynomial(ring, {e: f(c) for e, c in self.terms.items() if f(c)})

    # -- arithmetic -----------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("polynomials live in different rings")
            return other
        return self.ring.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        t = dict(self.terms)
        for e, c in other.terms.items():
            v = t.get(e)
            v = c if v is None else v + c
            if v:
                t[e] = v
            else:
                t.pop(e, None)
        return Polynomial(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = self.ring.field(other)
            if not c:
                return self.ring.zero()
            return Polynomial(self.ring, {e: v * c for e, v in self.terms.items()})
        other = self._coerce(other)
        t: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = t.get(e)
                t[e] = c1 * c2 if v is None else v + c1 * c2
        return Polynomial(self.ring, {e: c for e, c in t.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, exp: Exponent, coeff=None) -> "Polynomial":
        if coeff is None:
            return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exp)): c for e, c in self.terms.items()})
        return Polynomial(
            self.ring, {tuple(a + b for a, b in zip(e, exp)): c * coeff for e, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            try:
                other = self.ring.const(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def exact_div(self, divisor: "Polynomial") -> "Polynomial":
        """Quotient of an exact division; raises if ``divisor`` does not divide."""
        if divisor.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        key = self.ring.key
        rem = dict(self.terms)
        q: dict = {}
        dlm = divisor.lm()
        dlc = divisor.terms[dlm]
        while rem:
            m = max(rem, key=key)
            if any(a < b for a, b in zip(m, dlm)):
                raise ValueError("inexact polynomial division")
            shift = tuple(a - b for a, b in zip(m, dlm))
            c = rem[m] / dlc
            q[shift] = c
            for e, v in divisor.terms.items():
                ee = tuple(a + b for a, b in zip(e, shift))
                nv = rem.get(ee, 0) - c * v
                if nv:
                    rem[ee] = nv
                else:
                    rem.pop(ee, None)
        return Polynomial(self.ring, q)

    def evaluate_at_origin(self):
        return self.constant_term()

    # -- printing -------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ring.variables
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                names[i] if a == 1 else "%s^%d" % (names[i], a) for i, a in enumerate(e) if a
            )
            s = str(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            if mono:
                body = mono if s == "1" else "%s*%s" % (s, mono)
            else:
                body = s
            parts.append(("-" if neg else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += " %s %s" % (sign, body)
        return out

    def __repr__(self):
        return "Polynomial(%s)" % self


_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S)")


class _Parser:
    """Recursive-descent parser for the ASCII polynomial grammar.

    expr  ::= ["-"] term {("+"|"-") term}
    term  ::= power {"*" power}
    power ::= atom ["^" integer]
    atom  ::= integer | var | "(" expr ")"
    """

    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        for m in _TOKEN.finditer(text):
            if m.group(1):
                self.tokens.append(("int", m.group(1), m.start(1)))
            elif m.group(2):
                self.tokens.append(("var", m.group(2), m.start(2)))
            elif m.group(3):
                self.tokens.append(("op", m.group(3), m.start(3)))
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.fail("empty expression")
        f = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            if tok[1] == "/":
                self.fail("division is not allowed")
            if tok[0] in ("var", "int") or tok[1] == "(":
                self.fail("implicit multiplication is not allowed; use '*'")
            self.fail("unexpected %r" % tok[1])
        return f

    def expr(self) -> Polynomial:
        neg = False
        if self.peek() == ("op", "-", self.peek()[2]):
            self.take()
            neg = True
        f = self.term()
        if neg:
            f = -f
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.power()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            f = f * self.power()
        return f

    def power(self) -> Polynomial:
        f = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                self.fail("expected an integer exponent", tok)
            f = f ** int(tok[1])
        return f

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, pos = tok
        if kind == "int":
            return self.ring.const(int(val))
        if kind == "var":
            if val not in self.ring._index:
                self.fail("unknown variable %r" % val, tok)
            return self.ring.var(val)
        if val == "(":
            f = self.expr()
            close = self.take()
            if close[1] != ")":
                self.fail("expected ')'", close)
            return f
        if val == "/":
            self.fail("division is not allowed", tok)
        if kind == "end":
            self.fail("unexpected end of input", tok)
        self.fail("unexpected %r" % val, tok)


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    return ring.parse(text)


def parse_many(texts: Iterable[str], ring: PolyRing) -> list[Polynomial]:
    return [ring.parse(t) for t in texts]

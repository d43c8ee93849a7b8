"""Coefficient fields: the rationals (via ``fractions.Fraction``) and prime fields.

Elements of both fields support the usual arithmetic operators, so the rest of
the package is written against plain ``+ - * /`` and never branches on the
field type.
"""

from __future__ import annotations

from fractions import Fraction


class ModP:
    """Residue class modulo a prime, stored canonically in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModP):
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.v == 0:
            raise ZeroDivisionError("division by zero in F_%d" % self.p)
        return ModP(o * pow(self.v, -1, self.p), self.p)

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        return ModP(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.v == other.v and self.p == other.p
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return "ModP(%d, %d)" % (self.v, self.p)

    def __str__(self):
        # symmetric representative reads better in printed polynomials
        v = self.v if self.v <= self.p // 2 else self.v - self.p
        return str(v)


class Field:
    """A coefficient field: ``Field()`` is Q, ``Field(p)`` is F_p."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or p >= 2**31 or not _is_prime(p):
                raise ValueError("F_p needs a prime p < 2^31, got %r" % (p,))
        self.p = p

    @property
    def is_rational(self) -> bool:
        return self.p is None

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    def __call__(self, value):
        if self.p is None:
            if isinstance(value, ModP):
                raise TypeError("cannot coerce a residue class into Q")
            return Fraction(value)
        if isinstance(value, ModP):
            return ModP(value.v, self.p)
        if isinstance(value, Fraction):
            return ModP(value.numerator, self.p) / value.denominator
        return ModP(int(value), self.p)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "Q" if self.p is None else "Fp:%d" % self.p

    def to_json(self):
        return "Q" if self.p is None else {"Fp": self.p}

    @classmethod
    def from_json(cls, obj) -> "Field":
        if obj in (None, "Q", "QQ"):
            return cls()
        if isinstance(obj, dict) and set(obj) == {"Fp"}:
            return cls(int(obj["Fp"]))
        raise ValueError("unknown field %r" % (obj,))

    @classmethod
    def from_flag(cls, text: str) -> "Field":
        """Parse the CLI form ``Q`` or ``Fp:<p>``."""
        text = text.strip()
        if text in ("Q", "QQ"):
            return cls()
        if text.startswith("Fp:"):
            return cls(int(text[3:]))
        raise ValueError("field flag must be Q or Fp:<p>, got %r" % text)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for q in small:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.3e24
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True

"""Coefficient rings: the integers, the rationals and the prime fields.

Scalars are plain Python objects supporting ``+ - *`` (``int``,
``Fraction``, :class:`ModP`).  A :class:`Ring` knows how to coerce into
its scalar type and how to divide exactly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


class ModP:
    """An integer modulo a prime ``p``."""

    __slots__ = ("r", "p")

    def __init__(self, r, p):
        self.r = int(r) % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixing residues mod %d and %d" % (self.p, other.p))
            return other.r
        if isinstance(other, Fraction):
            if other.denominator % self.p == 0:
                raise ZeroDivisionError("denominator divisible by %d" % self.p)
            return other.numerator * pow(other.denominator, -1, self.p)
        return int(other)

    def __add__(self, other):
        return ModP(self.r + self._lift(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return ModP(self.r - self._lift(other), self.p)

    def __rsub__(self, other):
        return ModP(self._lift(other) - self.r, self.p)

    def __mul__(self, other):
        return ModP(self.r * self._lift(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.r, self.p)

    def __pow__(self, e: int):
        return ModP(pow(self.r, e, self.p), self.p)

    def __truediv__(self, other):
        d = self._lift(other) % self.p
        if d == 0:
            raise ZeroDivisionError("division by zero mod %d" % self.p)
        return ModP(self.r * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return ModP(self._lift(other), self.p) / self

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.r == other.r
        if isinstance(other, (int, Fraction)):
            try:
                return self.r == self._lift(other) % self.p
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.r, self.p))

    def __bool__(self):
        return self.r != 0

    def __int__(self):
        return self.r

    def __repr__(self):
        return "%d mod %d" % (self.r, self.p)

    def __str__(self):
        return str(self.r)


@total_ordering
class Ring:
    """A coefficient ring ``Z``, ``Q`` or ``F_p``."""

    def __init__(self, kind: str, p: int | None = None):
        if kind not in ("Z", "Q", "Fp"):
            raise ValueError("unknown ring kind %r" % kind)
        if kind == "Fp":
            if p is None or p < 2 or any(p % q == 0 for q in range(2, int(p**0.5) + 1)):
                raise ValueError("F_p needs a prime p, got %r" % p)
        self.kind = kind
        self.p = p

    @property
    def name(self) -> str:
        return "Fp:%d" % self.p if self.kind == "Fp" else self.kind

    @property
    def is_field(self) -> bool:
        return self.kind != "Z"

    def __call__(self, x):
        return self.coerce(x)

    def coerce(self, x):
        if self.kind == "Q":
            return Fraction(x)
        if self.kind == "Z":
            if isinstance(x, Fraction):
                if x.denominator != 1:
                    raise ValueError("%s is not an integer" % x)
                return x.numerator
            if isinstance(x, ModP):
                raise TypeError("cannot coerce a residue into Z")
            return int(x)
        if isinstance(x, ModP):
            return ModP(x.r, self.p)
        return ModP(ModP(0, self.p)._lift(x), self.p)

    @property
    def zero(self):
        return self.coerce(0)

    @property
    def one(self):
        return self.coerce(1)

    def divide(self, a, b):
        """Exact quotient ``a / b``; raises ``ArithmeticError`` when it does not exist."""
        if self.kind == "Q":
            return Fraction(a) / Fraction(b)
        if self.kind == "Fp":
            return self.coerce(a) / self.coerce(b)
        q, r = divmod(int(a), int(b))
        if r:
            raise ArithmeticError("%s is not divisible by %s in Z" % (a, b))
        return q

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self.divide(self.coerce(int(num)), self.coerce(int(den)))
        return self.coerce(int(text))

    def format(self, x) -> str:
        if isinstance(x, ModP):
            return str(x.r)
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Ring) and (self.kind, self.p) == (other.kind, other.p)

    def __lt__(self, other):
        return (self.kind, self.p or 0) < (other.kind, other.p or 0)

    def __hash__(self):
        return hash((self.kind, self.p))

    def __repr__(self):
        return "Ring(%s)" % self.name


ZZ = Ring("Z")
QQ = Ring("Q")


def GF(p: int) -> Ring:
    return Ring("Fp", p)


def parse_ring(text: str) -> Ring:
    """Parse ``Z``, ``Q`` or ``Fp:<p>``."""
    text = text.strip()
    if text in ("Z", "ZZ"):
        return ZZ
    if text in ("Q", "QQ"):
        return QQ
    if text.startswith("Fp:"):
        return GF(int(text[3:]))
    raise ValueError("ring must be Z, Q or Fp:<p>, got %r" % text)

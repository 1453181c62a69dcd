"""Exact scalar arithmetic in capability tiers.

Every identity in this package is tested with exact equality, so the scalar
implementations must be exact: arbitrary-precision integers (the default),
rationals, and the Boolean semiring.  A float kind exists for benchmarking
only and is never used in equality-based tests.

Tiers:
  * semiring  -- zero, one, add, mul (Boolean lives here),
  * ring      -- adds neg/sub (integers, rationals),
  * domain    -- ring with no zero divisors, so cancellation holds.

Scalar *values* are plain Python objects (int, Fraction, bool, float); a
``ScalarKind`` bundles the operations on them.  Values are immutable and
freely shareable across threads.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterable

Scalar = Any


class ScalarKind:
    """Operations of one scalar algebra; subclasses fix the value type."""

    name: str = "?"
    is_ring = False     # has neg/sub
    is_domain = False   # ring without zero divisors
    is_exact = True     # exact equality is meaningful
    zero: Scalar = None
    one: Scalar = None

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        raise NotImplementedError

    def neg(self, a: Scalar) -> Scalar:
        raise TypeError(f"scalar kind {self.name!r} has no subtraction (semiring tier)")

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return self.add(a, self.neg(b))

    def pow(self, x: Scalar, e: int) -> Scalar:
        """x multiplied with itself e times; pow(x, 0) == one for every x.

        The empty-product convention 0^0 = 1 is deliberate: monoid-element
        exponents may be zero and the evaluation homomorphism must stay
        unital.
        """
        if e < 0:
            raise ValueError("exponent must be non-negative")
        acc = self.one
        for _ in range(e):
            acc = self.mul(acc, x)
        return acc

    def sum(self, xs: Iterable[Scalar]) -> Scalar:
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    def prod(self, xs: Iterable[Scalar]) -> Scalar:
        acc = self.one
        for x in xs:
            acc = self.mul(acc, x)
        return acc

    def is_zero(self, a: Scalar) -> bool:
        return a == self.zero

    def parse(self, text: str) -> Scalar:
        raise NotImplementedError

    def format(self, a: Scalar) -> str:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"<ScalarKind {self.name}>"


class IntegerKind(ScalarKind):
    """Arbitrary-precision integers (the default integral domain)."""

    name = "int"
    is_ring = True
    is_domain = True
    zero = 0
    one = 1

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def pow(self, x, e):
        if e < 0:
            raise ValueError("exponent must be non-negative")
        return x ** e

    def parse(self, text):
        return int(text.strip())

    def format(self, a):
        return str(a)


class RationalKind(ScalarKind):
    """Exact rationals; text form "p/q" with q > 0, gcd-reduced."""

    name = "rational"
    is_ring = True
    is_domain = True
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def pow(self, x, e):
        if e < 0:
            raise ValueError("exponent must be non-negative")
        return x ** e

    def parse(self, text):
        return Fraction(text.strip())

    def format(self, a):
        a = Fraction(a)
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"


class BooleanKind(ScalarKind):
    """The Boolean semiring: add = OR, mul = AND.

    Not a ring (1 has no additive inverse), which is exactly why the scalar
    layer is tiered.
    """

    name = "bool"
    is_ring = False
    is_domain = False
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def parse(self, text):
        t = text.strip()
        if t == "0":
            return False
        if t == "1":
            return True
        raise ValueError(f"not a Boolean literal: {text!r}")

    def format(self, a):
        return "1" if a else "0"


class FloatKind(ScalarKind):
    """Machine floats, for benchmarking only; excluded from equality tests."""

    name = "float"
    is_ring = True
    is_domain = False
    is_exact = False
    zero = 0.0
    one = 1.0

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def sub(self, a, b):
        return a - b

    def pow(self, x, e):
        if e < 0:
            raise ValueError("exponent must be non-negative")
        return x ** e

    def parse(self, text):
        return float(text)

    def format(self, a):
        return repr(a)


INT = IntegerKind()
RATIONAL = RationalKind()
BOOL = BooleanKind()
FLOAT = FloatKind()

KINDS = {k.name: k for k in (INT, RATIONAL, BOOL, FLOAT)}


def kind_by_name(name: str) -> ScalarKind:
    try:
        return KINDS[name]
    except KeyError:
        raise ValueError(f"unknown scalar kind {name!r}; choose from {sorted(KINDS)}") from None

"""Coefficient domains: exact rationals and the common domain interface.

Elements are plain data (``mpq``, ``int``, nested tuples); a domain object
carries the operations.  This keeps inner loops free of per-element wrapper
overhead and makes every value hashable and immutable.
"""

from __future__ import annotations

from gmpy2 import mpq, mpz

from .errors import DivisionByZeroError


class Domain:
    """Abstract field of coefficients.

    Subclasses provide ``zero``, ``one`` and the arithmetic methods.  All
    elements are canonical: two equal field elements compare equal as Python
    objects, so dict keys and structural equality are safe.
    """

    is_rational_field = False
    characteristic = 0

    def add(self, a, b):
        raise NotImplementedError

    def sub(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a):
        return a == self.zero

    def is_one(self, a):
        return a == self.one

    def from_int(self, n):
        raise NotImplementedError

    def from_mpq(self, q):
        raise NotImplementedError

    def to_str(self, a):
        return str(a)

    def elements_equal(self, a, b):
        return a == b


class RationalField(Domain):
    """The field Q; elements are ``gmpy2.mpq`` in lowest terms."""

    is_rational_field = True

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def __repr__(self):
        return "QQ"

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if not a:
            raise DivisionByZeroError("inverse of zero rational")
        return 1 / a

    def div(self, a, b):
        if not b:
            raise DivisionByZeroError("division by zero rational")
        return a / b

    def is_zero(self, a):
        return not a

    def from_int(self, n):
        return mpq(n)

    def from_mpq(self, q):
        return mpq(q)

    def to_str(self, a):
        return str(a)


QQ = RationalField()


def rational(num, den=1):
    """Exact rational ``num/den`` in lowest terms with positive denominator."""
    if den == 0:
        raise DivisionByZeroError("zero denominator")
    return mpq(num, den)


def rat_num(q) -> int:
    return int(mpq(q).numerator)


def rat_den(q) -> int:
    return int(mpq(q).denominator)


__all__ = ["Domain", "RationalField", "QQ", "rational", "rat_num", "rat_den", "mpq", "mpz"]

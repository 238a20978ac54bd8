"""Exact arithmetic and the non-Archimedean order on the rational-function tower.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import enum
import functools
import math
from fractions import Fraction

from kval.errors import DomainError
from kval.gamma import Ordering
from kval.polynomials import Poly, cancel


class Sign(enum.Enum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __str__(self):
        return self.name.capitalize()


class FieldElem(object):

    __slots__ = ('num', 'den')

    def __init__(self, num, den=None, reduced=False):
        """A quotient of polynomials in canonical form.

        The canonical form has coprime numerator and denominator and a denominator whose leading
        term (the largest monomial in the antilexicographic order) has coefficient 1. Zero is 0/1.

        Args:
            num (Poly): The numerator.
            den (Poly): The denominator, 1 when omitted.
            reduced (bool): Skip the gcd when the caller knows num and den are coprime.

        Raises:
            DomainError: If the denominator is zero.

        """
        if den is None:
            den = Poly.constant(1)
        if den.is_zero:
            raise DomainError('division by zero')
        if num.is_zero:
            num, den = Poly.constant(0), Poly.constant(1)
        elif not reduced:
            num, den = cancel(num, den)
        _, lead = den.leading_term()
        if lead != 1:
            num, den = num.scale(1 / lead), den.scale(1 / lead)
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, value):
        value = Fraction(value)
        return cls(Poly.constant(value), reduced=True)

    @classmethod
    def variable(cls, index, exponent=1):
        """Get X_index raised to an integer exponent."""
        if exponent >= 0:
            return cls(Poly.variable(index, exponent), reduced=True)
        return cls(Poly.constant(1), Poly.variable(index, -exponent), reduced=True)

    @classmethod
    def monomial(cls, value):
        """Get the monomial X^alpha with coefficient 1 whose valuation is a group element.

        Args:
            value (Gamma): A nonzero value.

        Returns:
            FieldElem: The positive monomial with that valuation.

        """
        up = {}
        down = {}
        for index, exponent in value.exponents:
            if exponent > 0:
                up[index] = exponent
            else:
                down[index] = -exponent
        return cls(_monomial_poly(up), _monomial_poly(down), reduced=True)

    @property
    def is_zero(self):
        return self.num.is_zero

    @property
    def is_constant(self):
        return self.num.is_constant and self.den.is_constant

    def rational(self):
        """Get the value of a constant element as a Fraction."""
        if not self.is_constant:
            raise DomainError('{0} is not a rational constant'.format(self))
        return self.num.constant_value / self.den.constant_value

    @property
    def max_var(self):
        return max(self.num.max_var, self.den.max_var)

    def sign(self):
        return Sign(self.num.sign() * self.den.sign())

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return FieldElem(self.num + other.num, self.den)
        return FieldElem(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.num, self.den, reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return FieldElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero:
            raise DomainError('division by zero')
        return FieldElem(self.den, self.num, reduced=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElem(self.num ** k, self.den ** k, reduced=True)

    def compare(self, other):
        return Ordering((self - _coerce(other)).sign().value)

    def __abs__(self):
        return -self if self.sign() is Sign.NEGATIVE else self

    def __lt__(self, other):
        return self.compare(other) is Ordering.LESS

    def __le__(self, other):
        return self.compare(other) is not Ordering.GREATER

    def __gt__(self, other):
        return self.compare(other) is Ordering.GREATER

    def __ge__(self, other):
        return self.compare(other) is not Ordering.LESS

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.num == other.num and self.den == other.den

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.num, self.den))

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        num, den = _integral(self.num, self.den)
        text = str(num)
        if len(num.terms) > 1:
            text = '({0})'.format(text)
        den_text = str(den)
        if len(den.terms) > 1 or '*' in den_text:
            den_text = '({0})'.format(den_text)
        return '{0}/{1}'.format(text, den_text)

    def __repr__(self):
        return 'FieldElem({0!r})'.format(str(self))


def _integral(num, den):
    """Scale a quotient to coprime integer coefficients with a positive leading denominator."""
    coeffs = list(num.terms.values()) + list(den.terms.values())
    common = functools.reduce(lambda x, y: x * y // math.gcd(x, y), (c.denominator for c in coeffs))
    content = functools.reduce(math.gcd, (c.numerator * common // c.denominator for c in coeffs))
    factor = Fraction(common, abs(content))
    return num.scale(factor), den.scale(factor)


def _monomial_poly(exponents):
    if not exponents:
        return Poly.constant(1)
    monomial = [0] * max(exponents)
    for index, exponent in exponents.items():
        monomial[index - 1] = exponent
    return Poly.monomial(monomial)


def _coerce(value):
    if isinstance(value, FieldElem):
        return value
    if isinstance(value, (int, Fraction)):
        return FieldElem.constant(value)
    return NotImplemented


def coerce(value):
    """Turn an int, Fraction or FieldElem into a FieldElem."""
    result = _coerce(value)
    if result is NotImplemented:
        raise DomainError('cannot use {0!r} as a field element'.format(value))
    return result


def elem_arith(op, a, b=None):
    """Apply a field operation.

    Args:
        op (str): One of ``add``, ``sub``, ``mul``, ``div``, ``inv``, ``neg``.
        a (FieldElem): The first operand.
        b (FieldElem): The second operand, for binary operations.

    Returns:
        FieldElem: The canonical result.

    Raises:
        DomainError: On division by zero or an unknown operation.

    """
    a = coerce(a)
    if op == 'inv':
        return a.inverse()
    if op == 'neg':
        return -a
    b = coerce(b)
    if op == 'add':
        return a + b
    if op == 'sub':
        return a - b
    if op == 'mul':
        return a * b
    if op == 'div':
        return a / b
    raise DomainError('unknown field operation {0!r}'.format(op))


def elem_sign(a):
    return coerce(a).sign()


def elem_compare(a, b):
    return coerce(a).compare(b)


def elem_abs(a):
    return abs(coerce(a))

"""The valuation, the dyadic distance, the residue map and balls.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import functools
from fractions import Fraction

from kval.errors import DomainError, InternalError
from kval.fields import FieldElem, Sign, coerce
from kval.gamma import Gamma


def monomial_value(monomial):
    return Gamma((i, e) for i, e in enumerate(monomial, 1))


def val(a):
    """Get the valuation of a field element.

    The value of a polynomial is the value of its leading monomial, since distinct monomials
    have distinct values; the value of a quotient is the quotient of values.

    Args:
        a (FieldElem): The element.

    Returns:
        Gamma: The valuation, the zero value for 0.

    """
    a = coerce(a)
    if a.is_zero:
        return Gamma.zero()
    num_lead, _ = a.num.leading_term()
    den_lead, _ = a.den.leading_term()
    return monomial_value(num_lead) / monomial_value(den_lead)


@functools.total_ordering
class DyadicDist(object):

    __slots__ = ('exponent',)

    def __init__(self, exponent=None):
        """A distance 2^-exponent, or 0 when exponent is None.

        Args:
            exponent (int): A nonnegative exponent. Distances produced by ``dist`` have exponent
                at least 1; 2^0 only appears as the cap of a bracket.

        """
        if exponent is not None and exponent < 0:
            raise DomainError('dyadic exponent must be nonnegative, got {0}'.format(exponent))
        self.exponent = exponent

    @classmethod
    def zero(cls):
        return cls(None)

    @property
    def is_zero(self):
        return self.exponent is None

    @property
    def value(self):
        """Fraction: The distance as a rational number."""
        if self.is_zero:
            return Fraction(0)
        return Fraction(1, 2 ** self.exponent)

    def __eq__(self, other):
        if not isinstance(other, DyadicDist):
            return NotImplemented
        return self.exponent == other.exponent

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        if not isinstance(other, DyadicDist):
            return NotImplemented
        return self.value < other.value

    def __hash__(self):
        return hash(('DyadicDist', self.exponent))

    def __str__(self):
        if self.is_zero:
            return '0'
        return '2^-{0}'.format(self.exponent)

    def __repr__(self):
        return 'DyadicDist({0!r})'.format(str(self))


def phi_index(x):
    """Get the least m with 1/X_m <= x.

    Args:
        x (FieldElem): A positive element.

    Returns:
        Tuple[int, DyadicDist]: The index m and the distance 2^-m.

    Raises:
        DomainError: If x is not positive.

    """
    x = coerce(x)
    if x.sign() is not Sign.POSITIVE:
        raise DomainError('phi is only defined on positive elements, got {0}'.format(x))
    cap = x.max_var + 1
    for m in range(1, cap + 1):
        if (x - FieldElem.variable(m, -1)).sign() is not Sign.NEGATIVE:
            return m, DyadicDist(m)
    raise InternalError('phi scan passed X{0} for {1}'.format(cap, x))


def dist(x, y):
    """Get the distance phi(|x - y|)."""
    difference = abs(coerce(x) - coerce(y))
    if difference.is_zero:
        return DyadicDist.zero()
    return phi_index(difference)[1]


def residue(a):
    """Get the image of an element of the valuation ring in the residue field.

    Args:
        a (FieldElem): An element with valuation at most 1.

    Returns:
        Fraction: The unique rational c with val(a - c) < 1.

    Raises:
        DomainError: If val(a) > 1.

    """
    a = coerce(a)
    value = val(a)
    if value > Gamma.one():
        raise DomainError('{0} is not in local ring'.format(a))
    if value < Gamma.one():
        return Fraction(0)
    _, num_coeff = a.num.leading_term()
    _, den_coeff = a.den.leading_term()
    return num_coeff / den_coeff


ORDER_OPEN = 'order_open'
VAL_CLOSED = 'val_closed'
VAL_OPEN = 'val_open'


class Ball(object):

    def __init__(self, center, kind, radius):
        """A neighborhood of a point.

        Args:
            center (FieldElem): The center a.
            kind (str): ``order_open`` for {x: |x - a| < t}, ``val_closed`` for
                {x: v(x - a) <= r} or ``val_open`` for {x: v(x - a) < r}.
            radius (FieldElem or Gamma): t for order balls, r for valuation balls.

        Raises:
            DomainError: If the radius is not admissible for the kind.

        """
        self.center = coerce(center)
        self.kind = kind
        if kind == ORDER_OPEN:
            radius = coerce(radius)
            if radius.sign() is not Sign.POSITIVE:
                raise DomainError('order ball radius must be positive, got {0}'.format(radius))
        elif kind in (VAL_CLOSED, VAL_OPEN):
            if not isinstance(radius, Gamma) or radius.is_zero:
                raise DomainError('valuation ball radius must be a nonzero value')
        else:
            raise DomainError('unknown ball kind {0!r}'.format(kind))
        self.radius = radius

    def contains(self, x):
        offset = coerce(x) - self.center
        if self.kind == ORDER_OPEN:
            return abs(offset) < self.radius
        if self.kind == VAL_CLOSED:
            return val(offset) <= self.radius
        return val(offset) < self.radius

    def __eq__(self, other):
        if not isinstance(other, Ball):
            return NotImplemented
        return (self.center, self.kind, self.radius) == (other.center, other.kind, other.radius)

    def __hash__(self):
        return hash((self.center, self.kind, self.radius))

    def __str__(self):
        if self.kind == ORDER_OPEN:
            return 'O({0}; {1})'.format(self.center, self.radius)
        if self.kind == VAL_CLOSED:
            return 'B({0}; {1})'.format(self.center, self.radius)
        return 'B({0}; {1}-)'.format(self.center, self.radius)


def ball_contains(ball, x):
    return ball.contains(x)

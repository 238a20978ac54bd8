"""The value group: finitely supported exponent vectors under the antilexicographic order.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import enum
import functools

from kval.errors import DomainError, ParseError


class Ordering(enum.Enum):
    LESS = -1
    EQUAL = 0
    GREATER = 1

    def __str__(self):
        return self.name.capitalize()

    @classmethod
    def from_difference(cls, diff):
        if diff < 0:
            return cls.LESS
        if diff > 0:
            return cls.GREATER
        return cls.EQUAL


@functools.total_ordering
class Gamma(object):
    """An element of the value group, or the adjoined zero.

    Group elements are stored as a sorted tuple of ``(index, exponent)`` pairs with nonzero
    exponents; the zero is stored as ``None``. Instances are immutable.

    """

    __slots__ = ('_exponents',)

    def __init__(self, exponents=()):
        """Create a group element from ``(index, exponent)`` pairs.

        Args:
            exponents (Iterable[Tuple[int, int]]): Pairs with indices >= 1. Repeated indices add up
                and zero exponents are dropped. Pass ``None`` for the zero.

        Raises:
            ParseError: If an index is below 1.

        """
        if exponents is None:
            self._exponents = None
            return
        collected = {}
        for index, exponent in exponents:
            index = int(index)
            if index < 1:
                raise ParseError('gamma index must be at least 1, got {0}'.format(index))
            collected[index] = collected.get(index, 0) + int(exponent)
        self._exponents = tuple(sorted((i, e) for i, e in collected.items() if e != 0))

    @classmethod
    def zero(cls):
        return cls(None)

    @classmethod
    def one(cls):
        return cls()

    @classmethod
    def generator(cls, index, exponent=1):
        """Get the generator g_index raised to an exponent."""
        return cls([(index, exponent)])

    @classmethod
    def from_list(cls, exponents):
        """Create an element from the list form, where position i holds the exponent of g_(i+1).

        Args:
            exponents (List[int]): Exponents at indices 1..len(exponents).

        Returns:
            Gamma: The element.

        """
        return cls((i, e) for i, e in enumerate(exponents, 1))

    @property
    def is_zero(self):
        return self._exponents is None

    @property
    def is_one(self):
        return self._exponents == ()

    @property
    def exponents(self):
        """Tuple[Tuple[int, int]]: The canonical ``(index, exponent)`` pairs."""
        if self._exponents is None:
            raise DomainError('the zero value has no exponent vector')
        return self._exponents

    def exponent(self, index):
        return dict(self.exponents).get(index, 0)

    @property
    def max_support(self):
        """int: The largest index with a nonzero exponent; 0 for the identity."""
        exponents = self.exponents
        if not exponents:
            return 0
        return exponents[-1][0]

    def in_subgroup(self, m):
        """Check membership in the convex subgroup H_m."""
        return not self.is_zero and self.max_support <= m

    def compare(self, other):
        """Compare with another element, deciding at the largest index where exponents differ.

        Args:
            other (Gamma): The element to compare with.

        Returns:
            Ordering: The ordering of self relative to other.

        """
        if self.is_zero or other.is_zero:
            return Ordering.from_difference(int(other.is_zero) - int(self.is_zero))
        mine = dict(self._exponents)
        theirs = dict(other._exponents)
        for index in sorted(set(mine) | set(theirs), reverse=True):
            diff = mine.get(index, 0) - theirs.get(index, 0)
            if diff:
                return Ordering.from_difference(diff)
        return Ordering.EQUAL

    def __eq__(self, other):
        if not isinstance(other, Gamma):
            return NotImplemented
        return self._exponents == other._exponents

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __lt__(self, other):
        if not isinstance(other, Gamma):
            return NotImplemented
        return self.compare(other) is Ordering.LESS

    def __hash__(self):
        return hash(('Gamma', self._exponents))

    def __mul__(self, other):
        if not isinstance(other, Gamma):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return Gamma.zero()
        return Gamma(self._exponents + other._exponents)

    def inverse(self):
        if self.is_zero:
            raise DomainError('the zero value has no inverse')
        return Gamma((i, -e) for i, e in self._exponents)

    def __truediv__(self, other):
        return self * other.inverse()

    def __pow__(self, k):
        k = int(k)
        if self.is_zero:
            if k < 0:
                raise DomainError('the zero value has no inverse')
            return Gamma.one() if k == 0 else Gamma.zero()
        return Gamma((i, e * k) for i, e in self._exponents)

    def to_list(self):
        """Get the list form, exponents at indices 1..max_support."""
        exponents = dict(self.exponents)
        return [exponents.get(i, 0) for i in range(1, self.max_support + 1)]

    def __str__(self):
        if self.is_zero:
            return '0v'
        if not self._exponents:
            return '1'
        factors = []
        for index, exponent in self._exponents:
            if exponent == 1:
                factors.append('g{0}'.format(index))
            else:
                factors.append('g{0}^{1}'.format(index, exponent))
        return '*'.join(factors)

    def __repr__(self):
        return 'Gamma({0!r})'.format(str(self))


def gamma_compare(a, b):
    return a.compare(b)


def gamma_mul(a, b):
    return a * b


def gamma_inv(a):
    return a.inverse()


def gamma_pow(a, k):
    return a ** k


def gamma_from_exponents(pairs):
    """Build an element from ``(index, exponent)`` pairs, dropping zero exponents.

    Args:
        pairs (Iterable[Tuple[int, int]]): The pairs.

    Returns:
        Gamma: The canonical element.

    Raises:
        ParseError: If an index is below 1.

    """
    return Gamma(pairs)


def gamma_max_support(a):
    return a.max_support


def gamma_max(values):
    """Get the largest of some values, the zero when there are none.

    Args:
        values (Iterable[Gamma]): The values.

    Returns:
        Gamma: The maximum.

    """
    best = Gamma.zero()
    for value in values:
        if value > best:
            best = value
    return best


def gamma_min(values):
    values = list(values)
    if not values:
        raise DomainError('minimum of no values')
    best = values[0]
    for value in values[1:]:
        if value < best:
            best = value
    return best

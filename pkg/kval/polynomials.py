"""Sparse multivariate polynomials over the rationals in the variables X1, X2, ...

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import functools
from fractions import Fraction

from sympy.polys.domains import QQ
from sympy.polys.rings import PolyRing

from kval.errors import DomainError


def _strip(monomial):
    monomial = tuple(monomial)
    end = len(monomial)
    while end and monomial[end - 1] == 0:
        end -= 1
    return monomial[:end]


def antilex_key(monomial):
    """Sort key deciding monomials at the highest variable index first.

    Exponents are nonnegative and canonical monomials have no trailing zeros, so a longer
    monomial always involves a higher variable.

    """
    return len(monomial), tuple(reversed(monomial))


class Poly(object):

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        """A polynomial stored as a map from exponent tuples to nonzero rational coefficients.

        Args:
            terms (Dict[Tuple[int, ...], Fraction]): Coefficients keyed by exponent tuples, where
                position i holds the exponent of X_(i+1). Zero coefficients are dropped and
                trailing zero exponents stripped.

        """
        collected = {}
        for monomial, coeff in (terms or {}).items():
            if any(e < 0 for e in monomial):
                raise DomainError('polynomial exponents must be nonnegative')
            key = _strip(monomial)
            collected[key] = collected.get(key, 0) + Fraction(coeff)
        self._terms = {m: c for m, c in collected.items() if c != 0}

    @classmethod
    def constant(cls, value):
        return cls({(): value})

    @classmethod
    def variable(cls, index, exponent=1):
        if index < 1:
            raise DomainError('variable index must be at least 1, got {0}'.format(index))
        monomial = [0] * index
        monomial[index - 1] = exponent
        return cls({tuple(monomial): 1})

    @classmethod
    def monomial(cls, monomial, coeff=1):
        return cls({tuple(monomial): coeff})

    @property
    def terms(self):
        """Dict[Tuple[int, ...], Fraction]: A copy of the coefficient map."""
        return dict(self._terms)

    def sorted_terms(self):
        """Get the terms in printing order, highest variable and exponent first."""
        return sorted(self._terms.items(), key=lambda item: antilex_key(item[0]), reverse=True)

    @property
    def is_zero(self):
        return not self._terms

    @property
    def is_constant(self):
        return all(m == () for m in self._terms)

    @property
    def constant_value(self):
        return self._terms.get((), Fraction(0))

    @property
    def max_var(self):
        """int: Highest variable index present, 0 for constants."""
        return max([len(m) for m in self._terms] or [0])

    def leading_term(self):
        """Get the term whose monomial is largest in the antilexicographic order.

        Returns:
            Tuple[Tuple[int, ...], Fraction]: The monomial and its coefficient.

        Raises:
            DomainError: If the polynomial is zero.

        """
        if self.is_zero:
            raise DomainError('the zero polynomial has no leading term')
        monomial = max(self._terms, key=antilex_key)
        return monomial, self._terms[monomial]

    def sign(self):
        """Get the order sign by descending through leading coefficients down to a rational.

        Returns:
            int: -1, 0 or 1.

        """
        if self.is_zero:
            return 0
        poly = self
        while not poly.is_constant:
            poly, _ = leading_data(poly, poly.max_var)
        return 1 if poly.constant_value > 0 else -1

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self._terms)
        for monomial, coeff in other._terms.items():
            terms[monomial] = terms.get(monomial, 0) + coeff
        return Poly(terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

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
        terms = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                width = max(len(m1), len(m2))
                monomial = tuple(
                    (m1[i] if i < len(m1) else 0) + (m2[i] if i < len(m2) else 0)
                    for i in range(width)
                )
                terms[monomial] = terms.get(monomial, 0) + c1 * c2
        return Poly(terms)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise DomainError('polynomials only take nonnegative powers')
        result = Poly.constant(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, factor):
        factor = Fraction(factor)
        return Poly({m: c * factor for m, c in self._terms.items()})

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self._terms == other._terms

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __str__(self):
        if self.is_zero:
            return '0'
        pieces = []
        for position, (monomial, coeff) in enumerate(self.sorted_terms()):
            if position == 0:
                pieces.append(term_text(coeff, monomial))
            elif coeff < 0:
                pieces.append(' - ' + term_text(-coeff, monomial))
            else:
                pieces.append(' + ' + term_text(coeff, monomial))
        return ''.join(pieces)

    def __repr__(self):
        return 'Poly({0!r})'.format(str(self))


def _coerce(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.constant(value)
    return NotImplemented


def term_text(coeff, monomial):
    """Format one term, e.g. ``3*X1^2*X3``, ``-X2`` or ``1/3``."""
    factors = []
    for index, exponent in enumerate(monomial, 1):
        if exponent == 1:
            factors.append('X{0}'.format(index))
        elif exponent:
            factors.append('X{0}^{1}'.format(index, exponent))
    if not factors:
        return str(coeff)
    product = '*'.join(factors)
    if coeff == 1:
        return product
    if coeff == -1:
        return '-' + product
    return '{0}*{1}'.format(coeff, product)


def leading_data(p, n):
    """View a polynomial in F_(n-1)[X_n] and get its leading coefficient and degree.

    Args:
        p (Poly): A nonzero polynomial in the variables X1..Xn.
        n (int): The variable index.

    Returns:
        Tuple[Poly, int]: The leading coefficient a_s, a polynomial in X1..X(n-1), and s.

    Raises:
        DomainError: If p is zero or involves a variable above X_n.

    """
    if p.is_zero:
        raise DomainError('the zero polynomial has no leading data')
    if p.max_var > n:
        raise DomainError('polynomial involves X{0}, above X{1}'.format(p.max_var, n))
    terms = p.terms
    degree = max(m[n - 1] if len(m) >= n else 0 for m in terms)
    leading = {}
    for monomial, coeff in terms.items():
        exponent = monomial[n - 1] if len(monomial) >= n else 0
        if exponent == degree:
            lowered = list(monomial[:n - 1])
            leading[tuple(lowered)] = coeff
    return Poly(leading), degree


@functools.lru_cache(maxsize=None)
def _ring(nvars):
    return PolyRing(['X{0}'.format(i) for i in range(1, nvars + 1)], QQ)


def _to_ring(ring, nvars, p):
    terms = {}
    for monomial, coeff in p.terms.items():
        padded = tuple(monomial) + (0,) * (nvars - len(monomial))
        terms[padded] = QQ(coeff.numerator, coeff.denominator)
    return ring.from_dict(terms)


def _from_ring(element):
    terms = {}
    for monomial, coeff in element.items():
        terms[tuple(monomial)] = Fraction(int(coeff.numerator), int(coeff.denominator))
    return Poly(terms)


def cancel(num, den):
    """Divide a numerator and denominator by their greatest common divisor.

    Args:
        num (Poly): The numerator.
        den (Poly): The nonzero denominator.

    Returns:
        Tuple[Poly, Poly]: The cofactors, coprime over the rationals.

    """
    if num.is_zero:
        return Poly.constant(0), Poly.constant(1)
    nvars = max(num.max_var, den.max_var)
    if nvars == 0 or den.is_constant and len(den.terms) == 1:
        return num, den
    ring = _ring(nvars)
    _, num_cofactor, den_cofactor = _to_ring(ring, nvars, num).cofactors(
        _to_ring(ring, nvars, den))
    return _from_ring(num_cofactor), _from_ring(den_cofactor)

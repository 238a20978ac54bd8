"""Exact sign analysis of rational polynomials on closed intervals by Sturm sequences.

Polynomials are lists of ``Fraction`` coefficients in ascending degree.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import logging
from fractions import Fraction

import sympy

from kval.errors import DomainError, InternalError


logger = logging.getLogger(__name__)

X = sympy.Symbol('x')


def to_poly(coeffs):
    """Get the sympy polynomial over QQ of an ascending coefficient list."""
    rep = [sympy.Rational(c.numerator, c.denominator) for c in map(Fraction, reversed(coeffs))]
    return sympy.Poly.from_list(rep or [0], X, domain=sympy.QQ)


def to_fraction(value):
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def evaluate(coeffs, x):
    """Evaluate an ascending coefficient list at a rational by Horner's rule."""
    value = Fraction(0)
    for coeff in reversed(coeffs):
        value = value * x + coeff
    return value


def derivative(coeffs):
    return [n * Fraction(c) for n, c in enumerate(coeffs)][1:]


def sign_changes(values):
    """Count sign changes in a sequence, ignoring zeros."""
    nonzero = [v for v in values if v != 0]
    return sum(1 for left, right in zip(nonzero, nonzero[1:]) if (left > 0) != (right > 0))


def sturm_count(poly, lo, hi):
    """Count the distinct real roots of a polynomial in (lo, hi].

    Args:
        poly (sympy.Poly): A nonzero polynomial.
        lo (Fraction): The open end.
        hi (Fraction): The closed end.

    Returns:
        int: V(lo) - V(hi) over the Sturm sequence.

    """
    if poly.degree() < 1:
        return 0
    sequence = poly.sturm()
    at_lo = [p.eval(sympy.Rational(lo.numerator, lo.denominator)) for p in sequence]
    at_hi = [p.eval(sympy.Rational(hi.numerator, hi.denominator)) for p in sequence]
    return sign_changes(at_lo) - sign_changes(at_hi)


def odd_part(poly):
    """Get the product of the squarefree factors of odd multiplicity, where signs can change."""
    _, factors = poly.sqf_list()
    product = sympy.Poly(1, X, domain=sympy.QQ)
    for factor, multiplicity in factors:
        if multiplicity % 2:
            product = product * factor
    return product


class SturmReport(object):

    def __init__(self, nonnegative, crossings, witness=None):
        """Verdict on p >= 0 over an interval.

        Args:
            nonnegative (bool): Whether p >= 0 on the whole interval.
            crossings (int): Number of sign changes of p inside the interval.
            witness (Fraction): A rational point with p < 0, when not nonnegative.

        """
        self.nonnegative = nonnegative
        self.crossings = crossings
        self.witness = witness

    def to_dict(self):
        result = {'nonnegative': self.nonnegative, 'crossings': self.crossings}
        if self.witness is not None:
            result['witness'] = str(self.witness)
        return result

    def __str__(self):
        if self.nonnegative:
            return 'nonnegative ({0} crossings)'.format(self.crossings)
        return 'negative at {0} ({1} crossings)'.format(self.witness, self.crossings)


def _negative_point(coeffs, poly, lo, hi):
    for k in range(1, 64):
        eps = sympy.Rational(1, 2 ** k)
        points = {lo, hi}
        for (left, right), _ in poly.sqf_part().intervals(eps=eps):
            points.update(to_fraction(p) for p in (left, right))
        points = sorted(p for p in points if lo <= p <= hi)
        candidates = points + [(x + y) / 2 for x, y in zip(points, points[1:])]
        for x in sorted(candidates):
            if lo < x < hi and evaluate(coeffs, x) < 0:
                return x
    raise InternalError('no negative point of {0} found in ({1}, {2})'.format(
        poly.as_expr(), lo, hi))


def nonnegative_on_interval(coeffs, lo=0, hi=1):
    """Decide p >= 0 on [lo, hi] exactly.

    Signs of p can only change at roots of odd multiplicity, so the odd part of its squarefree
    factorization is counted by a Sturm sequence. Without crossings the sign at any non-root
    decides; with crossings a rational point of negativity is isolated from the real roots.

    Args:
        coeffs (List[Fraction]): The polynomial, ascending.
        lo (Fraction): Left end.
        hi (Fraction): Right end.

    Returns:
        SturmReport: The verdict.

    Raises:
        DomainError: If lo >= hi.

    """
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        raise DomainError('empty interval [{0}, {1}]'.format(lo, hi))
    poly = to_poly(coeffs)
    if poly.is_zero:
        return SturmReport(True, 0)
    odd = odd_part(poly)
    crossings = sturm_count(odd, lo, hi)
    if crossings and odd.eval(sympy.Rational(hi.numerator, hi.denominator)) == 0:
        crossings -= 1
    logger.debug('%s has %d sign changes in (%s, %s)', poly.as_expr(), crossings, lo, hi)
    if crossings:
        return SturmReport(False, crossings, _negative_point(coeffs, poly, lo, hi))
    degree = poly.degree()
    for i in range(1, degree + 2):
        x = lo + (hi - lo) * Fraction(i, degree + 2)
        value = evaluate(coeffs, x)
        if value > 0:
            return SturmReport(True, 0)
        if value < 0:
            return SturmReport(False, 0, x)
    raise InternalError('{0} vanishes at more points than its degree'.format(poly.as_expr()))

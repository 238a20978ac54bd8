"""Power series with exact coefficient tables and certified tails.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import logging
from fractions import Fraction

from kval import constants
from kval.errors import CenterError, CompositionError, ConvergenceError, DepthError, DomainError
from kval.fields import FieldElem, Sign, coerce
from kval.gamma import Gamma, gamma_max
from kval.tails import (BoundRule, ConvolutionRule, MaxRule, RecenterRule, ScaleRule, ShiftRule,
                        TableRule, ZeroAfter, schedule_search, tail_sup, window_end)
from kval.valuation import DyadicDist, val


logger = logging.getLogger(__name__)


class PowerSeries(object):

    def __init__(self, center, coeffs, tail=None):
        """A series sum a_n (z - u)^n.

        Args:
            center (FieldElem): The center u.
            coeffs (List[FieldElem]): The table a_0..a_N. Polynomial tables are trimmed of
                trailing zeros; bound-rule tables are kept as given and may be empty.
            tail (ZeroAfter or BoundRule): The tail description, ``ZeroAfter`` by default.

        Raises:
            ConvergenceError: If the tail declares a schedule that the table and rule violate.

        """
        self.center = coerce(center)
        self.tail = tail if tail is not None else ZeroAfter()
        coeffs = [coerce(c) for c in coeffs]
        if self.is_polynomial:
            while len(coeffs) > 1 and coeffs[-1].is_zero:
                coeffs.pop()
            if not coeffs:
                coeffs = [FieldElem.constant(0)]
        self.coeffs = tuple(coeffs)
        if self.tail.schedule is not None:
            self._verify_schedule()

    @classmethod
    def constant(cls, value, center=0):
        return cls(center, [value])

    @classmethod
    def identity(cls, center=0):
        """Get the series z centered at u, that is u + (z - u)."""
        return cls(center, [center, 1])

    @property
    def order(self):
        """int: Index of the last stored coefficient."""
        return len(self.coeffs) - 1

    @property
    def is_polynomial(self):
        return isinstance(self.tail, ZeroAfter)

    @property
    def approximate(self):
        return self.tail.approximate

    @property
    def is_zero(self):
        return self.is_polynomial and self.order == 0 and self.coeffs[0].is_zero

    @property
    def is_constant(self):
        return self.is_polynomial and self.order == 0

    def coeff(self, n):
        """Get a_n.

        Raises:
            DepthError: If n lies past the table of a bound-rule series.

        """
        if n <= self.order:
            return self.coeffs[n]
        if self.is_polynomial:
            return FieldElem.constant(0)
        raise DepthError('coefficient {0} lies past the stored table (order {1})'.format(
            n, self.order))

    def coefficient_bound(self, n):
        """Get an upper bound of val(a_n), exact for stored coefficients of exact tables."""
        if n <= self.order:
            value = val(self.coeffs[n])
            if self.approximate:
                value = max(value, self.tail.rule().bound(n))
            return value
        return self.tail.rule().bound(n)

    def table_rule(self):
        """Get a rule bounding every coefficient, stored or not."""
        bounds = [self.coefficient_bound(n) for n in range(self.order + 1)]
        return TableRule(bounds, self.tail.rule())

    def _verify_schedule(self):
        declared = self.tail.schedule
        end = window_end(max(self.order, 0), len(declared))
        values = [self.coefficient_bound(n) for n in range(end + 1)]
        for m, least in enumerate(declared, 1):
            threshold = Gamma.generator(m, -1)
            for n in range(max(least, 0), end + 1):
                if not values[n] < threshold:
                    raise ConvergenceError(
                        'declared N({0}) = {1} fails: bound {2} at n = {3} is not below '
                        '{4}'.format(m, least, values[n], n, threshold))

    def _promote(self, other):
        if isinstance(other, PowerSeries):
            return other
        return PowerSeries.constant(coerce(other), self.center)

    def __add__(self, other):
        return add(self, self._promote(other))

    __radd__ = __add__

    def __neg__(self):
        return scalar_mul(-1, self)

    def __sub__(self, other):
        return sub(self, self._promote(other))

    def __rsub__(self, other):
        return sub(self._promote(other), self)

    def __mul__(self, other):
        if isinstance(other, PowerSeries):
            return mul(self, other)
        return scalar_mul(other, self)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, PowerSeries):
            if not other.is_constant:
                raise DomainError('cannot divide by a non-constant series')
            other = other.coeffs[0]
        return scalar_mul(coerce(other).inverse(), self)

    def __pow__(self, k):
        if k < 0:
            raise DomainError('series only take nonnegative powers')
        result = PowerSeries.constant(1, self.center)
        for _ in range(k):
            result = mul(result, self)
        return result

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return (self.center, self.coeffs, self.tail) == (other.center, other.coeffs, other.tail)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash((self.center, self.coeffs, self.tail))

    def to_dict(self):
        """Get the series file form, with every value in canonical text."""
        if self.is_polynomial:
            tail = {'zero_after': self.order}
        else:
            bound = {'rule': str(self.tail.rule())}
            if self.tail.schedule is not None:
                bound['schedule'] = list(self.tail.schedule)
            if self.approximate:
                bound['approximate'] = True
            tail = {'bound': bound}
        return {
            'center': str(self.center),
            'coeffs': [str(c) for c in self.coeffs],
            'tail': tail,
        }

    def expression(self, indeterminate='z'):
        """Get the canonical expression of a polynomial, e.g. ``y - y^2 + 2*y^3``.

        Raises:
            DomainError: For bound-rule series, which have no finite expression.

        """
        if not self.is_polynomial:
            raise DomainError('only polynomial series print as expressions')
        base = _base_text(indeterminate, self.center)
        pieces = []
        for n, coeff in enumerate(self.coeffs):
            if coeff.is_zero:
                continue
            if not pieces:
                pieces.append(_term_text(coeff, n, base))
            elif coeff.sign() is Sign.NEGATIVE:
                pieces.append(' - ' + _term_text(-coeff, n, base))
            else:
                pieces.append(' + ' + _term_text(coeff, n, base))
        return ''.join(pieces) or '0'

    def __str__(self):
        if self.is_polynomial:
            return self.expression()
        return 'series(center={0}, order={1}, bound={2})'.format(
            self.center, self.order, self.tail.rule())

    def __repr__(self):
        return 'PowerSeries({0!r})'.format(str(self))


def _wrapped(elem):
    text = str(elem)
    if elem.den == 1 and len(elem.num.terms) > 1:
        return '({0})'.format(text)
    return text


def _base_text(indeterminate, center):
    if center.is_zero:
        return indeterminate
    if center.sign() is Sign.NEGATIVE:
        return '({0} + {1})'.format(indeterminate, _wrapped(-center))
    return '({0} - {1})'.format(indeterminate, _wrapped(center))


def _term_text(coeff, n, base):
    if n == 0:
        return str(coeff)
    power = base if n == 1 else '{0}^{1}'.format(base, n)
    if coeff == 1:
        return power
    if coeff == -1:
        return '-' + power
    return '{0}*{1}'.format(_wrapped(coeff), power)


def _check_centers(f, g):
    if f.center != g.center:
        raise CenterError('series centers differ: {0} and {1}'.format(f.center, g.center))


def _truncation_order(*series):
    orders = [s.order for s in series if not s.is_polynomial]
    return min(orders) if orders else None


def add(f, g):
    _check_centers(f, g)
    order = _truncation_order(f, g)
    if order is None:
        size = max(f.order, g.order) + 1
        return PowerSeries(f.center, [f.coeff(n) + g.coeff(n) for n in range(size)])
    coeffs = [f.coeff(n) + g.coeff(n) for n in range(order + 1)]
    rule = MaxRule([f.table_rule(), g.table_rule()])
    return PowerSeries(f.center, coeffs, BoundRule(rule, approximate=f.approximate or
                                                   g.approximate))


def scalar_mul(c, f):
    c = coerce(c)
    coeffs = [c * a for a in f.coeffs]
    if f.is_polynomial:
        return PowerSeries(f.center, coeffs)
    rule = ScaleRule(val(c), f.tail.rule())
    return PowerSeries(f.center, coeffs, BoundRule(rule, approximate=f.approximate))


def sub(f, g):
    return add(f, scalar_mul(-1, g))


def _cauchy(a, b, size):
    """Cauchy product of two coefficient lists through index size - 1."""
    zero = FieldElem.constant(0)
    product = [zero] * size
    for i, x in enumerate(a[:size]):
        if x.is_zero:
            continue
        for j, y in enumerate(b[:size - i]):
            if not y.is_zero:
                product[i + j] = product[i + j] + x * y
    return product


def mul(f, g):
    _check_centers(f, g)
    order = _truncation_order(f, g)
    if order is None:
        return PowerSeries(f.center, _cauchy(list(f.coeffs), list(g.coeffs),
                                             f.order + g.order + 1))
    a = [f.coeff(n) for n in range(order + 1)]
    b = [g.coeff(n) for n in range(order + 1)]
    rule = ConvolutionRule(f.table_rule(), g.table_rule())
    return PowerSeries(f.center, _cauchy(a, b, order + 1),
                       BoundRule(rule, approximate=f.approximate or g.approximate))


def derivative(f, times=1):
    """Differentiate term by term.

    Args:
        f (PowerSeries): The series.
        times (int): How many derivatives to take.

    Returns:
        PowerSeries: The derivative, centered where f is.

    """
    for _ in range(times):
        coeffs = [n * f.coeffs[n] for n in range(1, f.order + 1)]
        if f.is_polynomial:
            f = PowerSeries(f.center, coeffs)
        else:
            rule = ShiftRule(f.tail.rule(), 1)
            f = PowerSeries(f.center, coeffs, BoundRule(rule, approximate=f.approximate))
    return f


def truncate(f, n):
    """Get the polynomial of the coefficients a_0..a_n.

    Raises:
        DepthError: If n lies past the table of a bound-rule series.

    """
    return PowerSeries(f.center, [f.coeff(k) for k in range(n + 1)])


def series_arith(op, f, g=None):
    """Apply a series operation.

    Args:
        op (str): One of ``add``, ``sub``, ``mul``, ``derivative``, ``scalar_mul``.
        f (PowerSeries): The first operand.
        g (PowerSeries or FieldElem): The second operand, the scalar for ``scalar_mul``.

    Returns:
        PowerSeries: The result.

    Raises:
        CenterError: If binary operands have different centers.

    """
    if op == 'add':
        return add(f, g)
    if op == 'sub':
        return sub(f, g)
    if op == 'mul':
        return mul(f, g)
    if op == 'derivative':
        return derivative(f)
    if op == 'scalar_mul':
        return scalar_mul(g, f)
    raise DomainError('unknown series operation {0!r}'.format(op))


def convergence_check(f, depth=None):
    """Certify convergence against the thresholds g_1^-1, ..., g_M^-1.

    Stored coefficients are checked exactly; the bound rule is spot-checked over a window past
    the table.

    Args:
        f (PowerSeries): The series.
        depth (int): M, from ``KVAL_DEPTH`` or 6 when omitted.

    Returns:
        Converges or DivergesAt: The verdict.

    """
    depth = constants.convergence_depth(depth)
    if f.is_polynomial:
        end = f.order + 1
    else:
        end = window_end(max(f.order, 0), depth)
    verdict = schedule_search([f.coefficient_bound(n) for n in range(end + 1)], 0, depth)
    logger.debug('convergence of %s at depth %d: %s', f, depth, verdict)
    return verdict


def tail_bound(f, r, depth=None):
    """Bound val(a_n)*r^n over every coefficient not known exactly.

    Returns:
        Gamma: The bound; the zero value for polynomials.

    Raises:
        ConvergenceError: If the tail has no schedule at the needed depth.

    """
    if f.is_polynomial:
        return Gamma.zero()
    depth = constants.convergence_depth(depth)
    start = 0 if f.approximate else f.order + 1
    return tail_sup(f.tail.rule(), start, r, depth)


def _horner(coeffs, w):
    value = FieldElem.constant(0)
    for coeff in reversed(coeffs):
        value = value * w + coeff
    return value


def series_eval(f, z, verdict=None, depth=None):
    """Evaluate a series at a point.

    Args:
        f (PowerSeries): The series.
        z (FieldElem): The point.
        verdict (Converges or DivergesAt): A convergence verdict, computed when omitted.
        depth (int): Convergence depth.

    Returns:
        Tuple[FieldElem, Gamma]: The sum of the stored terms and a bound on the valuation of
            every omitted term.

    Raises:
        ConvergenceError: If the tail is not certified to converge.

    """
    w = coerce(z) - f.center
    value = _horner(f.coeffs, w)
    if f.is_polynomial:
        return value, Gamma.zero()
    if verdict is None:
        verdict = convergence_check(f, depth)
    if not verdict.converges:
        raise ConvergenceError('series tail diverges: {0}'.format(verdict))
    return value, tail_bound(f, val(w), depth)


def _taylor_shift(coeffs, w):
    shifted = list(coeffs)
    degree = len(shifted) - 1
    for i in range(degree):
        for j in range(degree - 1, i - 1, -1):
            shifted[j] = shifted[j] + w * shifted[j + 1]
    return shifted


def series_recenter(f, v, N=None):
    """Expand a series around a new center.

    Polynomials are recentered exactly. For a bound-rule series the coefficients a_0..a_N'
    (N' = min(N, order)) are recentered exactly and the tail gets a recentering rule that bounds
    both the coefficients past the table and the part of each stored coefficient contributed by
    the omitted terms; the result is flagged approximate.

    Args:
        f (PowerSeries): A convergent series.
        v (FieldElem): The new center.
        N (int): Last coefficient of a bound-rule series to use.

    Returns:
        PowerSeries: The recentered series.

    Raises:
        ConvergenceError: If f is not certified to converge.

    """
    v = coerce(v)
    if v == f.center:
        return f
    w = v - f.center
    if f.is_polynomial:
        return PowerSeries(v, _taylor_shift(list(f.coeffs), w))
    verdict = convergence_check(f)
    if not verdict.converges:
        raise ConvergenceError('cannot recenter a divergent series: {0}'.format(verdict))
    order = f.order if N is None else min(N, f.order)
    radius = val(w)
    depth = constants.convergence_depth()
    start = 0 if f.approximate else order + 1
    rule = RecenterRule(f.table_rule(), start, radius, depth + radius.max_support + 3)
    coeffs = _taylor_shift([f.coeff(n) for n in range(order + 1)], w) if order >= 0 else []
    return PowerSeries(v, coeffs, BoundRule(rule, approximate=True))


def series_compose(outer, inner, N):
    """Compose formally through order N.

    Args:
        outer (PowerSeries): The outer series, centered at u.
        inner (PowerSeries): The inner series, with constant term u.
        N (int): The order.

    Returns:
        PowerSeries: The polynomial of coefficients 0..N of outer(inner), centered where inner is.

    Raises:
        CompositionError: If the constant term of inner is not the center of outer.
        DepthError: If N lies past the table of a bound-rule operand.

    """
    if inner.coeff(0) != outer.center:
        raise CompositionError('inner constant term {0} differs from outer center {1}'.format(
            inner.coeff(0), outer.center))
    for series in (outer, inner):
        if not series.is_polynomial and series.order < N:
            raise DepthError('composition order {0} passes a table of order {1}'.format(
                N, series.order))
    zero = FieldElem.constant(0)
    shifted = [zero] + [inner.coeff(n) for n in range(1, N + 1)]
    top = min(N, outer.order)
    result = [outer.coeff(top)] + [zero] * N
    for k in range(top - 1, -1, -1):
        result = _cauchy(result, shifted, N + 1)
        result[0] = result[0] + outer.coeff(k)
    return PowerSeries(inner.center, result)


def sup_norm_ball(f, r, depth=None):
    """Get the Gamma-norm of a series on the closed ball B_u(r) by the maximum principle.

    Args:
        f (PowerSeries): A convergent series centered at u.
        r (Gamma): The radius.
        depth (int): Convergence depth for the tail.

    Returns:
        Tuple[Gamma, Tuple[int, ...]]: max_n val(a_n)*r^n over the stored coefficients and the
            indices attaining it (empty for the zero series).

    Raises:
        DepthError: If the tail bound is not dominated by that maximum.

    """
    terms = [val(a) * r ** n for n, a in enumerate(f.coeffs)]
    norm = gamma_max(terms)
    argmax = tuple(n for n, term in enumerate(terms) if term == norm and not norm.is_zero)
    if not f.is_polynomial:
        bound = tail_bound(f, r, depth)
        if bound > norm or (f.approximate and bound == norm):
            raise DepthError('tail bound {0} is not dominated by {1} at radius {2}'.format(
                bound, norm, r))
    return norm, argmax


def unboundedness_witness(f, r, depth=None):
    """Find a point z = u + X_m^t where f moves by more than r.

    Args:
        f (PowerSeries): A non-constant series.
        r (Gamma): The bound to exceed.
        depth (int): Convergence depth for the tail.

    Returns:
        FieldElem: z with val(f(z) - a_0) > r, dominated by a single term.

    Raises:
        DomainError: If f is constant.
        DepthError: If the search bounds are exhausted.

    """
    if all(f.coeff(n).is_zero for n in range(1, f.order + 1)) and f.is_polynomial:
        raise DomainError('constant series {0} is bounded'.format(f))
    supports = [0 if r.is_zero else r.max_support, f.center.max_var]
    supports.extend(c.max_var for c in f.coeffs)
    for m in range(1, max(supports) + 3):
        for t in range(1, constants.WITNESS_EXPONENTS + 1):
            radius = Gamma.generator(m, t)
            terms = [(val(f.coeffs[n]) * radius ** n, n) for n in range(1, f.order + 1)]
            top = gamma_max(term for term, _ in terms)
            if top.is_zero or not top > r:
                continue
            if sum(1 for term, _ in terms if term == top) != 1:
                continue
            if not f.is_polynomial:
                try:
                    if not tail_bound(f, radius, depth) < top:
                        continue
                except ConvergenceError:
                    continue
            z = f.center + FieldElem.variable(m, t)
            value, _ = series_eval(f, z, depth=depth)
            if val(value - f.coeffs[0]) == top:
                logger.debug('unboundedness witness X%d^%d for %s beyond %s', m, t, f, r)
                return z
    raise DepthError('no witness X_m^t exceeding {0} for {1}'.format(r, f))


def func_dist_bracket(f, g, r, depth=None):
    """Bracket d_1(f, g) on B_u(r) through the Gamma-norm of f - g.

    With n the largest index such that the norm lies below g_n^-1 (0 when none does), d_1 lies
    in [2^-(n+2), 2^-n]. A difference c/X_(n+1) with rational 0 < c < 1 reaches 2^-(n+2).

    Returns:
        Tuple[Gamma, DyadicDist, DyadicDist]: The norm, the lower and the upper bracket ends.

    Raises:
        CenterError: If the centers differ.

    """
    _check_centers(f, g)
    if f == g:
        return Gamma.zero(), DyadicDist.zero(), DyadicDist.zero()
    norm, _ = sup_norm_ball(sub(f, g), r, depth)
    if norm.is_zero:
        return norm, DyadicDist.zero(), DyadicDist.zero()
    n = 0
    while norm < Gamma.generator(n + 1, -1):
        n += 1
    return norm, DyadicDist(n + 2), DyadicDist(n)


def sphere_samples(center, r, count):
    """Get points z with val(z - center) = r and distinct residues of (z - center)/X^r.

    Args:
        center (FieldElem): The center.
        r (Gamma): A nonzero radius.
        count (int): How many points.

    Returns:
        List[FieldElem]: The points center + k*X^r for k = 1..count.

    """
    if r.is_zero:
        raise DomainError('the sphere of radius 0v is empty')
    unit = FieldElem.monomial(r)
    return [coerce(center) + unit * k for k in range(1, count + 1)]


def taylor_coefficient(f, x0, k):
    """Get f^(k)(x0)/k! as the k-th coefficient of f recentered at x0."""
    return series_recenter(f, x0).coeff(k)


def derivative_at(f, x0, k):
    """Get f^(k)(x0) exactly from the recentered table."""
    factorial = 1
    for i in range(2, k + 1):
        factorial *= i
    return taylor_coefficient(f, x0, k) * Fraction(factorial)

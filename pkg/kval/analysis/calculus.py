"""Derivatives at a point, extremum classification and monotonicity certificates.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import enum
import logging
from fractions import Fraction

from kval import constants
from kval.analysis import sturm
from kval.errors import DepthError, DomainError, InternalError
from kval.fields import FieldElem, Sign, coerce
from kval.gamma import Gamma, gamma_max
from kval.series import derivative, series_eval, series_recenter, tail_bound
from kval.valuation import residue, val


logger = logging.getLogger(__name__)


MECHANISM_NOTE = ('certifies the residue-polynomial mechanism on [a, b] together with finite '
                  'probing of f\'; it is not a decision procedure for f\' > 0')


def _certified_nonzero(series, n):
    """Decide whether coefficient n of a series is nonzero, or None when it is zero."""
    if series.is_polynomial:
        return None if series.coeff(n).is_zero else series.coeff(n)
    if n > series.order:
        raise DepthError('coefficient {0} lies past the stored table'.format(n))
    coeff = series.coeff(n)
    if not series.approximate:
        return None if coeff.is_zero else coeff
    error = series.tail.rule().bound(n)
    if not coeff.is_zero and val(coeff) > error:
        return coeff
    raise DepthError('coefficient {0} is not separated from its error bound {1}'.format(n, error))


def first_nonvanishing_order(f, x0, cap=None):
    """Get the least n >= 1 with f^(n)(x0) != 0.

    Args:
        f (PowerSeries): The function.
        x0 (FieldElem): The point.
        cap (int): Largest order scanned, ``ORDER_CAP`` when omitted.

    Returns:
        int: The order, or None when every coefficient up to the cap vanishes.

    Raises:
        DepthError: If a coefficient of a bound-rule series cannot be decided.

    """
    cap = constants.ORDER_CAP if cap is None else cap
    recentered = series_recenter(f, x0)
    for n in range(1, cap + 1):
        if recentered.is_polynomial and n > recentered.order:
            return None
        if _certified_nonzero(recentered, n) is not None:
            return n
    return None


class Extremum(enum.Enum):
    MIN = 'Min'
    MAX = 'Max'
    NOT_EXTREMUM = 'NotExtremum'

    def __str__(self):
        return self.value


class ExtremumReport(object):

    def __init__(self, m, verdict, derivative_value, delta, samples, choices):
        """Outcome of classify_extremum.

        Args:
            m (int): First nonvanishing derivative order.
            verdict (Extremum): The classification.
            derivative_value (FieldElem): f^(m)(x0).
            delta (FieldElem): Positive witness; every |h| < delta keeps the sign of
                f(x0 + h) - f(x0) equal to that of f^(m)(x0) h^m.
            samples (List[Tuple[FieldElem, Sign]]): Probes h and the sign of f(x0 + h) - f(x0).
            choices (dict): The values g, g1, g2 and the bound on val(delta).

        """
        self.m = m
        self.verdict = verdict
        self.derivative_value = derivative_value
        self.delta = delta
        self.samples = samples
        self.choices = choices

    def to_dict(self):
        return {
            'm': self.m,
            'verdict': str(self.verdict),
            'derivative': str(self.derivative_value),
            'delta': str(self.delta),
            'choices': {key: str(value) for key, value in self.choices.items()},
            'samples': [{'h': str(h), 'sign': str(sign)} for h, sign in self.samples],
        }

    def __str__(self):
        return '{0} (m = {1}, f^({1})(x0) = {2}, delta = {3})'.format(
            self.verdict, self.m, self.derivative_value, self.delta)


def _higher_bound(series, m):
    stored = gamma_max(series.coefficient_bound(n) for n in range(m + 1, series.order + 1))
    if series.is_polynomial:
        return stored
    return max(stored, tail_bound(series, Gamma.one()))


def _difference(series, h):
    """Get f(x0 + h) - f(x0) for a series centered at x0 with its certified sign."""
    value, bound = series_eval(series, series.center + h)
    difference = value - series.coeff(0)
    if not series.is_polynomial and not val(difference) > bound:
        raise DepthError('sample {0} is not separated from the tail bound {1}'.format(h, bound))
    return difference.sign()


def classify_extremum(f, x0):
    """Classify x0 as a relative minimum, maximum or neither.

    With m the first nonvanishing order, c = f^(m)(x0)/m! and e = val(X1), take g = e times the
    largest higher coefficient value (at least e), g1 = e/g and g2 = e*g/val(c), so that
    g1^-1 < g and g2^-1 < g^-1*val(c), and a positive monomial delta with val(delta) below
    min(g1^-1, g2^-1, 1). Then c h^m dominates the rest of the expansion for |h| < delta.

    Args:
        f (PowerSeries): A non-constant series.
        x0 (FieldElem): The point.

    Returns:
        ExtremumReport: The classification with its witness and sign samples.

    Raises:
        DomainError: If f is constant.
        InternalError: If a sign sample contradicts the prediction.

    """
    x0 = coerce(x0)
    m = first_nonvanishing_order(f, x0)
    if m is None:
        raise DomainError('{0} is constant near {1}'.format(f, x0))
    recentered = series_recenter(f, x0)
    coeff = recentered.coeff(m)
    sign = coeff.sign()
    if m % 2:
        verdict = Extremum.NOT_EXTREMUM
    elif sign is Sign.POSITIVE:
        verdict = Extremum.MIN
    else:
        verdict = Extremum.MAX

    first = Gamma.generator(1)
    g = first * max(_higher_bound(recentered, m), Gamma.one())
    g1 = first / g
    g2 = first * g / val(coeff)
    mu = min(g1.inverse(), g2.inverse(), Gamma.one())
    delta = FieldElem.monomial(mu / first)

    samples = []
    for k in constants.EXTREMUM_SCALES:
        for direction in (1, -1):
            h = delta * FieldElem.variable(k, -1) * direction
            observed = _difference(recentered, h)
            predicted = (coeff * h ** m).sign()
            if observed is not predicted:
                raise InternalError('sample h = {0} has sign {1}, predicted {2}'.format(
                    h, observed, predicted))
            samples.append((h, observed))
    factorial = 1
    for i in range(2, m + 1):
        factorial *= i
    logger.debug('x0 = %s: m = %d, verdict %s, delta %s', x0, m, verdict, delta)
    choices = {'g': g, 'g1': g1, 'g2': g2, 'val_delta_below': mu}
    return ExtremumReport(m, verdict, coeff * factorial, delta, samples, choices)


class HypothesisNotVerified(object):

    verified = False

    def __init__(self, witness, derivative_value, reason):
        """A point of [a, b] where f' > 0 fails.

        Args:
            witness (FieldElem): The point z.
            derivative_value (FieldElem): f'(z), not positive.
            reason (str): How the point was found.

        """
        self.witness = witness
        self.derivative_value = derivative_value
        self.reason = reason

    def to_dict(self):
        return {
            'verdict': 'HypothesisNotVerified',
            'witness': str(self.witness),
            'derivative': str(self.derivative_value),
            'reason': self.reason,
        }

    def __str__(self):
        return 'HypothesisNotVerified: f\'({0}) = {1} ({2})'.format(
            self.witness, self.derivative_value, self.reason)


class MonotoneCertificate(object):

    verified = True

    def __init__(self, a, b, scale, residue_poly, sturm_report, comparison):
        """Certificate that the residue polynomial of f on [a, b] is nondecreasing.

        Args:
            a (FieldElem): Left end.
            b (FieldElem): Right end.
            scale (FieldElem): The monomial M with max_j val(M F_j) = 1 where
                F(x) = f(a + (b - a) x) - f(a) = sum F_j x^j.
            residue_poly (List[Fraction]): Residues of M F_j, ascending.
            sturm_report (SturmReport): Verdict on p' >= 0 over [0, 1].
            comparison (Sign): Exact sign of f(b) - f(a).

        """
        self.a = a
        self.b = b
        self.scale = scale
        self.residue_poly = residue_poly
        self.sturm_report = sturm_report
        self.comparison = comparison
        self.note = MECHANISM_NOTE

    def to_dict(self):
        return {
            'verdict': 'MonotoneCertificate',
            'a': str(self.a),
            'b': str(self.b),
            'scale': str(self.scale),
            'residue_poly': [str(c) for c in self.residue_poly],
            'sturm': self.sturm_report.to_dict(),
            'comparison': str(self.comparison),
            'note': self.note,
        }

    def __str__(self):
        return 'MonotoneCertificate: p = {0}, p\' {1}, f(b) - f(a) {2}'.format(
            poly_text(self.residue_poly), self.sturm_report, self.comparison)


def poly_text(coeffs, name='x'):
    """Format a rational polynomial, highest degree first, e.g. ``x^2 - 1/2*x``."""
    pieces = []
    for n in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[n])
        if c == 0:
            continue
        power = '' if n == 0 else name if n == 1 else '{0}^{1}'.format(name, n)
        magnitude = abs(c)
        if not power:
            term = str(magnitude)
        elif magnitude == 1:
            term = power
        else:
            term = '{0}*{1}'.format(magnitude, power)
        if not pieces:
            pieces.append('-' + term if c < 0 else term)
        else:
            pieces.append((' - ' if c < 0 else ' + ') + term)
    return ''.join(pieces) or '0'


def _rescaled(f, a, b):
    recentered = series_recenter(f, a)
    width = b - a
    return recentered, [recentered.coeff(j) * width ** j for j in range(recentered.order + 1)]


def residue_polynomial(f, a, b, scale=None, shift=True):
    """Get the rational polynomial induced by f on [a, b].

    Args:
        f (PowerSeries): The function.
        a (FieldElem): Left end.
        b (FieldElem): Right end.
        scale (FieldElem): The normalizing factor M; chosen so that the largest value of
            M F_j is 1 when omitted.
        shift (bool): Subtract f(a), so that p(0) = 0.

    Returns:
        Tuple[List[Fraction], FieldElem]: The residues of M F_j, ascending, and M.

    Raises:
        DomainError: If f is constant on [a, b] or the scale leaves the local ring.

    """
    a, b = coerce(a), coerce(b)
    _, rescaled = _rescaled(f, a, b)
    if shift:
        rescaled[0] = FieldElem.constant(0)
    if scale is None:
        top = gamma_max(val(c) for c in rescaled)
        if top.is_zero:
            raise DomainError('{0} is constant on [{1}, {2}]'.format(f, a, b))
        scale = FieldElem.monomial(top.inverse())
    coeffs = [residue(scale * c) for c in rescaled]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs, scale


def _probes(a, b):
    width = b - a
    points = [a, b]
    points.extend(a + width * Fraction(*t) for t in constants.MONOTONE_FRACTIONS)
    for k in constants.MONOTONE_SCALES:
        points.append(a + width * FieldElem.variable(k, -1))
        points.append(b - width * FieldElem.variable(k, -1))
    return points


def _derivative_sign(df, z):
    value, bound = series_eval(df, z)
    if not df.is_polynomial and not val(value) > bound:
        raise DepthError('f\'({0}) is not separated from the tail bound {1}'.format(z, bound))
    return value


def monotone_certificate(f, a, b):
    """Certify that f is increasing on [a, b] through its residue polynomial.

    f' is first probed at the ends, at rational convex combinations and at points
    a + (b - a)/X_k and b - (b - a)/X_k. The function is then rescaled to
    F(x) = f(a + (b - a) x) - f(a), normalized by a monomial M so its largest coefficient value
    is 1, and the residues of M F_j give a rational polynomial p whose derivative must be
    nonnegative on [0, 1].

    Args:
        f (PowerSeries): The function.
        a (FieldElem): Left end.
        b (FieldElem): Right end, above a.

    Returns:
        MonotoneCertificate or HypothesisNotVerified: The certificate or a point where f' <= 0.

    Raises:
        DomainError: If a >= b.
        DepthError: If the tail of a bound-rule series is not below the normalization.

    """
    a, b = coerce(a), coerce(b)
    if a >= b:
        raise DomainError('monotonicity needs a < b, got [{0}, {1}]'.format(a, b))
    df = derivative(f)
    for z in _probes(a, b):
        value = _derivative_sign(df, z)
        if value.sign() is not Sign.POSITIVE:
            logger.debug('probe %s: f\' = %s', z, value)
            return HypothesisNotVerified(z, value, 'probe')

    recentered, rescaled = _rescaled(f, a, b)
    top = gamma_max(val(c) for c in rescaled[1:])
    if not recentered.is_polynomial and not tail_bound(recentered, val(b - a)) < top:
        raise DepthError('tail of {0} is not below the normalization {1}'.format(f, top))
    coeffs, scale = residue_polynomial(f, a, b)
    report = sturm.nonnegative_on_interval(sturm.derivative(coeffs), 0, 1)
    if not report.nonnegative:
        z = a + (b - a) * report.witness
        value = _derivative_sign(df, z)
        if value.sign() is Sign.POSITIVE:
            raise InternalError('residue derivative is negative at {0} but f\'({1}) = {2}'.format(
                report.witness, z, value))
        return HypothesisNotVerified(z, value, 'residue polynomial')

    difference = sum(rescaled[1:], FieldElem.constant(0))
    if not recentered.is_polynomial and not val(difference) > tail_bound(recentered, val(b - a)):
        raise DepthError('f(b) - f(a) is not separated from the tail bound')
    sign = difference.sign()
    logger.debug('certificate on [%s, %s]: p = %s', a, b, poly_text(coeffs))
    return MonotoneCertificate(a, b, scale, coeffs, report, sign)

"""Local inversion of analytic functions by fixed-point iteration, with an independent oracle.

For F(x, y) = f(x) - y and s = f'(x0), the map h(psi) = psi - s^-1 F(psi, y) contracts on
series defined near y0 = f(x0); its fixed point g satisfies f(g(y)) = y.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import logging

from kval import constants
from kval.errors import DepthError, DomainError, InternalError, PivotError
from kval.fields import FieldElem, coerce
from kval.gamma import Gamma, gamma_max
from kval.series import (PowerSeries, func_dist_bracket, series_compose, series_recenter,
                         sup_norm_ball, truncate)
from kval.valuation import val


logger = logging.getLogger(__name__)


def _polynomial(f, N=None):
    """Get f itself for polynomials, else its truncation at min(N, order)."""
    if f.is_polynomial:
        return f
    order = f.order if N is None else min(N, f.order)
    return truncate(f, order)


def radius_grid():
    """Get the candidate radii {1} and g_m^-t for m <= GRID_GENERATORS, t <= GRID_EXPONENTS.

    Returns:
        List[Gamma]: The radii, largest first.

    """
    radii = {Gamma.one()}
    for m in range(1, constants.GRID_GENERATORS + 1):
        for t in range(1, constants.GRID_EXPONENTS + 1):
            radii.add(Gamma.generator(m, -t))
    return sorted(radii, reverse=True)


def divided_difference_expansion(f, x0):
    """Expand G(x, x') - s, where G is the divided difference of f and s = f'(x0).

    With f = sum b_n (x - x0)^n, G(x, x') = sum_n b_n sum_(j+k=n-1) (x - x0)^j (x' - x0)^k, so
    c_jk = b_(j+k+1) and c_00 = 0 after subtracting s.

    Args:
        f (PowerSeries): The function; bound-rule series are truncated at their table.
        x0 (FieldElem): The expansion point.

    Returns:
        Dict[Tuple[int, int], FieldElem]: The nonzero c_jk.

    """
    recentered = series_recenter(_polynomial(f), coerce(x0))
    expansion = {}
    for n in range(2, recentered.order + 1):
        coeff = recentered.coeff(n)
        if coeff.is_zero:
            continue
        for j in range(n):
            expansion[(j, n - 1 - j)] = coeff
    return expansion


class InversionDomain(object):

    def __init__(self, x0, y0, s, r1, delta, delta1, expansion):
        self.x0 = x0
        self.y0 = y0
        self.s = s
        self.r1 = r1
        self.delta = delta
        self.delta1 = delta1
        self.expansion = expansion

    def to_dict(self):
        return {
            'x0': str(self.x0),
            'y0': str(self.y0),
            's': str(self.s),
            'r1': str(self.r1),
            'delta': str(self.delta),
            'delta1': str(self.delta1),
        }

    def __str__(self):
        return 'x0 = {0}, y0 = {1}, s = {2}, r1 = {3}, delta = {4}'.format(
            self.x0, self.y0, self.s, self.r1, self.delta)


def inversion_domain(f, x0):
    """Find the radii on which the fixed-point map is a contraction.

    r1 is the largest grid radius with max_(j+k>=1) val(c_jk) r1^(j+k) < g1^-1 val(s); the
    inverse is then defined on the ball of radius delta = min(r1, val(s) r1) around y0.

    Args:
        f (PowerSeries): The function.
        x0 (FieldElem): The base point.

    Returns:
        InversionDomain: The constants of the construction.

    Raises:
        PivotError: If f'(x0) = 0.
        DepthError: If no grid radius qualifies.

    """
    x0 = coerce(x0)
    recentered = series_recenter(_polynomial(f), x0)
    s = recentered.coeff(1)
    if s.is_zero:
        raise PivotError('f\'({0}) = 0, the linear coefficient cannot be inverted'.format(x0))
    expansion = divided_difference_expansion(f, x0)
    target = Gamma.generator(1, -1) * val(s)
    for r1 in radius_grid():
        worst = gamma_max(val(c) * r1 ** (j + k) for (j, k), c in expansion.items())
        if worst < target:
            break
    else:
        raise DepthError('no radius in the search grid satisfies the contraction bound')
    delta1 = val(s) * r1
    delta = min(r1, delta1)
    logger.debug('inversion domain at %s: r1 = %s, delta = %s', x0, r1, delta)
    return InversionDomain(x0, recentered.coeff(0), s, r1, delta, delta1, expansion)


class InversionCertificate(object):

    def __init__(self, domain, order, iterates, norms, brackets, stabilization, residual,
                 checks, truncated_at=None):
        """Record of a fixed-point inversion run.

        Args:
            domain (InversionDomain): The radii used.
            order (int): The truncation order N.
            iterates (List[PowerSeries]): psi_0, psi_1, ... up to the fixed point.
            norms (List[Gamma]): Gamma-norms of psi_(k+1) - psi_k on the ball of radius delta.
            brackets (List[Tuple[DyadicDist, DyadicDist]]): d_1 brackets of the same pairs.
            stabilization (int): First k with psi_(k+1) = psi_k.
            residual (PowerSeries): f(g(y)) - y through order N.
            checks (Dict[str, bool]): Contraction, d_1 contraction, well-definedness and residual.
            truncated_at (int): Table order used for a bound-rule input, None for polynomials.

        """
        self.domain = domain
        self.order = order
        self.iterates = iterates
        self.norms = norms
        self.brackets = brackets
        self.stabilization = stabilization
        self.residual = residual
        self.checks = checks
        self.truncated_at = truncated_at

    @property
    def valid(self):
        return all(self.checks.values())

    def to_dict(self):
        result = {
            'domain': self.domain.to_dict(),
            'order': self.order,
            'stabilization': self.stabilization,
            'iterations': [
                {'k': k, 'norm': str(norm), 'd1': [str(lower), str(upper)]}
                for k, (norm, (lower, upper)) in enumerate(zip(self.norms, self.brackets))
            ],
            'residual': [str(self.residual.coeff(n)) for n in range(self.order + 1)],
            'checks': dict(self.checks),
        }
        if self.truncated_at is not None:
            result['truncated_at'] = self.truncated_at
        return result

    def lines(self):
        yield 'domain: {0}'.format(self.domain)
        for k, (norm, (lower, upper)) in enumerate(zip(self.norms, self.brackets)):
            yield 'k = {0}: norm {1}, d1 in [{2}, {3}]'.format(k, norm, lower, upper)
        yield 'stabilized at iteration {0}'.format(self.stabilization)
        for name, passed in sorted(self.checks.items()):
            yield '{0}: {1}'.format(name, 'ok' if passed else 'FAILED')


def compose_residual(f, g, N):
    """Get f(g(y)) - y through order N.

    Args:
        f (PowerSeries): The function.
        g (PowerSeries): A candidate inverse centered at y0.
        N (int): The order.

    Returns:
        PowerSeries: The residual polynomial, zero for a valid inverse.

    """
    outer = series_recenter(_polynomial(f, N), g.coeff(0))
    composed = series_compose(outer, g, N)
    return truncate(composed - PowerSeries.identity(g.center), N)


def _d1_contracts(brackets):
    for (lower, upper), (_, previous) in zip(brackets[1:], brackets):
        if lower.value > previous.value / 2 or upper > previous:
            return False
    return True


def picard_invert(f, x0, N):
    """Invert f near x0 by iterating psi -> psi - s^-1 (f(psi) - y) on truncated series.

    Starting from psi_0 = x0, each step fixes at least one more coefficient of the inverse, so the
    iterates stabilize within N + 2 steps.

    Args:
        f (PowerSeries): The function.
        x0 (FieldElem): The base point.
        N (int): The truncation order, at least 1.

    Returns:
        Tuple[PowerSeries, InversionCertificate]: The inverse g centered at y0 = f(x0), and the
            certificate of the run.

    Raises:
        PivotError: If f'(x0) = 0.
        InternalError: If the iteration does not stabilize.

    """
    if N < 1:
        raise DomainError('inversion order must be at least 1, got {0}'.format(N))
    x0 = coerce(x0)
    domain = inversion_domain(f, x0)
    outer = series_recenter(_polynomial(f, N), x0)
    y = PowerSeries.identity(domain.y0)
    inverse_slope = domain.s.inverse()
    psi = PowerSeries.constant(x0, domain.y0)
    iterates = [psi]
    for k in range(N + 2):
        composed = series_compose(outer, psi, N)
        following = truncate(psi - (composed - y) * inverse_slope, N)
        if following == psi:
            stabilization = k
            break
        logger.debug('iteration %d: %s', k + 1, following.expression('y'))
        iterates.append(following)
        psi = following
    else:
        raise InternalError('fixed-point iteration did not stabilize in {0} steps'.format(N + 2))

    norms = []
    brackets = []
    for before, after in zip(iterates, iterates[1:]):
        norm, lower, upper = func_dist_bracket(after, before, domain.delta)
        norms.append(norm)
        brackets.append((lower, upper))
    contraction_factor = Gamma.generator(1, -1)
    residual = compose_residual(f, psi, N)
    checks = {
        'contraction': all(later <= contraction_factor * earlier
                           for earlier, later in zip(norms, norms[1:])),
        'd1_contraction': _d1_contracts(brackets),
        'well_defined': all(sup_norm_ball(iterate - x0, domain.delta)[0] <= domain.r1
                            for iterate in iterates),
        'residual_zero': residual.is_zero,
    }
    truncated_at = None if f.is_polynomial else min(N, f.order)
    certificate = InversionCertificate(domain, N, iterates, norms, brackets, stabilization,
                                       residual, checks, truncated_at)
    return psi, certificate


def _product(a, b, size):
    product = [FieldElem.constant(0)] * size
    for i in range(size):
        if a[i].is_zero:
            continue
        for j in range(size - i):
            product[i + j] = product[i + j] + a[i] * b[j]
    return product


def series_reversion_oracle(f, x0, N):
    """Solve f(g(y)) = y order by order.

    With f = sum a_n (x - x0)^n and g = x0 + sum b_n (y - y0)^n, the coefficient of (y - y0)^n
    in sum_k a_k (g - x0)^k is a_1 b_n plus terms in b_1..b_(n-1), so each b_n follows from a
    triangular step.

    Args:
        f (PowerSeries): The function.
        x0 (FieldElem): The base point.
        N (int): The order.

    Returns:
        List[FieldElem]: b_1..b_N.

    Raises:
        PivotError: If a_1 = 0.

    """
    recentered = series_recenter(_polynomial(f, N), coerce(x0))
    a = [recentered.coeff(n) for n in range(N + 1)]
    if a[1].is_zero:
        raise PivotError('the linear coefficient vanishes at {0}'.format(x0))
    zero = FieldElem.constant(0)
    b = [zero] * (N + 1)
    b[1] = a[1].inverse()
    for n in range(2, N + 1):
        power = list(b)
        total = zero
        for k in range(2, n + 1):
            power = _product(power, b, N + 1)
            total = total + a[k] * power[n]
        b[n] = -total / a[1]
    return b[1:]

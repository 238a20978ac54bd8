"""Tail descriptions of power series and the bound rules behind them.

A bound rule maps a coefficient index n to a value of the value group that bounds the valuation
of the n-th coefficient. Rules read from series files are products of generator powers whose
indices and exponents are integer formulas in n; arithmetic on series derives new rules from old
ones.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import logging
import re

import simpleeval

from kval import constants
from kval.errors import ConvergenceError, DomainError
from kval.gamma import Gamma, gamma_max


logger = logging.getLogger(__name__)


EVAL_FUNCS = {
    'abs': abs,
    'max': max,
    'min': min,
}


class Evaluator(object):

    def __init__(self, formula, x_key='n'):
        """Evaluates an integer formula in one variable.

        Args:
            formula (str): A Python arithmetic expression, e.g. ``n+1`` or ``-2*n``.
            x_key (str): The name of the variable in the formula.

        Raises:
            DomainError: If the formula cannot be evaluated at 1.

        """
        self.formula = re.sub(r'\s+', '', formula)
        self.x_key = x_key
        self.get_value(1)

    def get_value(self, x):
        """Get the value of the formula at an integer.

        Args:
            x (int): The input.

        Returns:
            int: The value.

        Raises:
            DomainError: If the formula is invalid or its value is not an integer.

        """
        try:
            value = simpleeval.simple_eval(self.formula, names={self.x_key: x},
                                           functions=EVAL_FUNCS)
        except Exception:
            raise DomainError('Error in the produced formula: {0}'.format(self.formula))
        if isinstance(value, bool) or not isinstance(value, int):
            raise DomainError('formula {0} is not integer valued'.format(self.formula))
        return value

    @property
    def is_literal(self):
        return re.match(r'^-?[0-9]+$', self.formula) is not None

    def __str__(self):
        return self.formula


class Rule(object):
    """Base class of bound rules; subclasses implement ``bound`` and ``__str__``."""

    def bound(self, n):
        raise NotImplementedError

    def __eq__(self, other):
        if not isinstance(other, Rule):
            return NotImplemented
        return str(self) == str(other)

    def __ne__(self, other):
        result = self.__eq__(other)
        if result is NotImplemented:
            return result
        return not result

    def __hash__(self):
        return hash(str(self))

    def __repr__(self):
        return '{0}({1!r})'.format(type(self).__name__, str(self))


class ZeroRule(Rule):

    def bound(self, n):
        return Gamma.zero()

    def __str__(self):
        return '0v'


class ExpressionRule(Rule):

    def __init__(self, factors):
        """A product of generator powers g[i(n)]^e(n).

        Args:
            factors (List[Tuple[Evaluator, Evaluator]]): Index and exponent formulas. An empty
                list is the identity.

        """
        self.factors = list(factors)

    def bound(self, n):
        pairs = []
        for index, exponent in self.factors:
            i = index.get_value(n)
            if i < 1:
                raise DomainError('rule {0} has generator index {1} at n = {2}'.format(
                    self, i, n))
            pairs.append((i, exponent.get_value(n)))
        return Gamma(pairs)

    def __str__(self):
        if not self.factors:
            return '1'
        pieces = []
        for index, exponent in self.factors:
            if re.match(r'^[0-9]+$', index.formula):
                text = 'g{0}'.format(index)
            else:
                text = 'g[{0}]'.format(index)
            if exponent.formula != '1':
                if exponent.is_literal:
                    text += '^{0}'.format(exponent)
                else:
                    text += '^({0})'.format(exponent)
            pieces.append(text)
        return '*'.join(pieces)


class TableRule(Rule):

    def __init__(self, values, rule):
        """Explicit values at n = 0..len(values)-1, then another rule.

        Args:
            values (List[Gamma]): The leading values.
            rule (Rule): The rule for later indices.

        """
        self.values = list(values)
        self.rule = rule

    def bound(self, n):
        if n < len(self.values):
            return self.values[n]
        return self.rule.bound(n)

    def __str__(self):
        return 'table([{0}]; {1})'.format(', '.join(str(v) for v in self.values), self.rule)


class MaxRule(Rule):

    def __init__(self, rules):
        self.rules = list(rules)

    def bound(self, n):
        return gamma_max(rule.bound(n) for rule in self.rules)

    def __str__(self):
        return 'max({0})'.format('; '.join(str(rule) for rule in self.rules))


class ShiftRule(Rule):

    def __init__(self, rule, shift):
        self.rule = rule
        self.shift = shift

    def bound(self, n):
        return self.rule.bound(n + self.shift)

    def __str__(self):
        return 'shift({0}; {1})'.format(self.rule, self.shift)


class ScaleRule(Rule):

    def __init__(self, factor, rule):
        self.factor = factor
        self.rule = rule

    def bound(self, n):
        return self.factor * self.rule.bound(n)

    def __str__(self):
        return 'scale({0}; {1})'.format(self.factor, self.rule)


class ConvolutionRule(Rule):

    def __init__(self, left, right):
        """Bound of a Cauchy product: the largest product left(i)*right(n-i)."""
        self.left = left
        self.right = right

    def bound(self, n):
        return gamma_max(self.left.bound(i) * self.right.bound(n - i) for i in range(n + 1))

    def __str__(self):
        return 'conv({0}; {1})'.format(self.left, self.right)


class RecenterRule(Rule):

    def __init__(self, rule, start, radius, depth):
        """Bound on the coefficients a recentering picks up from the terms k >= start.

        The n-th coefficient after moving the center by w, with val(w) = radius, collects
        C(k, n)*a_k*w^(k-n) over k >= n, so it is bounded by radius^-n times the tail supremum of
        rule(k)*radius^k from max(n, start) on.

        Args:
            rule (Rule): Bound on the original coefficients.
            start (int): First index whose contribution is not stored exactly.
            radius (Gamma): val(w), nonzero.
            depth (int): Depth used for the tail suprema.

        """
        if radius.is_zero:
            raise DomainError('recentering rule needs a nonzero shift')
        self.rule = rule
        self.start = start
        self.radius = radius
        self.depth = depth
        self._schedule = None
        self._bounds = {}

    def bound(self, n):
        if n not in self._bounds:
            if self._schedule is None:
                self._schedule = rule_schedule(self.rule, self.start,
                                               sup_depth(self.radius, self.depth))
            supremum = tail_sup(self.rule, max(n, self.start), self.radius, self.depth,
                                schedule=self._schedule)
            self._bounds[n] = supremum / self.radius ** n
        return self._bounds[n]

    def __str__(self):
        return 'recenter({0}; {1}; {2}; {3})'.format(self.rule, self.start, self.radius,
                                                     self.depth)


class Converges(object):

    converges = True

    def __init__(self, schedule):
        """Verdict carrying N(1..M): coefficients from N(m) on lie below g_m^-1."""
        self.schedule = list(schedule)

    def to_dict(self):
        return {'verdict': 'Converges', 'schedule': list(self.schedule)}

    def __eq__(self, other):
        return isinstance(other, Converges) and self.schedule == other.schedule

    def __str__(self):
        return 'Converges {0}'.format(self.schedule)


class DivergesAt(object):

    converges = False

    def __init__(self, m, index, value):
        """Verdict for a failed threshold g_m^-1, witnessed by a bound at a checked index.

        Args:
            m (int): The first failing threshold index.
            index (int): The last checked coefficient index.
            value (Gamma): The bound there, not below g_m^-1.

        """
        self.m = m
        self.index = index
        self.value = value

    def to_dict(self):
        return {'verdict': 'DivergesAt', 'm': self.m, 'index': self.index,
                'value': str(self.value)}

    def __eq__(self, other):
        return isinstance(other, DivergesAt) and (self.m, self.index, self.value) == (
            other.m, other.index, other.value)

    def __str__(self):
        return 'DivergesAt({0}, n={1}, {2})'.format(self.m, self.index, self.value)


def schedule_search(values, start, depth):
    """Find the least N(m) for m = 1..depth over a finite window of bounds.

    Args:
        values (List[Gamma]): Bounds at indices start, start+1, ...
        start (int): Index of the first value.
        depth (int): Number of thresholds g_m^-1 to check.

    Returns:
        Converges or DivergesAt: The verdict. N(m) is the least index such that every value
            from there to the end of the window lies below g_m^-1.

    """
    end = start + len(values) - 1
    schedule = []
    for m in range(1, depth + 1):
        threshold = Gamma.generator(m, -1)
        least = end + 1
        for offset in range(len(values) - 1, -1, -1):
            if values[offset] < threshold:
                least = start + offset
            else:
                break
        if least > end:
            return DivergesAt(m, end, values[-1])
        schedule.append(least)
    return Converges(schedule)


def window_end(start, depth):
    return start + constants.HORIZON + depth


def rule_schedule(rule, start, depth):
    """Search the schedule of a bound rule from an index on.

    Raises:
        ConvergenceError: If the rule does not drop below some threshold in the window.

    """
    values = [rule.bound(n) for n in range(start, window_end(start, depth) + 1)]
    verdict = schedule_search(values, start, depth)
    if not verdict.converges:
        raise ConvergenceError('tail rule {0} fails at {1}'.format(rule, verdict))
    return verdict.schedule


def sup_depth(radius, depth):
    """Depth needed for a tail supremum at a radius."""
    if radius.is_zero or radius <= Gamma.one():
        return depth
    return max(depth, radius.max_support + 2)


def tail_sup(rule, start, radius, depth, schedule=None):
    """Bound the supremum of rule(n)*radius^n over n >= start.

    Terms past N(j) of the schedule lie below g_j^-1 when radius <= 1. When radius > 1 with
    support up to k, and j >= k+2, those terms lie below every element of H_(j-1), hence below
    g_(j-1)^-1. The finitely many terms before N(j) are evaluated directly.

    Args:
        rule (Rule): The bound rule.
        start (int): First index of the tail.
        radius (Gamma): The radius.
        depth (int): Requested depth.
        schedule (List[int]): A precomputed schedule of the rule from some index <= start, with
            at least ``sup_depth(radius, depth)`` entries.

    Returns:
        Gamma: An upper bound of the tail terms.

    Raises:
        ConvergenceError: If the rule has no schedule at the needed depth.

    """
    if radius.is_zero:
        return rule.bound(0) if start == 0 else Gamma.zero()
    j = sup_depth(radius, depth)
    if radius <= Gamma.one():
        cap = Gamma.generator(j, -1)
    else:
        cap = Gamma.generator(j - 1, -1)
    if schedule is None or len(schedule) < j:
        schedule = rule_schedule(rule, start, j)
    stop = max(schedule[j - 1], start)
    middle = gamma_max(rule.bound(n) * radius ** n for n in range(start, stop))
    return max(cap, middle)


class ZeroAfter(object):
    """Tail of a polynomial: every coefficient past the table is zero."""

    kind = 'zero_after'
    approximate = False
    schedule = None

    def rule(self):
        return ZeroRule()

    def __eq__(self, other):
        return isinstance(other, ZeroAfter)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash('ZeroAfter')


class BoundRule(object):

    kind = 'bound'

    def __init__(self, rule, schedule=None, approximate=False):
        """Tail bounded by a rule past the table.

        Args:
            rule (Rule): Bound on val(a_n) for n beyond the table.
            schedule (List[int]): Declared N(1..M), verified when the series is built.
            approximate (bool): When set, the stored coefficients are only known up to an error
                whose valuation at index n is bounded by the same rule.

        """
        self._rule = rule
        self.schedule = list(schedule) if schedule is not None else None
        self.approximate = approximate

    def rule(self):
        return self._rule

    def __eq__(self, other):
        if not isinstance(other, BoundRule):
            return False
        return (str(self._rule), self.schedule, self.approximate) == (
            str(other._rule), other.schedule, other.approximate)

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash((str(self._rule), tuple(self.schedule or ()), self.approximate))

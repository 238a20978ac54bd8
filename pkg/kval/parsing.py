"""Grammars for field elements, series expressions, values, balls and tail bound rules.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import functools
import operator
import re

import pyparsing as pp

from kval.errors import DomainError, ParseError
from kval.fields import FieldElem
from kval.gamma import Gamma
from kval.series import PowerSeries
from kval.tails import (ConvolutionRule, Evaluator, ExpressionRule, MaxRule, RecenterRule,
                        ScaleRule, ShiftRule, TableRule, ZeroRule)
from kval.valuation import ORDER_OPEN, VAL_CLOSED, VAL_OPEN, Ball


INDETERMINATES = ('z', 'y')

KINDS = ('field', 'gamma', 'ball', 'series', 'rule')


class _Node(object):

    __slots__ = ('op', 'args')

    def __init__(self, op, *args):
        self.op = op
        self.args = args


def _fold(tokens):
    node = tokens[0]
    for i in range(1, len(tokens), 2):
        node = _Node(tokens[i], node, tokens[i + 1])
    return node


def _power(tokens):
    if len(tokens) == 1:
        return tokens[0]
    return _Node('^', tokens[0], int(tokens[1]))


@functools.lru_cache(maxsize=None)
def field_grammar(indeterminate=None):
    """Build the expression grammar, with an optional series indeterminate.

    Operators bind as usual: ``^`` (integer exponent) over unary ``-`` over ``*`` and ``/``
    over ``+`` and ``-``. Every operator is followed by an error stop, so a missing operand is
    reported at its own column.

    """
    expr = pp.Forward()
    integer = pp.Regex(r'[0-9]+').set_parse_action(lambda t: _Node('int', int(t[0])))
    variable = pp.Regex(r'X[1-9][0-9]*').set_parse_action(lambda t: _Node('var', int(t[0][1:])))
    atoms = [integer, variable]
    if indeterminate is not None:
        name = pp.Regex(re.escape(indeterminate) + r'(?![A-Za-z0-9_])')
        atoms.append(name.set_parse_action(lambda t: _Node('z')))
    group = pp.Suppress('(') - expr - pp.Suppress(')')
    atom = pp.MatchFirst(atoms) | group
    power = (atom + pp.Optional(pp.Suppress('^') - pp.Regex(r'-?[0-9]+')))
    power.set_parse_action(_power)
    unary = pp.Forward()
    negation = (pp.Suppress('-') + unary).set_parse_action(lambda t: _Node('neg', t[0]))
    unary <<= negation | power
    term = (unary + pp.ZeroOrMore(pp.one_of('* /') - unary)).set_parse_action(_fold)
    expr <<= (term + pp.ZeroOrMore(pp.one_of('+ -') - term)).set_parse_action(_fold)
    return expr


def _divide(left, right):
    if isinstance(right, PowerSeries):
        if not right.is_constant:
            raise DomainError('cannot divide by a non-constant series')
        right = right.coeffs[0]
    return left / right


_BINARY = {
    '+': operator.add,
    '-': operator.sub,
    '*': operator.mul,
    '/': _divide,
}


def _evaluate(node, center):
    if node.op == 'int':
        return FieldElem.constant(node.args[0])
    if node.op == 'var':
        return FieldElem.variable(node.args[0])
    if node.op == 'z':
        return PowerSeries.identity(center)
    if node.op == 'neg':
        return -_evaluate(node.args[0], center)
    if node.op == '^':
        return _evaluate(node.args[0], center) ** node.args[1]
    left, right = node.args
    return _BINARY[node.op](_evaluate(left, center), _evaluate(right, center))


def _parse(grammar, text):
    try:
        return grammar.parse_string(text, parse_all=True)[0]
    except pp.ParseBaseException as err:
        raise ParseError('invalid input: {0}'.format(err.msg), err.lineno, err.col,
                         expected=err.msg, text=text)


def parse_field(text):
    """Parse a field element, e.g. ``(3*X1^2+7)/(X2-5)``.

    Returns:
        FieldElem: The canonical element.

    Raises:
        ParseError: On a syntax error.
        DomainError: On division by zero.

    """
    return _evaluate(_parse(field_grammar(), text), None)


def parse_series_expression(text, indeterminate='z', center=0):
    """Parse a polynomial series in an indeterminate, e.g. ``z + z^2``.

    Args:
        text (str): The expression.
        indeterminate (str): ``z`` or ``y``.
        center (FieldElem): The center of the resulting series.

    Returns:
        PowerSeries: The polynomial, expanded around the center.

    Raises:
        ParseError: On a syntax error.
        DomainError: On division by a non-constant or by zero.

    """
    if indeterminate not in INDETERMINATES:
        raise DomainError('unknown indeterminate {0!r}'.format(indeterminate))
    value = _evaluate(_parse(field_grammar(indeterminate), text), center)
    if isinstance(value, PowerSeries):
        return value
    return PowerSeries.constant(value, center)


def _generator(tokens):
    exponent = int(tokens[1]) if len(tokens) > 1 else 1
    return Gamma.generator(int(tokens[0][1:]), exponent)


@functools.lru_cache(maxsize=None)
def gamma_grammar():
    """Build the value grammar: ``0v``, ``1``, ``[2,0,1]`` or ``g1^2*g3^-1``."""
    signed = pp.Regex(r'-?[0-9]+')
    zero = pp.Regex(r'0v').set_parse_action(lambda t: Gamma.zero())
    listed = pp.Suppress('[') - pp.Optional(signed + pp.ZeroOrMore(pp.Suppress(',') - signed)) \
        - pp.Suppress(']')
    listed.set_parse_action(lambda t: Gamma.from_list([int(e) for e in t]))
    factor = pp.Regex(r'g[1-9][0-9]*') + pp.Optional(pp.Suppress('^') - signed)
    factor.set_parse_action(_generator)
    product = factor + pp.ZeroOrMore(pp.Suppress('*') - factor)
    product.set_parse_action(lambda t: functools.reduce(operator.mul, t))
    one = pp.Regex(r'1(?![0-9v])').set_parse_action(lambda t: Gamma.one())
    return zero | listed | product | one


def parse_gamma(text):
    """Parse a value of the value group with its adjoined zero.

    Raises:
        ParseError: On a syntax error.

    """
    return _parse(gamma_grammar(), text)


def _make_ball(tokens):
    center, radius = tokens[0], tokens[2]
    if tokens[1] == 'O':
        return Ball(center, ORDER_OPEN, radius)
    kind = VAL_OPEN if len(tokens) > 3 else VAL_CLOSED
    return Ball(center, kind, radius)


@functools.lru_cache(maxsize=None)
def ball_grammar():
    """Build the ball grammar: ``O(a; t)``, ``B(a; r)`` or ``B(a; r-)``."""
    field = (field_grammar() + pp.Empty()).set_parse_action(lambda t: _evaluate(t[0], None))
    order = pp.Suppress('O(') - field + pp.Empty().set_parse_action(lambda t: 'O') \
        - pp.Suppress(';') - field - pp.Suppress(')')
    valued = pp.Suppress('B(') - field + pp.Empty().set_parse_action(lambda t: 'B') \
        - pp.Suppress(';') - gamma_grammar() - pp.Optional(pp.Literal('-')) - pp.Suppress(')')
    return (order | valued).set_parse_action(_make_ball)


def parse_ball(text):
    """Parse a ball.

    Raises:
        ParseError: On a syntax error.
        DomainError: If the radius is not admissible.

    """
    return _parse(ball_grammar(), text)


def _formula(text):
    if text.startswith('(') and text.endswith(')'):
        text = text[1:-1]
    return Evaluator(text)


def _expression_factor(tokens):
    exponent = tokens[1] if len(tokens) > 1 else '1'
    return [(Evaluator(tokens[0]), _formula(exponent))]


@functools.lru_cache(maxsize=None)
def rule_grammar():
    """Build the tail bound rule grammar.

    A rule is ``0v``, a product of generator powers whose indices and exponents are integer
    formulas in n (``g[n]^-1``, ``g1^(-n)``, ``1``), or one of the derived forms
    ``table([v0, v1]; r)``, ``max(r1; r2)``, ``shift(r; k)``, ``scale(v; r)``,
    ``conv(r1; r2)`` and ``recenter(r; start; v; depth)``.

    """
    rule = pp.Forward()
    gamma = gamma_grammar()
    integer = pp.Regex(r'-?[0-9]+').set_parse_action(lambda t: int(t[0]))
    sep = pp.Suppress(';')
    zero = pp.Regex(r'0v').set_parse_action(lambda t: ZeroRule())

    listed = pp.Optional(gamma + pp.ZeroOrMore(pp.Suppress(',') - gamma))
    values = pp.Group(pp.Suppress('[') - listed - pp.Suppress(']'))
    table = (pp.Suppress('table(') - values - sep - rule - pp.Suppress(')'))
    table.set_parse_action(lambda t: TableRule(list(t[0]), t[1]))
    maximum = (pp.Suppress('max(') - rule + pp.ZeroOrMore(sep - rule) - pp.Suppress(')'))
    maximum.set_parse_action(lambda t: MaxRule(list(t)))
    shift = (pp.Suppress('shift(') - rule - sep - integer - pp.Suppress(')'))
    shift.set_parse_action(lambda t: ShiftRule(t[0], t[1]))
    scale = (pp.Suppress('scale(') - gamma - sep - rule - pp.Suppress(')'))
    scale.set_parse_action(lambda t: ScaleRule(t[0], t[1]))
    conv = (pp.Suppress('conv(') - rule - sep - rule - pp.Suppress(')'))
    conv.set_parse_action(lambda t: ConvolutionRule(t[0], t[1]))
    recenter = (pp.Suppress('recenter(') - rule - sep - integer - sep - gamma - sep - integer
                - pp.Suppress(')'))
    recenter.set_parse_action(lambda t: RecenterRule(t[0], t[1], t[2], t[3]))

    index = pp.Regex(r'g([1-9][0-9]*)').set_parse_action(lambda t: t[0][1:]) \
        | (pp.Suppress('g[') - pp.Regex(r'[^\[\]]+') - pp.Suppress(']'))
    exponent = pp.Regex(r'-?[0-9]+') | pp.Regex(r'\((?:[^()]|\([^()]*\))*\)')
    factor = (index + pp.Optional(pp.Suppress('^') - exponent)).set_parse_action(
        _expression_factor)
    product = (factor + pp.ZeroOrMore(pp.Suppress('*') - factor)).set_parse_action(
        lambda t: ExpressionRule(list(t)))
    one = pp.Regex(r'1(?![0-9v])').set_parse_action(lambda t: ExpressionRule([]))

    rule <<= zero | table | maximum | shift | scale | conv | recenter | product | one
    return rule


def parse_rule(text):
    """Parse a tail bound rule.

    Raises:
        ParseError: On a syntax error.
        DomainError: If an index or exponent formula is not integer valued.

    """
    return _parse(rule_grammar(), text)


def detect_kind(text):
    """Guess which grammar a piece of text belongs to.

    Returns:
        str: One of ``field``, ``gamma``, ``ball`` or ``series``.

    """
    text = text.strip()
    if re.match(r'^[OB]\(', text):
        return 'ball'
    if re.match(r'^(0v|\[|g[0-9])', text):
        return 'gamma'
    if re.search(r'(?<![A-Za-z0-9_])[zy](?![A-Za-z0-9_])', text):
        return 'series'
    return 'field'


def _series_indeterminate(text):
    if re.search(r'(?<![A-Za-z0-9_])y(?![A-Za-z0-9_])', text):
        return 'y'
    return 'z'


def parse_value(text, kind=None):
    """Parse text in one of the published grammars.

    Args:
        text (str): The input.
        kind (str): One of ``field``, ``gamma``, ``ball``, ``series`` or ``rule``; detected
            when omitted.

    Returns:
        Tuple[object, str]: The value and the kind used.

    Raises:
        ParseError: On a syntax error.

    """
    kind = kind or detect_kind(text)
    if kind == 'field':
        return parse_field(text), kind
    if kind == 'gamma':
        return parse_gamma(text), kind
    if kind == 'ball':
        return parse_ball(text), kind
    if kind == 'series':
        return parse_series_expression(text, _series_indeterminate(text)), kind
    if kind == 'rule':
        return parse_rule(text), kind
    raise DomainError('unknown grammar {0!r}, expected one of {1}'.format(kind, ', '.join(KINDS)))


def canonical_text(value, indeterminate='z'):
    """Print a parsed value in canonical form."""
    if isinstance(value, PowerSeries):
        return value.expression(indeterminate)
    return str(value)


def parse_roundtrip(text, kind=None):
    """Parse text and print it canonically.

    Args:
        text (str): The input.
        kind (str): The grammar; detected when omitted.

    Returns:
        Tuple[object, str]: The value and its canonical text, which parses back to an equal value.

    Raises:
        ParseError: On a syntax error, with line, column and expected tokens.

    """
    value, kind = parse_value(text, kind)
    indeterminate = _series_indeterminate(text) if kind == 'series' else 'z'
    return value, canonical_text(value, indeterminate)

"""The ``kval`` command line.

Every command returns an :class:`Outcome`; :func:`run_command` renders it as text or as a
structured YAML document and maps errors to exit codes.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import logging
import os
import re
import sys

import click

from kval import constants
from kval.analysis import calculus, inversion
from kval.errors import DomainError, KvalError, ParseError
from kval.fields import FieldElem
from kval.gamma import Gamma
from kval.parsing import (detect_kind, parse_ball, parse_field, parse_gamma, parse_roundtrip,
                          parse_series_expression, parse_value)
from kval.series import (PowerSeries, convergence_check, derivative, func_dist_bracket,
                         series_compose, series_eval, series_recenter, sup_norm_ball,
                         unboundedness_witness)
from kval.session import Session, load_session, locked_session
from kval.system import document, format_series, series_from_yaml
from kval.valuation import Ball, dist, residue, val


logger = logging.getLogger(__name__)

GLOBAL_OPTIONS = ('--format', '--session', '--depth')
GROUPS = ('series', 'session')


class Outcome(object):

    def __init__(self, text, data=None):
        """The payload of a successful command.

        Args:
            text (str): The canonical text printed in text mode.
            data (dict): Extra entries of the structured result.

        """
        self.text = text
        self.data = data or {}

    def result(self):
        result = {'text': self.text}
        result.update(self.data)
        return result


class CommandResult(object):

    def __init__(self, status, output, exit_code, command=None, diagnostics=None):
        self.status = status
        self.output = output
        self.exit_code = exit_code
        self.command = command
        self.diagnostics = diagnostics or []

    @property
    def ok(self):
        return self.status == 'Ok'

    def __repr__(self):
        return 'CommandResult({0!r}, exit_code={1})'.format(self.status, self.exit_code)


def _indeterminate(text):
    if re.search(r'(?<![A-Za-z0-9_])y(?![A-Za-z0-9_])', text):
        return 'y'
    return 'z'


class State(object):

    def __init__(self, session_file=None):
        """Argument resolution against the session and series files.

        Args:
            session_file (str): The session file, or None for an empty in-memory session.

        """
        self.session_file = session_file
        self.session = load_session(session_file) if session_file else Session()

    def _bound(self, text):
        if text in self.session:
            return self.session.get(text)
        return None

    def field(self, text):
        value = self._bound(text)
        if value is None:
            return parse_field(text)
        if isinstance(value, PowerSeries) and value.is_polynomial and value.is_constant:
            return value.coeff(0)
        if not isinstance(value, FieldElem):
            raise DomainError('{0} is bound to a non-field value'.format(text))
        return value

    def gamma(self, text):
        value = self._bound(text)
        if value is None:
            return parse_gamma(text)
        if not isinstance(value, Gamma):
            raise DomainError('{0} is bound to a non-gamma value'.format(text))
        return value

    def ball(self, text):
        value = self._bound(text)
        if value is None:
            return parse_ball(text)
        if not isinstance(value, Ball):
            raise DomainError('{0} is bound to a non-ball value'.format(text))
        return value

    def series(self, text, center='0'):
        """Resolve a series from a binding, a ``.yaml`` series file or an expression."""
        value = self._bound(text)
        if value is not None:
            if isinstance(value, FieldElem):
                return PowerSeries.constant(value, self.field(center))
            if not isinstance(value, PowerSeries):
                raise DomainError('{0} is bound to a non-series value'.format(text))
            return value
        if text.endswith(('.yaml', '.yml')):
            return series_from_yaml(text)
        return parse_series_expression(text, _indeterminate(text), self.field(center))

    def value(self, text):
        bound = self._bound(text)
        if bound is not None:
            return bound
        if text.endswith(('.yaml', '.yml')) and os.path.isfile(text):
            return series_from_yaml(text)
        value, _ = parse_value(text)
        return value

    def bind(self, name, value):
        """Bind a value and write it through to the session file under one lock."""
        if not self.session_file:
            raise DomainError('session save needs --session FILE')
        with locked_session(self.session_file) as stored:
            stored.bind(name, value)
        self.session.bind(name, value)


def series_outcome(series, indeterminate='z'):
    return Outcome(format_series(series, indeterminate).rstrip('\n'),
                   {'series': series.to_dict()})


def report_outcome(report):
    return Outcome(str(report), report.to_dict())


@click.group()
@click.option('--format', 'output_format', type=click.Choice(['text', 'structured']),
              default='text', show_default=True, help='Output mode.')
@click.option('--session', 'session_file', type=click.Path(dir_okay=False), default=None,
              help='Session file holding named bindings.')
@click.option('--depth', type=int, default=None,
              help='Convergence depth M, overriding KVAL_DEPTH.')
@click.option('--verbose', is_flag=True, help='Log the computation to stderr.')
@click.pass_context
def cli(ctx, output_format, session_file, depth, verbose):
    """Exact arithmetic and analysis in the Krull-valued field K."""
    if verbose:
        logging.basicConfig(level=logging.DEBUG, stream=sys.stderr,
                            format='%(levelname)s %(name)s: %(message)s')
    ctx.with_resource(constants.depth_override(depth))
    ctx.obj = State(session_file)


@cli.command('parse')
@click.argument('text')
@click.option('--kind', type=click.Choice(['field', 'gamma', 'ball', 'series', 'rule']),
              default=None, help='Grammar to use; detected when omitted.')
def parse_command(text, kind):
    """Print TEXT in canonical form."""
    _, canonical = parse_roundtrip(text, kind)
    return Outcome(canonical, {'kind': kind or detect_kind(text)})


@cli.command('eval')
@click.argument('expr')
@click.pass_obj
def eval_command(state, expr):
    """Reduce a field expression."""
    return Outcome(str(state.field(expr)))


@cli.command('cmp')
@click.argument('a')
@click.argument('b')
@click.pass_obj
def cmp_command(state, a, b):
    """Compare two field elements in the order of K."""
    return Outcome(str(state.field(a).compare(state.field(b))))


@cli.command('val')
@click.argument('expr')
@click.pass_obj
def val_command(state, expr):
    """Print the valuation of a field element."""
    value = val(state.field(expr))
    return Outcome(str(value), {'exponents': None if value.is_zero else value.to_list()})


@cli.command('dist')
@click.argument('a')
@click.argument('b')
@click.pass_obj
def dist_command(state, a, b):
    """Print the dyadic distance of two field elements."""
    distance = dist(state.field(a), state.field(b))
    return Outcome(str(distance), {'exponent': distance.exponent})


@cli.command('residue')
@click.argument('expr')
@click.pass_obj
def residue_command(state, expr):
    """Print the residue of an element of the local ring."""
    return Outcome(str(residue(state.field(expr))))


@cli.command('ball')
@click.argument('ball')
@click.argument('point')
@click.pass_obj
def ball_command(state, ball, point):
    """Test whether POINT lies in BALL."""
    contained = state.ball(ball).contains(state.field(point))
    return Outcome('true' if contained else 'false', {'contains': contained})


@cli.group('series')
def series_group():
    """Power series operations."""


@series_group.command('add')
@click.argument('f')
@click.argument('g')
@click.option('--center', default='0', help='Center of series given as expressions.')
@click.pass_obj
def series_add(state, f, g, center):
    """Add two series."""
    return series_outcome(state.series(f, center) + state.series(g, center), _indeterminate(f))


@series_group.command('mul')
@click.argument('f')
@click.argument('g')
@click.option('--center', default='0', help='Center of series given as expressions.')
@click.pass_obj
def series_mul(state, f, g, center):
    """Multiply two series."""
    return series_outcome(state.series(f, center) * state.series(g, center), _indeterminate(f))


@series_group.command('diff')
@click.argument('f')
@click.option('--times', type=int, default=1, show_default=True, help='Derivative order.')
@click.option('--center', default='0', help='Center of a series given as an expression.')
@click.pass_obj
def series_diff(state, f, times, center):
    """Differentiate a series."""
    return series_outcome(derivative(state.series(f, center), times), _indeterminate(f))


@series_group.command('recenter')
@click.argument('f')
@click.argument('v')
@click.option('--order', type=int, default=None, help='Truncation order of the result.')
@click.option('--center', default='0', help='Center of a series given as an expression.')
@click.pass_obj
def series_recenter_command(state, f, v, order, center):
    """Re-expand a series around V."""
    return series_outcome(series_recenter(state.series(f, center), state.field(v), order),
                          _indeterminate(f))


@series_group.command('compose')
@click.argument('outer')
@click.argument('inner')
@click.option('--order', type=int, required=True, help='Truncation order of the result.')
@click.pass_obj
def series_compose_command(state, outer, inner, order):
    """Compose OUTER after INNER; OUTER must be centered at the constant term of INNER."""
    inner_series = state.series(inner)
    outer_series = state.series(outer, str(inner_series.coeff(0)))
    return series_outcome(series_compose(outer_series, inner_series, order),
                          _indeterminate(inner))


@series_group.command('eval')
@click.argument('f')
@click.argument('z')
@click.option('--center', default='0', help='Center of a series given as an expression.')
@click.pass_obj
def series_eval_command(state, f, z, center):
    """Evaluate a series at a point of its ball of convergence."""
    value, bound = series_eval(state.series(f, center), state.field(z))
    if bound.is_zero:
        return Outcome(str(value), {'value': str(value), 'tail_bound': str(bound)})
    return Outcome('{0} (tail below {1})'.format(value, bound),
                   {'value': str(value), 'tail_bound': str(bound)})


@series_group.command('converges')
@click.argument('f')
@click.pass_obj
def series_converges(state, f):
    """Decide convergence of a series on the unit ball."""
    return report_outcome(convergence_check(state.series(f)))


@series_group.command('norm')
@click.argument('f')
@click.argument('r')
@click.option('--center', default='0', help='Center of a series given as an expression.')
@click.pass_obj
def series_norm(state, f, r, center):
    """Print the Gamma-norm of a series on the ball of radius R."""
    norm, argmax = sup_norm_ball(state.series(f, center), state.gamma(r))
    text = str(norm)
    if argmax:
        text = '{0} at n in {{{1}}}'.format(norm, ', '.join(str(n) for n in argmax))
    return Outcome(text, {'norm': str(norm), 'argmax': list(argmax)})


@series_group.command('witness')
@click.argument('f')
@click.argument('r')
@click.option('--center', default='0', help='Center of a series given as an expression.')
@click.pass_obj
def series_witness(state, f, r, center):
    """Find a point where a non-constant series exceeds R."""
    return Outcome(str(unboundedness_witness(state.series(f, center), state.gamma(r))))


@series_group.command('bracket')
@click.argument('f')
@click.argument('g')
@click.argument('r')
@click.option('--center', default='0', help='Center of series given as expressions.')
@click.pass_obj
def series_bracket(state, f, g, r, center):
    """Bracket the distance d_1 of two series on the ball of radius R."""
    norm, lower, upper = func_dist_bracket(state.series(f, center), state.series(g, center),
                                           state.gamma(r))
    return Outcome('{0} in [{1}, {2}]'.format(norm, lower, upper),
                   {'norm': str(norm), 'lower': str(lower), 'upper': str(upper)})


@cli.command('classify')
@click.argument('f')
@click.argument('x0')
@click.pass_obj
def classify_command(state, f, x0):
    """Classify X0 as a relative minimum, maximum or neither."""
    return report_outcome(calculus.classify_extremum(state.series(f), state.field(x0)))


@cli.command('monotone')
@click.argument('f')
@click.argument('a')
@click.argument('b')
@click.pass_obj
def monotone_command(state, f, a, b):
    """Certify that a function increases on [A, B]."""
    return report_outcome(calculus.monotone_certificate(
        state.series(f), state.field(a), state.field(b)))


@cli.command('invert')
@click.option('--f', 'function', required=True, help='The function to invert.')
@click.option('--x0', required=True, help='The base point.')
@click.option('--order', type=int, required=True, help='Truncation order N.')
@click.pass_obj
def invert_command(state, function, x0, order):
    """Invert a function near X0 by fixed-point iteration."""
    inverse, certificate = inversion.picard_invert(state.series(function), state.field(x0),
                                                   order)
    lines = [inverse.expression('y')]
    lines.extend(certificate.lines())
    data = {'series': inverse.to_dict(), 'certificate': certificate.to_dict()}
    return Outcome('\n'.join(lines), data)


@cli.command('oracle')
@click.option('--f', 'function', required=True, help='The function to invert.')
@click.option('--x0', required=True, help='The base point.')
@click.option('--order', type=int, required=True, help='Number of coefficients.')
@click.pass_obj
def oracle_command(state, function, x0, order):
    """Print the inverse coefficients b_1..b_N by series reversion."""
    coeffs = [str(c) for c in inversion.series_reversion_oracle(
        state.series(function), state.field(x0), order)]
    return Outcome(', '.join(coeffs), {'coeffs': coeffs})


@cli.group('session')
def session_group():
    """Named bindings kept in the session file."""


@session_group.command('save')
@click.argument('name')
@click.argument('value')
@click.pass_obj
def session_save(state, name, value):
    """Bind NAME to VALUE and write the session file."""
    state.bind(name, state.value(value))
    return Outcome(name)


@session_group.command('record', context_settings={'ignore_unknown_options': True})
@click.argument('name')
@click.argument('command', nargs=-1, required=True, type=click.UNPROCESSED)
@click.pass_obj
def session_record(state, name, command):
    """Run COMMAND and bind its structured result to NAME as a report."""
    if command[0] == 'session':
        raise DomainError('session commands cannot be recorded')
    argv = list(command)
    if state.session_file:
        argv = ['--session', state.session_file] + argv
    outcome = cli.main(args=argv, prog_name='kval', standalone_mode=False)
    if not isinstance(outcome, Outcome):
        raise DomainError('{0} produced no result to record'.format(' '.join(command)))
    state.bind(name, outcome.result())
    return Outcome(name, {'report': outcome.result()})


@session_group.command('load')
@click.argument('name')
@click.pass_obj
def session_load(state, name):
    """Print the value bound to NAME."""
    value = state.session.get(name)
    if isinstance(value, PowerSeries):
        return series_outcome(value)
    if isinstance(value, dict):
        return Outcome(value.get('text', ''), {'kind': 'report', 'report': value})
    return Outcome(str(value), {'kind': state.session.bindings[name]['kind']})


@session_group.command('list')
@click.pass_obj
def session_list(state):
    """List the bound names with their kinds."""
    names = state.session.names()
    lines = ['{0}: {1}'.format(name, state.session.bindings[name]['kind']) for name in names]
    return Outcome('\n'.join(lines), {'names': names})


def _scan(argv):
    """Get the output format and the command path from raw arguments."""
    output_format = 'text'
    command = []
    tokens = iter(argv)
    for token in tokens:
        if token in GLOBAL_OPTIONS:
            value = next(tokens, None)
            if token == '--format':
                output_format = value
        elif token.startswith('--format='):
            output_format = token.split('=', 1)[1]
        elif token.startswith('-'):
            continue
        else:
            command.append(token)
            if command[0] not in GROUPS or len(command) == 2:
                break
    return output_format, ' '.join(command)


def _error_result(output_format, command, message, name, exit_code, extra=None):
    diagnostics = [message]
    payload = {'text': message, 'error': name}
    payload.update(extra or {})
    if output_format == 'structured':
        return CommandResult('Error', document(command, 'Error', payload).rstrip('\n'),
                             exit_code, command, diagnostics)
    return CommandResult('Error', '', exit_code, command, diagnostics)


def run_command(argv):
    """Run one command.

    Args:
        argv (List[str]): The arguments after the program name.

    Returns:
        CommandResult: The status, the rendered output and the exit code: 0 on success, 1 on a
            library error and 2 on a parse or usage error.

    """
    argv = list(argv)
    output_format, command = _scan(argv)
    try:
        outcome = cli.main(args=argv, prog_name='kval', standalone_mode=False)
    except click.UsageError as error:
        usage = error.ctx.get_usage() if error.ctx is not None else ''
        result = _error_result(output_format, command, error.format_message(), 'UsageError', 2)
        if usage:
            result.diagnostics.insert(0, usage)
        return result
    except click.ClickException as error:
        return _error_result(output_format, command, error.format_message(),
                             type(error).__name__, error.exit_code)
    except click.exceptions.Abort:
        return CommandResult('Error', '', 1, command, ['aborted'])
    except ParseError as error:
        extra = {'line': error.line, 'column': error.column}
        if error.expected:
            extra['expected'] = error.expected
        return _error_result(output_format, command, str(error), type(error).__name__, 2, extra)
    except KvalError as error:
        logger.debug('%s failed: %s', command, error)
        return _error_result(output_format, command, str(error), type(error).__name__, 1)
    except IOError as error:
        return _error_result(output_format, command, str(error), type(error).__name__, 1)
    if not isinstance(outcome, Outcome):
        # --help and similar print through click themselves
        return CommandResult('Ok', '', outcome or 0, command)
    if output_format == 'structured':
        output = document(command, 'Ok', outcome.result()).rstrip('\n')
    else:
        output = outcome.text
    return CommandResult('Ok', output, 0, command)


def main(argv=None):
    result = run_command(sys.argv[1:] if argv is None else argv)
    if result.output:
        click.echo(result.output)
    for message in result.diagnostics:
        click.echo(message, err=True)
    sys.exit(result.exit_code)

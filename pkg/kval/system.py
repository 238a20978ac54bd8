"""Functions for reading and writing series files and structured documents.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import logging
import os

import yaml

from kval import constants
from kval.errors import DomainError
from kval.parsing import parse_field, parse_rule
from kval.series import PowerSeries
from kval.tails import BoundRule, ZeroAfter


logger = logging.getLogger(__name__)


def dump(data):
    """Write a document as block-style YAML, keeping the key order of the mapping."""
    return yaml.safe_dump(data, sort_keys=False, default_flow_style=False, allow_unicode=True)


def series_from_dict(data):
    """Build a series from the series file form.

    Args:
        data (dict): A mapping with ``center``, ``coeffs`` and ``tail``; ``tail`` holds either
            ``zero_after: N`` or ``bound: {rule, schedule, approximate}``. Unknown keys are ignored.

    Returns:
        PowerSeries: The series.

    Raises:
        DomainError: If a required field is missing or malformed.
        ParseError: If a value does not parse.
        ConvergenceError: If a declared schedule does not hold.

    """
    if not isinstance(data, dict):
        raise DomainError('a series document must be a mapping')
    try:
        center = parse_field(str(data.get('center', 0)))
        coeffs = [parse_field(str(c)) for c in data['coeffs']]
        tail = data.get('tail') or {'zero_after': len(coeffs) - 1}
    except (KeyError, TypeError):
        raise DomainError('a series document needs a coeffs list')
    if 'bound' in tail:
        bound = tail['bound'] or {}
        if 'rule' not in bound:
            raise DomainError('a bound tail needs a rule')
        rule = parse_rule(str(bound['rule']))
        tail = BoundRule(rule, bound.get('schedule'), bool(bound.get('approximate', False)))
    elif 'zero_after' in tail:
        tail = ZeroAfter()
    else:
        raise DomainError('unknown tail {0!r}'.format(tail))
    return PowerSeries(center, coeffs, tail)


def series_from_yaml(filename):
    """Open a series file.

    Args:
        filename (str): The name of the file to open.

    Returns:
        PowerSeries: The series in the file.

    Raises:
        IOError: if the specified filename does not have an associated file.

    """
    if os.path.isfile(filename):
        with open(filename, 'rt') as open_file:
            data = yaml.safe_load(open_file)
        logger.debug('read series file %s', filename)
        return series_from_dict(data)
    raise IOError('no such series file: {0}'.format(filename))


def series_to_yaml(series):
    return dump(series.to_dict())


def yaml_from_series(filename, series):
    """Write a series to a file.

    Args:
        filename (str): The name of the file to write.
        series (PowerSeries): The series.

    """
    with open(filename, 'w') as out:
        out.write(series_to_yaml(series))


def format_series(series, indeterminate='z'):
    """Get the canonical text of a series.

    Polynomials print as expressions in the indeterminate; bound-rule series print as their
    series file document.

    """
    if series.is_polynomial:
        return series.expression(indeterminate)
    return series_to_yaml(series)


def document(command, status, result):
    """Build the structured output document of a command.

    Args:
        command (str): The command path, e.g. ``series add``.
        status (str): ``Ok`` or ``Error``.
        result (dict): The payload; always has a ``text`` entry.

    Returns:
        str: The YAML document.

    """
    return dump({
        'version': constants.SCHEMA_VERSION,
        'status': status,
        'command': command,
        'result': result,
    })

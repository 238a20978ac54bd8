"""Named bindings persisted between command invocations.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import contextlib
import fcntl
import logging
import os
import re

import yaml

from kval import constants
from kval.errors import DomainError
from kval.fields import FieldElem
from kval.gamma import Gamma
from kval.parsing import parse_ball, parse_field, parse_gamma
from kval.series import PowerSeries
from kval.system import series_from_dict
from kval.valuation import Ball


logger = logging.getLogger(__name__)


IDENTIFIER = re.compile(r'^[A-Za-z_][A-Za-z0-9_]*$')
RESERVED = re.compile(r'^(X[0-9]+|g[0-9]+|z|y)$')

KINDS = ('field', 'gamma', 'ball', 'series', 'report')


def check_name(name):
    """Raise DomainError unless a name can be bound."""
    if not IDENTIFIER.match(name):
        raise DomainError('{0!r} is not an identifier'.format(name))
    if RESERVED.match(name):
        raise DomainError('{0!r} collides with a variable, value or series token'.format(name))


def kind_of(value):
    if isinstance(value, FieldElem):
        return 'field'
    if isinstance(value, Gamma):
        return 'gamma'
    if isinstance(value, Ball):
        return 'ball'
    if isinstance(value, PowerSeries):
        return 'series'
    if isinstance(value, dict):
        return 'report'
    raise DomainError('cannot bind a {0}'.format(type(value).__name__))


class Session(object):

    def __init__(self, bindings=None):
        """A map from identifiers to stored values.

        Args:
            bindings (Dict[str, dict]): Entries ``{kind, value}`` where value is the canonical
                text of a field element, value or ball, the series file form of a series, or a
                report mapping.

        """
        self.bindings = {}
        for name, entry in (bindings or {}).items():
            check_name(name)
            if entry.get('kind') not in KINDS:
                raise DomainError('binding {0} has unknown kind {1!r}'.format(
                    name, entry.get('kind')))
            self.bindings[name] = {'kind': entry['kind'], 'value': entry['value']}

    def bind(self, name, value):
        check_name(name)
        kind = kind_of(value)
        if kind == 'series':
            stored = value.to_dict()
        elif kind == 'report':
            stored = value
        else:
            stored = str(value)
        self.bindings[name] = {'kind': kind, 'value': stored}

    def __contains__(self, name):
        return name in self.bindings

    def get(self, name):
        """Get a bound value, rebuilt from its stored form.

        Raises:
            DomainError: If the name is unbound.

        """
        if name not in self.bindings:
            raise DomainError('{0} is not bound in the session'.format(name))
        entry = self.bindings[name]
        kind, stored = entry['kind'], entry['value']
        if kind == 'field':
            return parse_field(stored)
        if kind == 'gamma':
            return parse_gamma(stored)
        if kind == 'ball':
            return parse_ball(stored)
        if kind == 'series':
            return series_from_dict(stored)
        return stored

    def names(self):
        return sorted(self.bindings)

    def to_dict(self):
        return {
            'version': constants.SESSION_VERSION,
            'bindings': {name: dict(self.bindings[name]) for name in self.names()},
        }

    @classmethod
    def from_dict(cls, data):
        if not data:
            return cls()
        version = data.get('version')
        if not isinstance(version, int) or version > constants.SESSION_VERSION:
            raise DomainError('unsupported session version {0!r}'.format(version))
        return cls(data.get('bindings') or {})


def load_session(filename):
    """Read a session file under a shared lock; a missing file is an empty session."""
    if not os.path.isfile(filename):
        return Session()
    with open(filename, 'rt') as open_file:
        fcntl.flock(open_file, fcntl.LOCK_SH)
        try:
            data = yaml.safe_load(open_file)
        finally:
            fcntl.flock(open_file, fcntl.LOCK_UN)
    logger.debug('loaded session %s', filename)
    return Session.from_dict(data)


def dump_session(session):
    return yaml.safe_dump(session.to_dict(), sort_keys=True, default_flow_style=False)


def save_session(filename, session):
    """Write a session file under an exclusive lock.

    Args:
        filename (str): The session file.
        session (Session): The bindings.

    """
    text = dump_session(session)
    with open(filename, 'a+') as out:
        fcntl.flock(out, fcntl.LOCK_EX)
        try:
            _rewrite(out, text)
        finally:
            fcntl.flock(out, fcntl.LOCK_UN)
    logger.debug('saved session %s', filename)


def _rewrite(open_file, text):
    open_file.seek(0)
    open_file.truncate()
    open_file.write(text)
    open_file.flush()


@contextlib.contextmanager
def locked_session(filename):
    """Change a session file under one exclusive lock.

    The file is read after the lock is taken and rewritten from the yielded session before the
    lock is released. Nothing is written when the block raises.

    Args:
        filename (str): The session file, created when missing.

    Yields:
        Session: The bindings currently on disk.

    """
    with open(filename, 'a+') as open_file:
        fcntl.flock(open_file, fcntl.LOCK_EX)
        try:
            open_file.seek(0)
            session = Session.from_dict(yaml.safe_load(open_file.read()))
            yield session
            _rewrite(open_file, dump_session(session))
        finally:
            fcntl.flock(open_file, fcntl.LOCK_UN)
    logger.debug('updated session %s', filename)

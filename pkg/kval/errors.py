"""Exceptions raised by kval.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""


class KvalError(Exception):
    """Base class of every library error."""


class DomainError(KvalError):
    """An argument lies outside the domain of an operation."""


class ParseError(KvalError):

    def __init__(self, message, line=1, column=1, expected=None, text=None):
        """A syntax error in one of the published grammars.

        Args:
            message (str): Description of the failure.
            line (int): 1-based line of the offending token.
            column (int): 1-based column of the offending token.
            expected (str): The token set the parser was expecting, when known.
            text (str): The input that failed to parse.

        """
        super(ParseError, self).__init__(message)
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        self.text = text

    def __str__(self):
        return '{0} (line {1}, column {2})'.format(self.message, self.line, self.column)


class CenterError(KvalError):
    """Binary series operation on series with different centers."""


class CompositionError(KvalError):
    """Inner series constant term differs from the outer center."""


class ConvergenceError(KvalError):
    """A tail bound could not be certified to converge."""


class DepthError(KvalError):
    """A search or a tail domination check ran out of depth."""


class PivotError(KvalError):
    """The derivative at the expansion point vanishes."""


class InternalError(KvalError):
    """A certificate invariant failed; this is a bug, never a user error."""

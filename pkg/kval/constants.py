"""Some useful constants.

:copyright: 2016, See AUTHORS for more details.
:license: GNU General Public License, See LICENSE for more details.

"""

import contextlib
import os

from kval.errors import DomainError


DEPTH = 6                       # Coinitial family g_m^-1 checked for m <= DEPTH
DEPTH_ENV = 'KVAL_DEPTH'
HORIZON = 32                    # Bound-rule indices spot-checked past the stored table

GRID_GENERATORS = 4             # Radius grid {g_m^-t: m <= 4, t <= 8} U {1}
GRID_EXPONENTS = 8

ORDER_CAP = 32                  # first_nonvanishing_order default cap
WITNESS_EXPONENTS = 8           # Liouville search over X_m^t, t <= 8

EXTREMUM_SCALES = (1, 2, 3, 4)
MONOTONE_SCALES = (1, 2, 3)
MONOTONE_FRACTIONS = ((1, 4), (1, 2), (3, 4))

SCHEMA_VERSION = 1
SESSION_VERSION = 1


_overrides = []


def convergence_depth(value=None):
    """Get the convergence depth M.

    Args:
        value (int): An explicit depth. When omitted, an active ``depth_override`` applies, then
            ``KVAL_DEPTH``, then ``DEPTH``.

    Returns:
        int: The depth, at least 1.

    Raises:
        DomainError: If the depth is not a positive integer.

    """
    if value is None and _overrides:
        value = _overrides[-1]
    if value is None:
        value = os.environ.get(DEPTH_ENV, DEPTH)
    try:
        depth = int(value)
    except (TypeError, ValueError):
        raise DomainError('convergence depth must be an integer, got {0!r}'.format(value))
    if depth < 1:
        raise DomainError('convergence depth must be at least 1, got {0}'.format(depth))
    return depth


@contextlib.contextmanager
def depth_override(depth):
    """Use a convergence depth for the calls made inside the block."""
    if depth is None:
        yield
        return
    _overrides.append(convergence_depth(depth))
    try:
        yield
    finally:
        _overrides.pop()

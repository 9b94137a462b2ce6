"""Extended distance values: exact rationals, infinity, or a horizon stamp.

Distances in this package are either an exact nonnegative rational, the
value infinity (no path exists, provably), or ``beyond(h)`` meaning the
true value exceeds the exploration horizon ``h`` and is otherwise unknown.
Infinity absorbs addition and positive scaling; a horizon stamp propagates
through sums so that derived quantities stay honestly marked.
"""

from fractions import Fraction

_FINITE = 0
_INFINITE = 1
_BEYOND = 2


class ExtDist:
    """A finite rational distance, infinity, or an exceeds-horizon marker."""

    __slots__ = ("_status", "value", "horizon")

    def __init__(self, status, value=None, horizon=None):
        self._status = status
        self.value = value
        self.horizon = horizon

    def is_finite(self):
        return self._status == _FINITE

    def is_infinite(self):
        return self._status == _INFINITE

    def is_beyond(self):
        return self._status == _BEYOND

    def is_decisive(self):
        """True when the value is exact (finite or provably infinite)."""
        return self._status != _BEYOND

    def plus(self, other):
        """Sum with another ExtDist or a plain rational."""
        if not isinstance(other, ExtDist):
            other = finite(other)
        if self._status == _INFINITE or other._status == _INFINITE:
            return INFINITE
        if self._status == _BEYOND:
            return self
        if other._status == _BEYOND:
            return other
        return finite(self.value + other.value)

    def scaled(self, k):
        """Multiply by a positive rational constant."""
        if k <= 0:
            raise ValueError("scale factor must be positive")
        if self._status == _FINITE:
            return finite(self.value * k)
        return self

    def __eq__(self, other):
        if not isinstance(other, ExtDist):
            return NotImplemented
        return (self._status, self.value, self.horizon) == (
            other._status,
            other.value,
            other.horizon,
        )

    def __hash__(self):
        return hash((self._status, self.value, self.horizon))

    def __repr__(self):
        return "ExtDist(%s)" % self.format()

    def format(self):
        """Render as 'p/q', 'inf', or '>h'."""
        if self._status == _FINITE:
            return str(self.value)
        if self._status == _INFINITE:
            return "inf"
        return ">%d" % self.horizon


def finite(value):
    """Wrap a nonnegative rational (int, Fraction, or 'p/q' string)."""
    if isinstance(value, str):
        value = Fraction(value)
    elif isinstance(value, int):
        value = Fraction(value)
    elif not isinstance(value, Fraction):
        raise TypeError("finite distance must be rational, got %r" % (value,))
    if value < 0:
        raise ValueError("distances are nonnegative, got %s" % value)
    return ExtDist(_FINITE, value=value)


def beyond(horizon):
    """The distance exceeds the horizon; the exact value is unknown."""
    return ExtDist(_BEYOND, horizon=int(horizon))


INFINITE = ExtDist(_INFINITE)

ZERO = finite(0)

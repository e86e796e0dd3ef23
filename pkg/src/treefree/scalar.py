"""Numeric policy shared by every computation in a run.

Exact mode works over :class:`fractions.Fraction` and every comparison is a
decidable (in)equality.  Float mode works over ``float`` and compares with a
single absolute tolerance ``eps``.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational, Real

import numpy as np

__all__ = ["Arithmetic", "EXACT", "FLOAT", "parse_scalar"]


def parse_scalar(value):
    """Parse ints, Fractions, ``"p/q"`` strings and decimal literals exactly."""
    if isinstance(value, bool):
        raise TypeError("booleans are not distances")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, np.integer, Rational)):
        return Fraction(int(value)) if isinstance(value, (int, np.integer)) else Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            raise ValueError(f"non-finite value {value!r}")
        # the shortest repr is what the user wrote in a JSON/CSV file
        return Fraction(repr(float(value)))
    raise TypeError(f"cannot interpret {value!r} as a rational number")


@dataclass(frozen=True)
class Arithmetic:
    exact: bool = True
    eps: float = 1e-9

    def __post_init__(self):
        if not self.exact and not self.eps > 0:
            raise ValueError("float mode needs eps > 0")

    @property
    def dtype(self):
        return object if self.exact else np.float64

    def coerce(self, value):
        if self.exact:
            return parse_scalar(value)
        if isinstance(value, str):
            return float(Fraction(value.strip()))
        if not isinstance(value, Real):
            raise TypeError(f"cannot interpret {value!r} as a real number")
        return float(value)

    def array(self, rows):
        arr = np.array([[self.coerce(v) for v in row] for row in rows], dtype=self.dtype)
        if arr.ndim != 2:
            arr = arr.reshape(len(rows), -1)
        return arr

    def vector(self, values):
        return np.array([self.coerce(v) for v in values], dtype=self.dtype)

    # comparisons; exact mode ignores eps
    def eq(self, a, b):
        return a == b if self.exact else abs(a - b) <= self.eps

    def lt(self, a, b):
        return a < b if self.exact else a < b - self.eps

    def le(self, a, b):
        return a <= b if self.exact else a <= b + self.eps

    def gt(self, a, b):
        return self.lt(b, a)

    def ge(self, a, b):
        return self.le(b, a)

    def is_zero(self, a):
        return self.eq(a, 0)

    def sign(self, a):
        if self.is_zero(a):
            return 0
        return 1 if a > 0 else -1

    def half(self, a):
        return a / 2 if not self.exact else Fraction(a) / 2

    def zero(self):
        return Fraction(0) if self.exact else 0.0

    def format(self, value):
        """Render a scalar for text/JSON output without losing exactness."""
        if self.exact:
            value = Fraction(value)
            return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
        return repr(float(value))


EXACT = Arithmetic(exact=True)
FLOAT = Arithmetic(exact=False, eps=1e-9)

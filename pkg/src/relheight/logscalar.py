"""Sign/log-magnitude representation of real scalars.

Several of the explicit constants (for instance 2*exp(16384)) overflow
every floating-point format, so products, powers and comparisons are done
on natural logarithms of magnitudes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpf


@dataclass(frozen=True)
class LogScalar:
    sign: int
    logmag: mpf  # natural log of |value|; meaningless when sign == 0

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError("sign must be -1, 0 or +1")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def zero() -> "LogScalar":
        return LogScalar(0, mpf(0))

    @staticmethod
    def one() -> "LogScalar":
        return LogScalar(1, mpf(0))

    @staticmethod
    def from_value(x) -> "LogScalar":
        # a floor of 128 working bits keeps constructed scalars accurate
        # even when the caller runs at the ambient default precision
        with mpmath.workprec(max(mpmath.mp.prec, 128)):
            if isinstance(x, Fraction):
                if x == 0:
                    return LogScalar.zero()
                sign = 1 if x > 0 else -1
                mag = mpmath.log(mpf(abs(x.numerator))) - mpmath.log(
                    mpf(x.denominator)
                )
                return LogScalar(sign, mag)
            v = mpf(x)
            if v == 0:
                return LogScalar.zero()
            return LogScalar(1 if v > 0 else -1, mpmath.log(abs(v)))

    @staticmethod
    def from_log(logmag, sign: int = 1) -> "LogScalar":
        if sign == 0:
            return LogScalar.zero()
        return LogScalar(sign, mpf(logmag))

    # -- arithmetic -------------------------------------------------------

    def __mul__(self, other: "LogScalar") -> "LogScalar":
        if self.sign == 0 or other.sign == 0:
            return LogScalar.zero()
        return LogScalar(self.sign * other.sign, self.logmag + other.logmag)

    def __truediv__(self, other: "LogScalar") -> "LogScalar":
        if other.sign == 0:
            raise ZeroDivisionError("division by log-scalar zero")
        if self.sign == 0:
            return LogScalar.zero()
        return LogScalar(self.sign * other.sign, self.logmag - other.logmag)

    def __neg__(self) -> "LogScalar":
        return LogScalar(-self.sign, self.logmag)

    def __pow__(self, exponent) -> "LogScalar":
        if self.sign == 0:
            if exponent == 0:
                return LogScalar.one()
            return LogScalar.zero()
        if self.sign < 0:
            if isinstance(exponent, int):
                return LogScalar(
                    -1 if exponent % 2 else 1, self.logmag * exponent
                )
            raise ValueError("non-integer power of a negative log-scalar")
        return LogScalar(1, self.logmag * mpf(exponent))

    def reciprocal(self) -> "LogScalar":
        return LogScalar.one() / self

    # -- comparisons ------------------------------------------------------

    def _key(self):
        if self.sign == 0:
            return (0, mpf(0))
        return (self.sign, self.sign * self.logmag)

    def __lt__(self, other: "LogScalar") -> bool:
        return self._key() < other._key()

    def __le__(self, other: "LogScalar") -> bool:
        return self._key() <= other._key()

    def __gt__(self, other: "LogScalar") -> bool:
        return self._key() > other._key()

    def __ge__(self, other: "LogScalar") -> bool:
        return self._key() >= other._key()

    def less_than_real(self, x) -> bool:
        """self < x for a plain positive real x, compared through logs."""
        v = mpf(x)
        if v <= 0:
            raise ValueError("comparison target must be positive")
        if self.sign <= 0:
            return True
        return self.logmag < mpmath.log(v)

    # -- conversions ------------------------------------------------------

    def to_mpf(self) -> mpf:
        """May overflow to inf for huge magnitudes; prefer decimal_string."""
        if self.sign == 0:
            return mpf(0)
        return self.sign * mpmath.exp(self.logmag)

    def decimal_string(self, digits: int = 12) -> str:
        if self.sign == 0:
            return "0"
        prefix = "-" if self.sign < 0 else ""
        if abs(self.logmag) <= 700:
            return prefix + mpmath.nstr(mpmath.exp(self.logmag), digits)
        return f"{prefix}exp({mpmath.nstr(self.logmag, digits)})"

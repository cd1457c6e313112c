"""Complex disk arithmetic: (center, radius) enclosures.

Used for certified evaluation of polynomials at enclosed points.  Rounding
of center arithmetic is absorbed into the radius with a small relative
guard, so enclosures remain valid at any working precision.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpc, mpf


def _guard() -> mpf:
    # covers center rounding: a handful of ulps at current precision
    return mpf(2) ** (-(mpmath.mp.prec - 8))


@dataclass(frozen=True)
class Disk:
    center: mpc
    radius: mpf

    @staticmethod
    def exact(value) -> "Disk":
        return Disk(mpc(value), mpf(0))

    def __add__(self, other: "Disk") -> "Disk":
        c = self.center + other.center
        r = self.radius + other.radius + abs(c) * _guard()
        return Disk(c, r)

    def __mul__(self, other: "Disk") -> "Disk":
        c = self.center * other.center
        r = (
            abs(self.center) * other.radius
            + abs(other.center) * self.radius
            + self.radius * other.radius
            + abs(c) * _guard()
            + _guard()
        )
        return Disk(c, r)

    def __neg__(self) -> "Disk":
        return Disk(-self.center, self.radius)

    def __sub__(self, other: "Disk") -> "Disk":
        return self + (-other)

    def __pow__(self, k: int) -> "Disk":
        if k < 0:
            raise ValueError("negative powers of disks are not supported")
        out = Disk.exact(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def abs_bounds(self) -> tuple[mpf, mpf]:
        """Certified [lo, hi] for |z| over the disk."""
        a = abs(self.center)
        lo = a - self.radius - a * _guard()
        hi = a + self.radius + a * _guard() + _guard()
        return (lo if lo > 0 else mpf(0)), hi

    def excludes_zero(self) -> bool:
        return self.abs_bounds()[0] > 0

    def contains(self, point: mpc) -> bool:
        return abs(point - self.center) <= self.radius


def eval_poly(coeffs, z: Disk) -> Disk:
    """Horner evaluation of a polynomial over a disk.

    coeffs ascending; entries may be ints, Fractions, mpmath numbers, or
    Disks.
    """
    acc = Disk.exact(0)
    for c in reversed(list(coeffs)):
        if isinstance(c, Disk):
            term = c
        else:
            if isinstance(c, Fraction):
                cv = mpc(mpf(c.numerator) / mpf(c.denominator))
            else:
                cv = mpc(c)
            term = Disk(cv, abs(cv) * _guard())
        acc = acc * z + term
    return acc

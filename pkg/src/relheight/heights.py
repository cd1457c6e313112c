"""Mahler measure and Weil height with interval-certified output.

Kronecker polynomials (products of cyclotomics and powers of x) short-
circuit to exact values, which is what makes "is a root of unity" a
decidable predicate further down the pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
import sympy
from mpmath import mpc, mpf

from .disk import Disk, eval_poly
from .errors import DomainError, PrecisionExhausted
from .exactpoly import (
    IntPolynomial,
    cyclotomic,
    euler_phi,
    factor_rationals,
    kronecker_test,
    poly,
    strip_trivial_factors,
)
from .rootcert import MAX_PRECISION, ComplexBox, RootSet, isolate_roots, refine


@dataclass(frozen=True)
class RealInterval:
    """[lo, hi] guaranteed to contain the true value."""

    lo: mpf
    hi: mpf

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError("empty interval")

    @property
    def width(self) -> mpf:
        return self.hi - self.lo

    @property
    def mid(self) -> mpf:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    def overlaps(self, other: "RealInterval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi


def _iv_endpoints(x) -> RealInterval:
    # make_mpf wraps the raw endpoint data without rounding to the
    # ambient precision, so callers need no surrounding workprec
    lo = mpmath.mp.make_mpf(x.a._mpi_[0])
    hi = mpmath.mp.make_mpf(x.b._mpi_[1])
    return RealInterval(lo, hi)


@dataclass(frozen=True)
class AlgebraicNumber:
    """A minimal polynomial plus a certified box picking one conjugate."""

    minpoly: IntPolynomial
    root: ComplexBox

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def refined(self, target_bits: int) -> "AlgebraicNumber":
        return AlgebraicNumber(self.minpoly, refine(self.root, self.minpoly, target_bits))


def conjugates(p: IntPolynomial, precision_bits: int = 128) -> tuple[AlgebraicNumber, ...]:
    """All conjugate algebraic numbers with minimal polynomial p.

    p must be irreducible over Q; it is normalized to a primitive
    polynomial with positive leading coefficient.
    """
    fl = factor_rationals(p)
    if not fl.is_irreducible:
        raise ValueError("polynomial is not irreducible over Q")
    prim = fl.factors[0][0]
    rs = isolate_roots(prim, precision_bits)
    return tuple(AlgebraicNumber(prim, b) for b in rs.boxes)


def from_rational(value) -> AlgebraicNumber:
    """The algebraic number a/b with minimal polynomial b*x - a."""
    q = Fraction(value)
    p = poly([-q.numerator, q.denominator])
    rs = isolate_roots(p, 128)
    return AlgebraicNumber(p, rs.boxes[0])


def mahler_measure(p: IntPolynomial, precision_bits: int = 128) -> RealInterval:
    """Interval containing M(p) with relative width <= 2**-(precision_bits/2).

    Exact for Kronecker polynomials; otherwise the product over certified
    root boxes of the non-cyclotomic part.
    """
    content, _k, rest = strip_trivial_factors(p)
    if rest.degree == 0:
        v = mpf(content)  # rest is +-1: all roots on or in the unit circle
        return RealInterval(v, v)
    factors = factor_rationals(rest).factors
    root_bits = max(precision_bits, 64)
    while root_bits <= MAX_PRECISION:
        iv = mpmath.iv
        old = iv.prec
        iv.prec = 2 * root_bits + 32
        try:
            with mpmath.workprec(2 * root_bits + 32):
                total = iv.mpf(content)
                for f, mult in factors:
                    part = iv.mpf(abs(f.leading))
                    for box in isolate_roots(f, root_bits).boxes:
                        lo, hi = box.abs_bounds()
                        if lo >= 1:
                            part *= iv.mpf([lo, hi])
                        elif hi > 1:
                            # box straddles the unit circle: the root
                            # contributes either 1 (inside) or its modulus
                            part *= iv.mpf([mpf(1), hi])
                    total *= part**mult
                result = _iv_endpoints(total)
        finally:
            iv.prec = old
        if result.width <= mpf(2) ** (-(precision_bits // 2)) * result.lo:
            return result
        root_bits *= 2
    raise PrecisionExhausted("mahler measure interval did not converge")


def weil_height(a: AlgebraicNumber, precision_bits: int = 128) -> RealInterval:
    """Interval for h(a) = log(M(minpoly))/deg; exactly [0,0] for torsion."""
    if kronecker_test(a.minpoly):
        return RealInterval(mpf(0), mpf(0))
    m = mahler_measure(a.minpoly, precision_bits)
    iv = mpmath.iv
    old = iv.prec
    iv.prec = 2 * precision_bits + 32
    try:
        h = iv.log(iv.mpf([m.lo, m.hi])) / a.degree
        return _iv_endpoints(h)
    finally:
        iv.prec = old


def root_of_unity_order(a: AlgebraicNumber) -> int | None:
    """m if the minimal polynomial is the m-th cyclotomic, else None."""
    d = a.degree
    for m in range(1, 2 * d * d + 2):
        if euler_phi(m) == d and a.minpoly == cyclotomic(m):
            return m
    return None


def jensen_integral_check(
    p: IntPolynomial, samples: int = 512, precision_bits: int = 64
) -> RealInterval:
    """Quadrature estimate of the geometric mean of |p| on the unit circle.

    Heuristic error bars (Richardson-style comparison of two sample counts);
    a cross-check oracle only, never a published value.  Roots near the
    contour raise "inconclusive check".
    """
    if p.is_zero or samples < 8:
        raise ValueError("bad input")
    wp = 2 * precision_bits + 32

    def mean_log(n: int) -> mpf:
        acc = mpf(0)
        floor = mpf(2) ** (-precision_bits // 2)
        for k in range(n):
            z = mpmath.expjpi(2 * (mpf(k) + mpf(0.5)) / n)
            v = abs(_eval_mpc(p, z))
            if v < floor:
                raise DomainError("inconclusive check")
            acc += mpmath.log(v)
        return acc / n

    with mpmath.workprec(wp):
        coarse = mean_log(samples // 2)
        fine = mean_log(samples)
        err = abs(fine - coarse) * 2 + mpf(2) ** (-precision_bits // 2)
        value = mpmath.exp(fine)
        return RealInterval(value * (1 - err), value * (1 + err))


def _eval_mpc(p: IntPolynomial, z: mpc) -> mpc:
    acc = mpc(0)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


_Y = sympy.Symbol("y")
_XS = sympy.Symbol("x")


def select_unique_factor(
    factors, target: Disk, evaluate=None
) -> int | None:
    """Index of the only factor that can vanish on the target disk.

    Certified by exclusion: a factor whose disk evaluation excludes zero
    cannot contain the point.  Returns None when more than one survives
    (caller should shrink the target and retry).
    """
    if evaluate is None:
        evaluate = lambda f, z: eval_poly(f.coeffs, z)
    alive = [
        i for i, f in enumerate(factors) if not evaluate(f, target).excludes_zero()
    ]
    if len(alive) == 1:
        return alive[0]
    return None


def power(a: AlgebraicNumber, k: int, precision_bits: int = 128) -> AlgebraicNumber:
    """The algebraic number a**k, minimal polynomial built by resultant."""
    if k < 1:
        raise ValueError("power requires k >= 1")
    py = a.minpoly.to_sympy().as_expr().subs(_XS, _Y)
    q = sympy.Poly(sympy.resultant(py, _XS - _Y**k, _Y), _XS)
    cand = [f for f, _ in factor_rationals(IntPolynomial.from_sympy(q)).factors]
    bits = precision_bits
    while bits <= MAX_PRECISION:
        cur = a.refined(bits)
        with mpmath.workprec(2 * bits + 32):
            target = cur.root.to_disk() ** k
            idx = select_unique_factor(cand, target)
            if idx is not None:
                boxes = isolate_roots(cand[idx], precision_bits).boxes
                hits = [
                    b
                    for b in boxes
                    if abs(b.center - target.center) <= b.radius + target.radius
                ]
                if len(hits) == 1:
                    return AlgebraicNumber(cand[idx], hits[0])
        bits *= 2
    raise PrecisionExhausted("could not separate factors for the power map")

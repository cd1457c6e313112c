"""Certified complex root isolation for integer polynomials.

Roots are located with Aberth-Ehrlich simultaneous iteration and then
certified one at a time through the Newton-residual disk bound: for a
polynomial of degree d, the disk of radius d*|p(z)/p'(z)| around z always
contains a root.  Disk arithmetic (see disk.py) makes the radius itself an
upper bound, so the returned enclosures are valid despite floating-point
evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from mpmath import mpc, mpf

from .disk import Disk, eval_poly
from .errors import CertificationFailure, ZeroPolynomialError
from .exactpoly import IntPolynomial, factor_rationals

#: precision escalation ceiling (bits)
MAX_PRECISION = 8192


@dataclass(frozen=True)
class ComplexBox:
    """center/radius enclosure of a single polynomial root."""

    center: mpc
    radius: mpf

    def to_disk(self) -> Disk:
        return Disk(self.center, self.radius)

    def conjugate(self) -> "ComplexBox":
        return ComplexBox(mpmath.conj(self.center), self.radius)

    def abs_bounds(self) -> tuple[mpf, mpf]:
        return self.to_disk().abs_bounds()

    @property
    def is_real(self) -> bool:
        return self.center.imag == 0


@dataclass(frozen=True)
class RootSet:
    boxes: tuple[ComplexBox, ...]
    precision_bits: int


def _eval(p: IntPolynomial, z):
    acc = mpc(0)
    for c in reversed(p.coeffs):
        acc = acc * z + c
    return acc


def _cert_radius(p: IntPolynomial, dp: IntPolynomial, z: mpc) -> mpf | None:
    """Certified radius of a disk around z containing a root, or None."""
    pz = eval_poly(p.coeffs, Disk.exact(z))
    dpz = eval_poly(dp.coeffs, Disk.exact(z))
    denom_lo = dpz.abs_bounds()[0]
    if denom_lo <= 0:
        return None
    num_hi = pz.abs_bounds()[1]
    return p.degree * num_hi / denom_lo


def _aberth(p: IntPolynomial) -> list[mpc]:
    """Simultaneous iteration at the ambient mpmath precision."""
    d = p.degree
    dp = p.derivative()
    lead = abs(p.leading)
    cauchy = 1 + max(abs(c) / lead for c in p.coeffs[:-1])
    r0 = mpf(cauchy) ** mpf(0.5)
    zs = [
        r0 * (1 + mpf(k % 5) / 40) * mpmath.expjpi(2 * (mpf(k) + mpf("0.3571")) / d)
        for k in range(d)
    ]
    eps = mpf(2) ** (-(mpmath.mp.prec - 16))
    for _ in range(60 + 6 * d):
        maxcorr = mpf(0)
        for k in range(d):
            z = zs[k]
            pz = _eval(p, z)
            dpz = _eval(dp, z)
            if dpz == 0:
                zs[k] = z + mpf(2) ** (-mpmath.mp.prec // 3)
                maxcorr = mpf(1)
                continue
            newton = pz / dpz
            s = mpc(0)
            for j in range(d):
                if j != k:
                    diff = z - zs[j]
                    if diff == 0:
                        diff = mpf(2) ** (-mpmath.mp.prec // 3)
                    s += 1 / diff
            denom = 1 - newton * s
            corr = newton if denom == 0 else newton / denom
            zs[k] = z - corr
            maxcorr = max(maxcorr, abs(corr) / (1 + abs(zs[k])))
        if maxcorr < eps:
            break
    return zs


def _symmetrize(zs: list[mpc]) -> list[mpc] | None:
    """Snap near-real points onto the axis and pair conjugates.

    Returns representatives: real points plus upper-half-plane points (their
    mirror images are implied).  None if pairing fails at this precision.
    """
    tol = mpf(2) ** (-mpmath.mp.prec // 4)
    reals, pos, neg = [], [], []
    for z in zs:
        if abs(z.imag) <= tol * (1 + abs(z)):
            reals.append(mpc(z.real, 0))
        elif z.imag > 0:
            pos.append(z)
        else:
            neg.append(z)
    if len(pos) != len(neg):
        return None
    remaining = list(neg)
    for z in pos:
        target = mpmath.conj(z)
        best = min(remaining, key=lambda w: abs(w - target), default=None)
        if best is None or abs(best - target) > tol * (1 + abs(z)):
            return None
        remaining.remove(best)
    return reals + pos


def _polish(p: IntPolynomial, z: mpc, target_bits: int) -> ComplexBox | None:
    dp = p.derivative()
    for _ in range(200):
        rad = _cert_radius(p, dp, z)
        if rad is not None and rad <= mpf(2) ** (-target_bits) * max(1, abs(z)):
            return ComplexBox(z, rad)
        dpz = _eval(dp, z)
        if dpz == 0:
            return None
        step = _eval(p, z) / dpz
        if abs(step) < mpf(2) ** (-(mpmath.mp.prec - 4)) * (1 + abs(z)):
            # stagnated without meeting the target radius
            rad = _cert_radius(p, dp, z)
            if rad is not None and rad <= mpf(2) ** (-target_bits) * max(1, abs(z)):
                return ComplexBox(z, rad)
            return None
        z = z - step
    return None


def _rational_root_box(f: IntPolynomial) -> ComplexBox:
    root = Fraction(-f.coeffs[0], f.coeffs[1])
    center = mpc(mpf(root.numerator) / mpf(root.denominator))
    den = root.denominator
    dyadic = den & (den - 1) == 0
    if dyadic and root.numerator.bit_length() <= mpmath.mp.prec:
        # exactly representable: the box is the root itself
        return ComplexBox(center, mpf(0))
    return ComplexBox(
        center, (1 + abs(center)) * mpf(2) ** (-(mpmath.mp.prec - 8))
    )


def _isolate_factor(f: IntPolynomial, target_bits: int) -> list[ComplexBox] | None:
    if f.degree == 1:
        return [_rational_root_box(f)]
    zs = _aberth(f)
    reps = _symmetrize(zs)
    if reps is None:
        return None
    boxes: list[ComplexBox] = []
    for z in reps:
        box = _polish(f, z, target_bits)
        if box is None:
            return None
        boxes.append(box)
        if box.center.imag > 0:
            boxes.append(box.conjugate())
    if len(boxes) != f.degree:
        return None
    return boxes


def _pairwise_isolated(boxes: list[ComplexBox]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            sep = abs(boxes[i].center - boxes[j].center)
            if sep < 4 * (boxes[i].radius + boxes[j].radius):
                return False
    return True


def isolate_roots(p: IntPolynomial, precision_bits: int = 128) -> RootSet:
    """Certified enclosures of all distinct complex roots of p.

    Each returned box contains exactly one root of the squarefree part and
    has radius at most 2**-precision_bits * max(1, |center|).
    """
    if p.is_zero:
        raise ZeroPolynomialError("zero input")
    if p.degree < 1:
        raise ValueError("constant polynomial has no roots")
    distinct = [f for f, _ in factor_rationals(p).factors]
    wp = max(128, 2 * precision_bits)
    while wp <= MAX_PRECISION:
        with mpmath.workprec(wp):
            boxes: list[ComplexBox] = []
            ok = True
            for f in distinct:
                sub = _isolate_factor(f, precision_bits)
                if sub is None:
                    ok = False
                    break
                boxes.extend(sub)
            if ok and _pairwise_isolated(boxes):
                return RootSet(tuple(boxes), precision_bits)
        wp *= 2
    raise CertificationFailure("certification failure")


def refine(box: ComplexBox, p: IntPolynomial, target_bits: int) -> ComplexBox:
    """Shrink a certified box to radius <= 2**-target_bits * max(1, |center|)."""
    if box.radius == 0:
        return box
    wp = max(128, 2 * target_bits)
    while wp <= MAX_PRECISION:
        with mpmath.workprec(wp):
            refined = _polish(p, box.center, target_bits)
            if refined is not None:
                if not box.to_disk().contains(refined.center) and abs(
                    refined.center - box.center
                ) > box.radius + refined.radius:
                    raise CertificationFailure("ill-conditioned")
                return refined
        wp *= 2
    raise CertificationFailure("ill-conditioned")

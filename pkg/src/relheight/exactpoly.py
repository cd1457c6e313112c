"""Exact arithmetic on integer and rational univariate polynomials.

Coefficients are arbitrary-precision Python integers, stored in ascending
order (constant term first).  Everything here is exact: no floating point
enters any result.  Factorization over the rationals is delegated to sympy
(Zassenhaus-style); all other operations are implemented directly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import DegreeLimitError, ZeroPolynomialError

#: default cap on the degree of factorization workloads
FACTOR_DEGREE_LIMIT = 64

_X = sympy.Symbol("x")


@dataclass(frozen=True)
class IntPolynomial:
    """Univariate polynomial with integer coefficients, ascending order."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        cs = tuple(int(c) for c in self.coeffs)
        # strip trailing zeros; the zero polynomial is (0,)
        while len(cs) > 1 and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs if cs else (0,))

    # -- basic queries ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs == (0,)

    @property
    def leading(self) -> int:
        return self.coeffs[-1]

    @property
    def is_monic(self) -> bool:
        return self.leading == 1

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(tuple(out))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero or other.is_zero:
            return IntPolynomial((0,))
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return IntPolynomial(tuple(out))

    def scale(self, k: int) -> "IntPolynomial":
        return IntPolynomial(tuple(k * c for c in self.coeffs))

    def shift_up(self, k: int) -> "IntPolynomial":
        """Multiply by x**k."""
        if self.is_zero:
            return self
        return IntPolynomial((0,) * k + self.coeffs)

    def derivative(self) -> "IntPolynomial":
        if self.degree == 0:
            return IntPolynomial((0,))
        return IntPolynomial(tuple(i * c for i, c in enumerate(self.coeffs))[1:])

    def __call__(self, value):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def exact_div(self, other: "IntPolynomial") -> "IntPolynomial":
        """Exact division in Z[x]; raises ValueError if not divisible."""
        q, r = self.qr_over_q(other)
        if not r.is_zero:
            raise ValueError("not an exact division")
        cs = []
        for c in q:
            if c.denominator != 1:
                raise ValueError("not an exact division over the integers")
            cs.append(c.numerator)
        return IntPolynomial(tuple(cs))

    def qr_over_q(self, other: "IntPolynomial"):
        """Quotient (as Fractions) and remainder over Q.

        The remainder is cleared of denominators, i.e. returned up to a
        positive rational scalar; callers only test it for zero.
        """
        if other.is_zero:
            raise ZeroDivisionError("division by zero polynomial")
        rem = [Fraction(c) for c in self.coeffs]
        q = [Fraction(0)] * max(1, len(rem) - other.degree)
        lead = Fraction(other.leading)
        for i in range(len(rem) - 1, other.degree - 1, -1):
            f = rem[i] / lead
            if f:
                q[i - other.degree] = f
                for j, c in enumerate(other.coeffs):
                    rem[i - other.degree + j] -= f * c
        rcs = rem[: other.degree] if other.degree > 0 else [Fraction(0)]
        den = math.lcm(*[c.denominator for c in rcs])
        r = IntPolynomial(tuple(int(c * den) for c in rcs))
        return q, r

    def primitive_positive(self) -> "IntPolynomial":
        """Primitive part with positive leading coefficient."""
        _, prim = content_and_primitive(self)
        if prim.leading < 0:
            prim = -prim
        return prim

    def to_sympy(self) -> sympy.Poly:
        return sympy.Poly(list(reversed(self.coeffs)), _X, domain=sympy.ZZ)

    @staticmethod
    def from_sympy(p: sympy.Poly) -> "IntPolynomial":
        return IntPolynomial(tuple(int(c) for c in reversed(p.all_coeffs())))


def poly(coeffs: Iterable[int]) -> IntPolynomial:
    return IntPolynomial(tuple(coeffs))


X = poly([0, 1])
ONE = poly([1])


@dataclass(frozen=True)
class RatPolynomial:
    """num/den with den > 0 and den coprime to the content of num."""

    numerator: IntPolynomial
    denominator: int

    @staticmethod
    def from_fractions(coeffs: Sequence[Fraction]) -> "RatPolynomial":
        den = math.lcm(*[c.denominator for c in coeffs]) if coeffs else 1
        num = IntPolynomial(tuple(int(c * den) for c in coeffs))
        if num.is_zero:
            return RatPolynomial(num, 1)
        g = math.gcd(den, _content(num))
        return RatPolynomial(
            IntPolynomial(tuple(c // g for c in num.coeffs)), den // g
        )

    def fractions(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denominator) for c in self.numerator.coeffs)


@dataclass(frozen=True)
class FactorList:
    """Irreducible factorization over Q of an integer polynomial.

    unit * content * prod(f ** m) reconstructs the input exactly.  Factors
    are primitive with positive leading coefficient, sorted by degree and
    then lexicographically by coefficient tuple.
    """

    unit: int
    content: int
    factors: tuple[tuple[IntPolynomial, int], ...]

    def reassemble(self) -> IntPolynomial:
        out = poly([self.unit * self.content])
        for f, m in self.factors:
            for _ in range(m):
                out = out * f
        return out

    @property
    def is_irreducible(self) -> bool:
        return (
            self.content == 1
            and len(self.factors) == 1
            and self.factors[0][1] == 1
        )


def _content(p: IntPolynomial) -> int:
    return math.gcd(*p.coeffs) if len(p.coeffs) > 1 else abs(p.coeffs[0])


def content_and_primitive(p: IntPolynomial) -> tuple[int, IntPolynomial]:
    """Positive gcd of the coefficients and the primitive part.

    The sign of the polynomial stays on the primitive part.
    """
    if p.is_zero:
        raise ZeroPolynomialError("zero input")
    c = _content(p)
    return c, IntPolynomial(tuple(co // c for co in p.coeffs))


def resultant(p: IntPolynomial, q: IntPolynomial) -> int:
    """Resultant via the subresultant PRS.

    Sign convention: res(p, q) = lc(p)**deg(q) * prod(q(a) for roots a of p),
    the Sylvester-matrix determinant.  res(p, q) = (-1)**(deg p * deg q) *
    res(q, p).
    """
    if p.is_zero or q.is_zero:
        raise ZeroPolynomialError("zero input")
    if p.degree == 0:
        return p.coeffs[0] ** q.degree
    if q.degree == 0:
        return q.coeffs[0] ** p.degree
    s = 1
    a, b = p, q
    if a.degree < b.degree:
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            s = -s
        a, b = b, a
    g, h = 1, 1
    while True:
        delta = a.degree - b.degree
        if a.degree % 2 == 1 and b.degree % 2 == 1:
            s = -s
        r = _pseudo_rem(a, b)
        if r.is_zero:
            return 0
        den = g * h**delta
        a = b
        b = IntPolynomial(tuple(c // den for c in r.coeffs))
        g = a.leading
        if delta >= 1:
            h = g**delta // h ** (delta - 1)
        if b.degree == 0:
            break
    return s * (b.coeffs[0] ** a.degree // h ** (a.degree - 1))


def _pseudo_rem(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Pseudo-remainder: lc(b)**(deg a - deg b + 1) * a mod b."""
    lead = b.leading
    n, m = a.degree, b.degree
    rem = list(a.coeffs)
    for k in range(n - m, -1, -1):
        coef = rem[m + k]
        for idx in range(len(rem)):
            rem[idx] *= lead
        for j in range(m + 1):
            rem[k + j] -= coef * b.coeffs[j]
    return IntPolynomial(tuple(rem[:m] if m else [0]))


def discriminant(p: IntPolynomial) -> int:
    """disc(p) = (-1)**(d(d-1)/2) * res(p, p') / lc(p)."""
    if p.degree < 1:
        raise ZeroPolynomialError("zero input")
    d = p.degree
    r = resultant(p, p.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    return sign * r // p.leading


def gcd(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Primitive gcd in Z[x] with positive leading coefficient."""
    if p.is_zero:
        return q.primitive_positive() if q else q
    if q.is_zero:
        return p.primitive_positive()
    g = sympy.gcd(p.to_sympy(), q.to_sympy())
    return IntPolynomial.from_sympy(sympy.Poly(g, _X)).primitive_positive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    """Primitive squarefree part (same distinct roots, multiplicity one)."""
    if p.is_zero:
        raise ZeroPolynomialError("zero input")
    prim = p.primitive_positive()
    if prim.degree == 0:
        return ONE
    g = gcd(prim, prim.derivative())
    return prim.exact_div(g).primitive_positive()


def factor_rationals(
    p: IntPolynomial, degree_limit: int = FACTOR_DEGREE_LIMIT
) -> FactorList:
    """Complete irreducible factorization over Q, deterministic ordering."""
    if p.is_zero:
        raise ZeroPolynomialError("zero input")
    if p.degree > degree_limit:
        raise DegreeLimitError("degree limit")
    content, prim = content_and_primitive(p)
    unit = 1
    if prim.leading < 0:
        unit, prim = -1, -prim
    if prim.degree == 0:
        return FactorList(unit, content, ())
    _, raw = prim.to_sympy().factor_list()
    factors = []
    for f, m in raw:
        g = IntPolynomial.from_sympy(f).primitive_positive()
        factors.append((g, int(m)))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs))
    return FactorList(unit, content, tuple(factors))


def euler_phi(n: int) -> int:
    """Exact Euler totient by trial-division factorization."""
    if n < 1:
        raise ValueError("euler_phi requires n >= 1")
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            result -= result // d
            while m % d == 0:
                m //= d
        d += 1 if d == 2 else 2
    if m > 1:
        result -= result // m
    return result


_cyclotomic_memo: dict[int, IntPolynomial] = {}


def cyclotomic(m: int) -> IntPolynomial:
    """The m-th cyclotomic polynomial by iterated exact division."""
    if m < 1:
        raise ValueError("cyclotomic requires m >= 1")
    cached = _cyclotomic_memo.get(m)
    if cached is not None:
        return cached
    result = poly([-1] + [0] * (m - 1) + [1])  # x**m - 1
    for d in range(1, m):
        if m % d == 0:
            result = result.exact_div(cyclotomic(d))
    _cyclotomic_memo[m] = result
    return result


def _cyclotomic_candidates(max_degree: int):
    """All m >= 1 with euler_phi(m) <= max_degree."""
    # phi(m) >= sqrt(m/2), so m <= 2*max_degree**2 suffices
    bound = 2 * max_degree * max_degree + 1
    return [m for m in range(1, bound + 1) if euler_phi(m) <= max_degree]


def kronecker_test(p: IntPolynomial) -> bool:
    """True iff p = +-x**k times a product of cyclotomic polynomials.

    Equivalent (Kronecker) to the Mahler measure of p being exactly 1.
    """
    if p.is_zero:
        raise ZeroPolynomialError("zero input")
    cs = list(p.coeffs)
    while len(cs) > 1 and cs[0] == 0:
        cs.pop(0)
    q = IntPolynomial(tuple(cs))
    content, prim = content_and_primitive(q)
    if content != 1:
        return False
    if prim.leading < 0:
        prim = -prim
    if prim.degree == 0:
        return prim.coeffs[0] == 1
    if not prim.is_monic:
        return False
    for m in _cyclotomic_candidates(prim.degree):
        phi_m = cyclotomic(m)
        while prim.degree >= phi_m.degree:
            try:
                prim = prim.exact_div(phi_m)
            except ValueError:
                break
        if prim.degree == 0:
            break
    return prim.degree == 0 and prim.coeffs[0] == 1


def strip_trivial_factors(p: IntPolynomial) -> tuple[int, int, IntPolynomial]:
    """Split p as content * x**k * (cyclotomic part) * rest.

    Returns (content, k, rest) where rest carries the sign of p and has no
    cyclotomic factors and no root at zero.  Mahler measure of p equals
    content * M(rest).
    """
    if p.is_zero:
        raise ZeroPolynomialError("zero input")
    content, prim = content_and_primitive(p)
    k = 0
    cs = list(prim.coeffs)
    while len(cs) > 1 and cs[0] == 0:
        cs.pop(0)
        k += 1
    rest = IntPolynomial(tuple(cs))
    if rest.degree > 0:
        for m in _cyclotomic_candidates(rest.degree):
            phi_m = cyclotomic(m)
            while rest.degree >= phi_m.degree:
                try:
                    rest = rest.exact_div(phi_m)
                except ValueError:
                    break
            if rest.degree == 0:
                break
    return content, k, rest

"""Number fields, relative degrees, torsion orders and Galois tests.

A field K = Q[x]/(P) is pinned to a concrete embedding into C: the root of
P with the greatest real part (ties broken towards the upper half-plane).
Relative data such as [K(alpha):K] genuinely depends on that choice, so
every numeric selection below is certified against the embedding's box.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy
from sympy import QQ, CRootOf, Poly, Symbol

from .disk import Disk, eval_poly
from .errors import (
    DegreeLimitError,
    DomainError,
    HypothesisViolation,
    NotAFieldError,
    PrecisionExhausted,
)
from .exactpoly import (
    IntPolynomial,
    cyclotomic,
    discriminant,
    euler_phi,
    factor_rationals,
    gcd as poly_gcd,
    poly,
)
from .heights import AlgebraicNumber, power, select_unique_factor
from .logscalar import LogScalar
from .rootcert import MAX_PRECISION, ComplexBox, isolate_roots, refine

FIELD_DEGREE_CAP = 24
FACTOR_WORK_CAP = 64
# the Galois split test factors a degree-(delta*tau) polynomial over the
# compositum itself, so it needs more headroom than the public cap
SPLIT_WORK_CAP = 400

_X = Symbol("x")
_Y = Symbol("y")


@dataclass(frozen=True)
class NumberField:
    defpoly: IntPolynomial
    tau: int
    disc_abs: int
    disc_is_defpoly: bool  # true when |disc| is of the defining polynomial
    galois_tower_flag: bool | None
    root: ComplexBox  # the chosen embedding of the generator
    # cache for the torsion order; the search factors cyclotomics over the
    # field, which is expensive, so it only runs on first access
    _torsion: int | None = field(default=None, compare=False, repr=False)

    @property
    def is_rational(self) -> bool:
        return self.tau == 1

    @property
    def torsion_order_f(self) -> int:
        """Order of the group of roots of unity in the field."""
        if self._torsion is None:
            object.__setattr__(self, "_torsion", _torsion_search(self))
        return self._torsion


@dataclass(frozen=True)
class FieldElement:
    """Element of a NumberField as rational coordinates in the power basis."""

    fld: NumberField
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) != self.fld.tau:
            raise ValueError("coordinate length mismatch")

    @staticmethod
    def from_rational(fld: NumberField, q) -> "FieldElement":
        coords = [Fraction(0)] * fld.tau
        coords[0] = Fraction(q)
        return FieldElement(fld, tuple(coords))

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    @property
    def is_one(self) -> bool:
        return self.coords[0] == 1 and all(c == 0 for c in self.coords[1:])

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(
            self.fld, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(
            self.fld, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.fld, tuple(-a for a in self.coords))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        n = self.fld.tau
        prod = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coords):
            if a == 0:
                continue
            for j, b in enumerate(other.coords):
                prod[i + j] += a * b
        return FieldElement(self.fld, _reduce_mod(self.fld.defpoly, prod))

    def __pow__(self, k: int) -> "FieldElement":
        if k < 0:
            return self.inverse() ** (-k)
        out = FieldElement.from_rational(self.fld, 1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "FieldElement":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        # extended Euclid in Q[x] against the (irreducible) defining poly
        r0 = [Fraction(c) for c in self.fld.defpoly.coeffs]
        r1 = list(self.coords)
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while any(c != 0 for c in r1):
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r0 is a nonzero constant gcd
        const = next(c for c in r0 if c != 0)
        inv = [c / const for c in s0]
        return FieldElement(self.fld, _reduce_mod(self.fld.defpoly, inv))

    def to_disk(self, theta: Disk) -> Disk:
        return eval_poly(self.coords, theta)

    def _check(self, other: "FieldElement"):
        if self.fld.defpoly != other.fld.defpoly:
            raise ValueError("elements of different fields")


@dataclass(frozen=True)
class FieldPolynomial:
    """Univariate polynomial with FieldElement coefficients, ascending."""

    fld: NumberField
    coeffs: tuple[FieldElement, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def eval_disk(self, theta: Disk, z: Disk) -> Disk:
        acc = Disk.exact(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c.to_disk(theta)
        return acc


@dataclass(frozen=True)
class RelativeData:
    delta: int
    e: int
    is_galois: bool
    conjugates_over_K: tuple[AlgebraicNumber, ...]
    compositum: NumberField = field(compare=False, default=None)


# ---------------------------------------------------------------------------
# exact polynomial helpers over Q
# ---------------------------------------------------------------------------


def _poly_divmod(a: list[Fraction], b: list[Fraction]):
    a = list(a)
    db = max(i for i, c in enumerate(b) if c != 0)
    q = [Fraction(0)] * max(1, len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        if a[i] == 0:
            continue
        c = a[i] / b[db]
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] -= c * b[j]
    return q, a[:db] or [Fraction(0)]


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _reduce_mod(defpoly: IntPolynomial, coords: list[Fraction]) -> tuple[Fraction, ...]:
    n = defpoly.degree
    coords = list(coords) + [Fraction(0)] * max(0, n - len(coords))
    mod = [Fraction(c) for c in defpoly.coeffs]
    for i in range(len(coords) - 1, n - 1, -1):
        c = coords[i]
        if c == 0:
            continue
        coords[i] = Fraction(0)
        for j in range(n):
            coords[i - n + j] -= c * mod[j]
    return tuple(coords[:n])


def integral_scale(p: IntPolynomial) -> tuple[int, IntPolynomial]:
    """(c, q) with q monic integral and q(c*alpha) = 0 whenever p(alpha) = 0."""
    prim = p.primitive_positive()
    c = prim.leading
    if c == 1:
        return 1, prim
    d = prim.degree
    coeffs = [a * c ** (d - 1 - i) for i, a in enumerate(prim.coeffs[:-1])] + [1]
    return c, IntPolynomial(tuple(coeffs))


# ---------------------------------------------------------------------------
# sympy-backed factorization over K
# ---------------------------------------------------------------------------


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _bc = mpmath.mpf(x)._mpf_
    if man == 0:
        return Fraction(0)
    value = Fraction(man) * Fraction(2) ** exp
    return -value if sign else value


@lru_cache(maxsize=None)
def _domain(def_coeffs: tuple[int, ...], root_repr: tuple[str, str]):
    """(theta CRootOf, algebraic-field domain) for a pinned embedding.

    root_repr is a high-precision decimal rendering of the embedding used
    only as a cache key / matching target.  Matching goes through the exact
    isolation intervals of the CRootOf objects, which are disjoint, so no
    numeric refinement of the exact roots is needed.
    """
    p = IntPolynomial(def_coeffs)
    sp = p.to_sympy()
    roots = [CRootOf(sp, i) for i in range(p.degree)]
    t_re = _mpf_to_fraction(mpmath.mpf(root_repr[0]))
    t_im = _mpf_to_fraction(mpmath.mpf(root_repr[1]))
    hits = []
    for i, r in enumerate(roots):
        iv = r._get_interval()
        if r.is_real:
            if t_im != 0:
                continue
            a = Fraction(iv.a.numerator, iv.a.denominator)
            b = Fraction(iv.b.numerator, iv.b.denominator)
            if a <= t_re <= b:
                hits.append(i)
        else:
            ax = Fraction(iv.ax.numerator, iv.ax.denominator)
            bx = Fraction(iv.bx.numerator, iv.bx.denominator)
            ay = Fraction(iv.ay.numerator, iv.ay.denominator)
            by = Fraction(iv.by.numerator, iv.by.denominator)
            if ax <= t_re <= bx and ay <= t_im <= by:
                hits.append(i)
    if len(hits) == 1:
        theta = roots[hits[0]]
        return theta, QQ.algebraic_field(theta)
    # boundary case: fall back to numeric matching
    digits = 30
    while digits <= 600:
        vals = []
        for r in roots:
            re_part, im_part = r.evalf(digits).as_real_imag()
            vals.append(mpmath.mpc(mpmath.mpf(str(re_part)), mpmath.mpf(str(im_part))))
        target = mpmath.mpc(mpmath.mpf(root_repr[0]), mpmath.mpf(root_repr[1]))
        dists = sorted(abs(v - target) for v in vals)
        if len(vals) == 1 or dists[0] * 4 < dists[1]:
            idx = min(range(len(vals)), key=lambda i: abs(vals[i] - target))
            theta = roots[idx]
            return theta, QQ.algebraic_field(theta)
        digits *= 2
    raise PrecisionExhausted("could not match the embedding to an exact root")


def _field_domain(K: NumberField):
    key = (
        mpmath.nstr(K.root.center.real, 40),
        mpmath.nstr(K.root.center.imag, 40),
    )
    return _domain(K.defpoly.coeffs, key)


def _anp_coords(tau: int, anp) -> tuple[Fraction, ...]:
    rep = anp.rep.to_list() if hasattr(anp.rep, "to_list") else list(anp.rep)
    asc = [Fraction(c.numerator, c.denominator) for c in reversed(rep)]
    return tuple(asc + [Fraction(0)] * (tau - len(asc)))


def _factor_raw(K: NumberField, p: IntPolynomial) -> list[tuple[FieldPolynomial, int]]:
    if K.is_rational:
        out = []
        for f, m in factor_rationals(p).factors:
            coeffs = tuple(FieldElement.from_rational(K, c) for c in f.coeffs)
            out.append((FieldPolynomial(K, coeffs), m))
        return out
    _theta, dom = _field_domain(K)
    sp = Poly(p.to_sympy().as_expr(), _X, domain=dom)
    _unit, facs = sp.factor_list()
    out = []
    for f, m in facs:
        anps = f.rep.to_list()  # descending coefficients as ANP
        coeffs = tuple(
            FieldElement(K, _anp_coords(K.tau, a)) for a in reversed(anps)
        )
        out.append((FieldPolynomial(K, coeffs), m))
    out.sort(key=lambda fm: (fm[0].degree, [c.coords for c in fm[0].coeffs]))
    return out


def factor_over_field(
    K: NumberField, p: IntPolynomial
) -> list[tuple[FieldPolynomial, int]]:
    """Complete factorization of p into irreducibles over K."""
    if p.is_zero:
        raise DomainError("zero polynomial")
    if p.degree * K.tau > FACTOR_WORK_CAP:
        raise DegreeLimitError("degree limit")
    return _factor_raw(K, p)


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------


def _canonical_root(p: IntPolynomial) -> ComplexBox:
    boxes = isolate_roots(p, 128).boxes
    with mpmath.workprec(256):
        best = max(boxes, key=lambda b: (b.center.real, b.center.imag >= 0))
    return best


def _torsion_candidates(tau: int) -> list[int]:
    """Prime powers p^k > 2 with phi(p^k) | tau.

    The torsion group is cyclic, so its order is the product over primes
    p of the largest p^k whose root of unity lies in the field; testing
    prime powers only is enough.  phi(m) >= sqrt(m/2) bounds the scan.
    """
    out = []
    for m in range(3, 2 * tau * tau + 3):
        phi = euler_phi(m)
        if phi > tau or tau % phi != 0:
            continue
        # keep m = p^k only
        p = min(q for q in range(2, m + 1) if m % q == 0)
        mm = m
        while mm % p == 0:
            mm //= p
        if mm == 1:
            out.append(m)
    return out


def _torsion_search(K: NumberField) -> int:
    order = 2  # -1 is always present
    for m in _torsion_candidates(K.tau):
        if any(f.degree == 1 for f, _ in _factor_raw(K, cyclotomic(m))):
            order = order * m // math.gcd(order, m)
    return order


def make_field(
    p: IntPolynomial,
    disc_override: int | None = None,
    galois_tower: bool | None = None,
) -> NumberField:
    """Build Q[x]/(p) with its canonical embedding, discriminant and torsion."""
    if p.degree < 1:
        raise NotAFieldError("not a field")
    if p.degree > FIELD_DEGREE_CAP:
        raise DegreeLimitError("degree limit")
    if p.leading != 1:
        raise NotAFieldError("not a field: defining polynomial must be monic")
    if p.degree == 1:
        return NumberField(
            defpoly=poly([0, 1]),
            tau=1,
            disc_abs=1,
            disc_is_defpoly=False,
            galois_tower_flag=True,
            root=ComplexBox(mpmath.mpc(0), mpmath.mpf(0)),
            _torsion=2,
        )
    if not factor_rationals(p).is_irreducible:
        raise NotAFieldError("not a field")
    disc = abs(disc_override) if disc_override is not None else abs(discriminant(p))
    if disc == 0:
        raise NotAFieldError("not a field")
    root = _canonical_root(p)
    return NumberField(
        defpoly=p,
        tau=p.degree,
        disc_abs=disc,
        disc_is_defpoly=disc_override is None,
        galois_tower_flag=galois_tower,
        root=root,
    )


RATIONAL_FIELD = None  # populated lazily


def rational_field() -> NumberField:
    global RATIONAL_FIELD
    if RATIONAL_FIELD is None:
        RATIONAL_FIELD = make_field(poly([0, 1]))
    return RATIONAL_FIELD


def field_torsion_order(K: NumberField) -> int:
    """Order of the group of roots of unity contained in K."""
    return _torsion_search(K)


# ---------------------------------------------------------------------------
# relative data
# ---------------------------------------------------------------------------


def _assign_boxes_to_factors(
    K: NumberField,
    factors: list[FieldPolynomial],
    boxes: tuple[ComplexBox, ...],
    minpoly: IntPolynomial,
) -> list[int]:
    """For each root box, the unique factor it is a root of (certified)."""
    bits = 128
    while bits <= MAX_PRECISION:
        theta_box = refine(K.root, K.defpoly, bits)
        out = []
        ok = True
        with mpmath.workprec(2 * bits + 32):
            theta = theta_box.to_disk()
            for b in boxes:
                rb = refine(b, minpoly, bits)
                idx = select_unique_factor(
                    factors,
                    rb.to_disk(),
                    evaluate=lambda f, z: f.eval_disk(theta, z),
                )
                if idx is None:
                    ok = False
                    break
                out.append(idx)
        if ok:
            return out
        bits *= 2
    raise PrecisionExhausted("precision exhausted")


def relative_degree(K: NumberField, a: AlgebraicNumber) -> int:
    """delta = [K(alpha):K], the degree of alpha's minimal polynomial over K."""
    if a.minpoly.degree * K.tau > FACTOR_WORK_CAP:
        raise DegreeLimitError("degree limit")
    factors = [f for f, _ in _factor_raw(K, a.minpoly)]
    if len(factors) == 1:
        return factors[0].degree
    idx = _assign_boxes_to_factors(K, factors, (a.root,), a.minpoly)[0]
    return factors[idx].degree


def _compositum_poly(K: NumberField, a: AlgebraicNumber, delta: int) -> IntPolynomial:
    """Monic integral defining polynomial for K(alpha), degree delta*tau."""
    c, q = integral_scale(a.minpoly)
    if K.is_rational:
        return q
    pk = K.defpoly.to_sympy().as_expr().subs(_X, _Y)
    for k in range(1, 64):
        shifted = q.to_sympy().as_expr().subs(_X, _X - k * _Y)
        res = sympy.Poly(sympy.resultant(pk, shifted, _Y), _X)
        cand = IntPolynomial.from_sympy(res).primitive_positive()
        if poly_gcd(cand, cand.derivative()).degree == 0:
            factors = [f for f, _ in factor_rationals(cand).factors]
            chosen = _select_generator_factor(K, a, c, k, factors)
            if chosen.degree != delta * K.tau:
                raise DomainError("compositum degree mismatch")
            if chosen.leading != 1:
                raise DomainError("compositum polynomial not monic")
            return chosen
    raise PrecisionExhausted("no squarefree primitive-element candidate found")


def _select_generator_factor(
    K: NumberField, a: AlgebraicNumber, c: int, k: int, factors
) -> IntPolynomial:
    bits = 128
    while bits <= MAX_PRECISION:
        theta_box = refine(K.root, K.defpoly, bits)
        a_box = refine(a.root, a.minpoly, bits)
        with mpmath.workprec(2 * bits + 32):
            target = (
                Disk.exact(c) * a_box.to_disk()
                + Disk.exact(k) * theta_box.to_disk()
            )
            idx = select_unique_factor(factors, target)
            if idx is not None:
                return factors[idx]
        bits *= 2
    raise PrecisionExhausted("precision exhausted")


def relative_data(K: NumberField, a: AlgebraicNumber) -> RelativeData:
    """delta, conjugates over K, torsion order e of K(alpha), Galois test."""
    if a.minpoly.degree * K.tau > FACTOR_WORK_CAP:
        raise DegreeLimitError("degree limit")
    factors = [f for f, _ in _factor_raw(K, a.minpoly)]
    boxes = isolate_roots(a.minpoly, 128).boxes
    if len(factors) == 1:
        assignment = [0] * len(boxes)
        own = _locate_box(a, boxes)
    else:
        assignment = _assign_boxes_to_factors(K, factors, boxes, a.minpoly)
        own = _locate_box(a, boxes)
    own_factor = assignment[own]
    delta = factors[own_factor].degree
    if delta * K.tau > FIELD_DEGREE_CAP:
        raise DegreeLimitError("degree limit")
    conj = tuple(
        AlgebraicNumber(a.minpoly, b)
        for b, fi in zip(boxes, assignment)
        if fi == own_factor
    )
    if delta == 1:
        L = K
    else:
        L = make_field(_compositum_poly(K, a, delta))
    e = L.torsion_order_f
    if e % K.torsion_order_f != 0:
        raise DomainError("torsion order of K does not divide that of K(alpha)")
    is_galois = _splits_on(L, a.minpoly, conj)
    return RelativeData(
        delta=delta, e=e, is_galois=is_galois,
        conjugates_over_K=conj, compositum=L,
    )


def _locate_box(a: AlgebraicNumber, boxes: tuple[ComplexBox, ...]) -> int:
    bits = 128
    while bits <= MAX_PRECISION:
        rb = refine(a.root, a.minpoly, bits)
        hits = [
            i
            for i, b in enumerate(boxes)
            if abs(b.center - rb.center) <= b.radius + rb.radius
        ]
        if len(hits) == 1:
            return hits[0]
        bits *= 2
    raise PrecisionExhausted("could not match the root to an isolated box")


def _splits_on(
    L: NumberField, p: IntPolynomial, conj: tuple[AlgebraicNumber, ...]
) -> bool:
    """True iff every listed conjugate is a root of a linear factor over L."""
    if p.degree * L.tau > SPLIT_WORK_CAP:
        raise DegreeLimitError("degree limit")
    factors = [f for f, _ in _factor_raw(L, p)]
    if all(f.degree == 1 for f in factors):
        return True
    if not any(f.degree == 1 for f in factors):
        return len(conj) == 0
    boxes = tuple(c.root for c in conj)
    assignment = _assign_boxes_to_factors(L, factors, boxes, p)
    return all(factors[i].degree == 1 for i in assignment)


def lemma31_subfield_degree(K: NumberField, rel: RelativeData) -> int:
    """n = [K(beta_1..beta_delta):K] for beta_i = alpha_i ** e."""
    if not rel.is_galois:
        raise HypothesisViolation("requires a Galois relative extension")
    M = K
    for conj in rel.conjugates_over_K:
        beta = power(conj, rel.e)
        if beta.minpoly.degree == 1 and M.is_rational:
            continue
        d_beta = relative_degree(M, beta)
        if d_beta == 1:
            continue
        if d_beta * M.tau > FIELD_DEGREE_CAP:
            raise DegreeLimitError("degree limit")
        M = make_field(_compositum_poly(M, beta, d_beta))
    if M.tau % K.tau != 0:
        raise DomainError("tower degree inconsistency")
    return M.tau // K.tau


def g_flag(K: NumberField) -> LogScalar:
    """1 when K admits a tower of successive Galois steps over Q, else tau!."""
    if K.galois_tower_flag is True:
        return LogScalar.one()
    if K.galois_tower_flag is None:
        if K.tau <= 2:
            return LogScalar.one()
        factors = [f for f, _ in _factor_raw(K, K.defpoly)]
        if all(f.degree == 1 for f in factors):
            return LogScalar.one()
    return LogScalar.from_value(math.factorial(K.tau))

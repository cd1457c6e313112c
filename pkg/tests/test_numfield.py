"""Number fields, relative extension data, torsion orders, and the
Galois-tower factor, checked against hand-computable small fields."""

from fractions import Fraction

import mpmath
import pytest

from relheight.errors import (
    DegreeLimitError,
    DomainError,
    HypothesisViolation,
    NotAFieldError,
)
from relheight.exactpoly import cyclotomic, discriminant, poly
from relheight.heights import AlgebraicNumber
from relheight.numfield import (
    FieldElement,
    factor_over_field,
    field_torsion_order,
    g_flag,
    lemma31_subfield_degree,
    make_field,
    rational_field,
    relative_data,
    relative_degree,
)
from relheight.rootcert import isolate_roots

GAUSS = poly([1, 0, 1])        # x^2 + 1
SQRT2 = poly([-2, 0, 1])       # x^2 - 2
GOLDEN = poly([-1, -1, 1])
CBRT2 = poly([-2, 0, 0, 1])


def number_of(p, pick=None):
    boxes = isolate_roots(p, 128).boxes
    if pick is None:
        pick = lambda b: (b.center.real, b.center.imag >= 0)
    return AlgebraicNumber(p, max(boxes, key=pick))


class TestConstruction:
    def test_gaussian_field(self):
        K = make_field(GAUSS)
        assert K.tau == 2
        assert K.disc_abs == 4
        assert K.torsion_order_f == 4

    def test_sqrt2_field(self):
        K = make_field(SQRT2)
        assert K.disc_abs == 8
        assert K.torsion_order_f == 2

    def test_cyclotomic5_torsion(self):
        K = make_field(cyclotomic(5))
        assert K.tau == 4
        assert K.torsion_order_f == 10

    def test_cyclotomic8_torsion(self):
        K = make_field(cyclotomic(8))
        assert K.torsion_order_f == 8

    def test_rational_field(self):
        Q = rational_field()
        assert Q.is_rational and Q.tau == 1
        assert Q.torsion_order_f == 2
        assert field_torsion_order(make_field(GAUSS)) == 4

    def test_disc_matches_defpoly(self):
        K = make_field(GOLDEN)
        assert K.disc_abs == abs(discriminant(GOLDEN)) == 5
        assert K.disc_is_defpoly

    def test_disc_override(self):
        K = make_field(GOLDEN, disc_override=-5)
        assert K.disc_abs == 5 and not K.disc_is_defpoly

    def test_rejects_non_fields(self):
        with pytest.raises(NotAFieldError):
            make_field(poly([-1, 0, 1]))  # x^2 - 1 reducible
        with pytest.raises(NotAFieldError):
            make_field(poly([5]))
        with pytest.raises(NotAFieldError):
            make_field(poly([-2, 0, 2]))  # non-monic
        with pytest.raises(DegreeLimitError):
            make_field(poly([2] + [0] * 24 + [1]))


class TestElements:
    def test_inverse_silver(self):
        K = make_field(SQRT2)
        x = FieldElement(K, (Fraction(1), Fraction(1)))  # 1 + sqrt2
        inv = x.inverse()
        # 1/(1+sqrt2) = sqrt2 - 1
        assert inv.coords == (Fraction(-1), Fraction(1))
        assert (x * inv).is_one

    def test_arithmetic_reduces(self):
        K = make_field(GAUSS)
        i = FieldElement(K, (Fraction(0), Fraction(1)))
        assert (i * i).coords == (Fraction(-1), Fraction(0))
        assert (i ** 4).is_one

    def test_mixed_fields_rejected(self):
        a = FieldElement.from_rational(make_field(GAUSS), 1)
        b = FieldElement.from_rational(make_field(SQRT2), 1)
        with pytest.raises(ValueError):
            a * b


class TestFactoring:
    def test_phi8_over_sqrt2(self):
        K = make_field(SQRT2)
        factors = factor_over_field(K, cyclotomic(8))
        assert sorted(f.degree for f, _ in factors) == [2, 2]

    def test_x2_minus_2_over_gauss_irreducible(self):
        K = make_field(GAUSS)
        factors = factor_over_field(K, SQRT2)
        assert len(factors) == 1 and factors[0][0].degree == 2

    def test_split_over_own_field(self):
        K = make_field(GOLDEN)
        factors = factor_over_field(K, GOLDEN)
        assert sorted(f.degree for f, _ in factors) == [1, 1]

    def test_degree_cap(self):
        K = make_field(cyclotomic(32))  # tau = 16
        with pytest.raises(DegreeLimitError):
            factor_over_field(K, poly([1] * 5 + [0] * 1 + [1] * 4 + [1]))


class TestRelativeData:
    def test_sqrt2_over_q(self):
        Q = rational_field()
        a = number_of(SQRT2)
        assert relative_degree(Q, a) == 2
        rel = relative_data(Q, a)
        assert rel.delta == 2
        assert rel.e == 2
        assert rel.is_galois
        assert len(rel.conjugates_over_K) == 2
        assert lemma31_subfield_degree(Q, rel) == 1

    def test_cbrt2_not_galois(self):
        Q = rational_field()
        a = number_of(CBRT2)
        rel = relative_data(Q, a)
        assert rel.delta == 3
        assert not rel.is_galois
        with pytest.raises(HypothesisViolation):
            lemma31_subfield_degree(Q, rel)

    def test_golden_squares_generate_quadratic(self):
        Q = rational_field()
        rel = relative_data(Q, number_of(GOLDEN))
        assert rel.is_galois and rel.e == 2
        assert lemma31_subfield_degree(Q, rel) == 2

    def test_i_over_q(self):
        Q = rational_field()
        rel = relative_data(Q, number_of(GAUSS))
        assert rel.delta == 2 and rel.e == 4 and rel.is_galois
        # i^4 = 1, so the subfield of e-th powers is Q itself
        assert lemma31_subfield_degree(Q, rel) == 1

    def test_zeta8_over_gauss(self):
        K = make_field(GAUSS)
        a = number_of(cyclotomic(8))
        assert relative_degree(K, a) == 2
        rel = relative_data(K, a)
        assert rel.delta == 2
        assert rel.e == 8
        assert rel.compositum.tau == 4
        assert rel.is_galois

    def test_sqrt2_over_gauss(self):
        K = make_field(GAUSS)
        rel = relative_data(K, number_of(SQRT2))
        assert rel.delta == 2
        assert rel.e == 8  # K(sqrt2) = Q(zeta_8)
        assert rel.is_galois

    def test_element_of_base_field(self):
        K = make_field(SQRT2)
        rel = relative_data(K, number_of(SQRT2))
        assert rel.delta == 1
        assert rel.e == 2
        assert rel.compositum.defpoly == K.defpoly

    def test_torsion_divisibility_invariant(self):
        # f | e for a handful of towers
        cases = [
            (GAUSS, cyclotomic(8)),
            (SQRT2, cyclotomic(8)),
            (GOLDEN, cyclotomic(5)),
        ]
        for base, top in cases:
            K = make_field(base)
            rel = relative_data(K, number_of(top))
            assert rel.e % K.torsion_order_f == 0

    def test_delta_divides_degree(self):
        K = make_field(GAUSS)
        for p in (SQRT2, cyclotomic(8), cyclotomic(12), poly([1, 1, 1])):
            a = number_of(p)
            delta = relative_degree(K, a)
            assert a.minpoly.degree % delta == 0


class TestGFlag:
    def test_explicit_tower_flag(self):
        K = make_field(CBRT2, galois_tower=True)
        assert g_flag(K) == g_flag(rational_field())

    def test_default_small_degree_is_one(self):
        with mpmath.workprec(128):
            assert float(g_flag(make_field(SQRT2)).logmag) == 0.0

    def test_default_large_degree_is_factorial(self):
        K = make_field(CBRT2)
        with mpmath.workprec(128):
            assert abs(g_flag(K).logmag - mpmath.log(6)) < 1e-30

    def test_explicit_false_forces_factorial(self):
        K = make_field(GAUSS, galois_tower=False)
        with mpmath.workprec(128):
            assert abs(g_flag(K).logmag - mpmath.log(2)) < 1e-30

    def test_galois_defpoly_detected(self):
        # x^4 - 4x^2 + 1 defines the Galois field Q(sqrt2, sqrt3)
        K = make_field(poly([1, 0, -4, 0, 1]))
        with mpmath.workprec(128):
            assert float(g_flag(K).logmag) == 0.0

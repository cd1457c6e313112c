"""Signed log-space scalars: algebra, ordering, comparisons, rendering."""

from fractions import Fraction

import mpmath
import pytest

from relheight.logscalar import LogScalar


class TestConstruction:
    def test_zero_one(self):
        assert LogScalar.zero().sign == 0
        assert LogScalar.one().sign == 1
        assert float(LogScalar.one().logmag) == 0.0

    def test_from_value(self):
        x = LogScalar.from_value(8)
        assert x.sign == 1
        with mpmath.workprec(128):
            assert abs(x.logmag - mpmath.log(8)) < 1e-30
        y = LogScalar.from_value(-3)
        assert y.sign == -1
        z = LogScalar.from_value(Fraction(1, 4))
        with mpmath.workprec(128):
            assert abs(z.logmag + mpmath.log(4)) < 1e-30
        assert LogScalar.from_value(0).sign == 0


class TestAlgebra:
    def test_mul_matches_values(self):
        with mpmath.workprec(128):
            vals = [3, Fraction(2, 7), -5, Fraction(-1, 3)]
            for a in vals:
                for b in vals:
                    got = LogScalar.from_value(a) * LogScalar.from_value(b)
                    want = LogScalar.from_value(Fraction(a) * Fraction(b))
                    assert got.sign == want.sign
                    assert abs(got.logmag - want.logmag) < 1e-30

    def test_div_and_reciprocal(self):
        with mpmath.workprec(128):
            a = LogScalar.from_value(10)
            b = LogScalar.from_value(4)
            q = a / b
            assert abs(q.logmag - mpmath.log(mpmath.mpf(10) / 4)) < 1e-30
            assert abs((b.reciprocal() * b).logmag) < 1e-30

    def test_pow(self):
        a = LogScalar.from_value(2)
        assert abs((a**10).logmag - 10 * a.logmag) < 1e-28
        n = LogScalar.from_value(-2)
        assert (n**2).sign == 1
        assert (n**3).sign == -1

    def test_mul_by_zero(self):
        assert (LogScalar.zero() * LogScalar.from_value(5)).sign == 0


class TestOrderCompare:
    def test_total_order(self):
        vals = [-10, -1, Fraction(-1, 8), 0, Fraction(1, 9), 1, 7]
        scalars = [LogScalar.from_value(v) for v in vals]
        assert sorted(scalars) == scalars

    def test_less_than_real(self):
        tiny = LogScalar.from_log(mpmath.mpf(-100000))
        assert tiny.less_than_real(1e-300)
        assert not LogScalar.from_value(2).less_than_real(1)
        assert LogScalar.from_value(-3).less_than_real(1e-9)
        assert LogScalar.zero().less_than_real(1e-9)
        with pytest.raises(ValueError):
            LogScalar.one().less_than_real(0)

    def test_to_mpf_roundtrip(self):
        with mpmath.workprec(128):
            x = LogScalar.from_value(Fraction(355, 113))
            assert abs(x.to_mpf() - mpmath.mpf(355) / 113) < 1e-30


class TestRendering:
    def test_scientific_in_range(self):
        s = LogScalar.from_value(Fraction(1, 1024)).decimal_string(6)
        assert "e" in s or "0.0009765625".startswith(s[:5])

    def test_huge_magnitudes_textual(self):
        huge = LogScalar.from_log(mpmath.mpf(10) ** 6)
        assert huge.decimal_string().startswith("exp(")
        tiny = LogScalar.from_log(-mpmath.mpf(10) ** 6)
        assert tiny.decimal_string().startswith("exp(-")

    def test_zero_renders(self):
        assert LogScalar.zero().decimal_string() == "0"

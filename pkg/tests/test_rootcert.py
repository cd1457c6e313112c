"""Certified root isolation: disk arithmetic containment, isolation
invariants, conjugate symmetry, and agreement with an independent
companion-matrix eigenvalue oracle."""

import random

import mpmath
import pytest

from relheight.disk import Disk, eval_poly
from relheight.errors import ZeroPolynomialError
from relheight.exactpoly import IntPolynomial, cyclotomic, poly
from relheight.rootcert import isolate_roots, refine


def random_poly(rng, deg, max_coeff=8):
    cs = [rng.randint(-max_coeff, max_coeff) for _ in range(deg)]
    cs.append(rng.choice([c for c in range(-max_coeff, max_coeff + 1) if c]))
    return IntPolynomial(tuple(cs))


def companion_eigenvalues(p: IntPolynomial):
    """Independent oracle: eigenvalues of the companion matrix."""
    d = p.degree
    lead = p.leading
    with mpmath.workprec(256):
        m = mpmath.zeros(d, d)
        for i in range(1, d):
            m[i, i - 1] = 1
        for i in range(d):
            m[i, d - 1] = -mpmath.mpf(p.coeffs[i]) / lead
        eig = mpmath.eig(m, left=False, right=False)
        return list(eig)


class TestDisk:
    def test_containment_under_arithmetic(self):
        rng = random.Random(21)
        with mpmath.workprec(128):
            for _ in range(60):
                c1 = mpmath.mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
                c2 = mpmath.mpc(rng.uniform(-4, 4), rng.uniform(-4, 4))
                r1, r2 = mpmath.mpf(rng.uniform(0, 0.3)), mpmath.mpf(rng.uniform(0, 0.3))
                d1, d2 = Disk(c1, r1), Disk(c2, r2)
                # sample points inside each disk
                z1 = c1 + r1 * 0.7 * mpmath.exp(1j * rng.uniform(0, 6.28))
                z2 = c2 + r2 * 0.7 * mpmath.exp(1j * rng.uniform(0, 6.28))
                assert (d1 + d2).contains(z1 + z2)
                assert (d1 - d2).contains(z1 - z2)
                assert (d1 * d2).contains(z1 * z2)
                assert (d1**3).contains(z1**3)

    def test_abs_bounds(self):
        with mpmath.workprec(128):
            d = Disk(mpmath.mpc(3, 4), mpmath.mpf("0.5"))
            lo, hi = d.abs_bounds()
            assert lo <= 4.5 <= hi and lo <= 5 <= hi
            assert float(lo) == pytest.approx(4.5, abs=1e-20)
            assert float(hi) == pytest.approx(5.5, abs=1e-20)
            assert d.excludes_zero()
            assert not Disk(mpmath.mpc(0.1), mpmath.mpf(1)).excludes_zero()

    def test_eval_poly_containment(self):
        rng = random.Random(22)
        with mpmath.workprec(128):
            for _ in range(30):
                p = random_poly(rng, 4)
                c = mpmath.mpc(rng.uniform(-2, 2), rng.uniform(-2, 2))
                r = mpmath.mpf(rng.uniform(0, 0.1))
                z = c + r * 0.5
                image = eval_poly(p.coeffs, Disk(c, r))
                direct = sum(mpmath.mpc(cc) * z**i for i, cc in enumerate(p.coeffs))
                assert image.contains(direct)


class TestIsolation:
    def test_counts_and_disjointness(self):
        rng = random.Random(23)
        for _ in range(10):
            p = random_poly(rng, rng.randint(2, 8))
            from relheight.exactpoly import squarefree_part

            p = squarefree_part(p)
            rs = isolate_roots(p, 128)
            boxes = rs.boxes
            assert len(boxes) == p.degree
            with mpmath.workprec(300):
                for i in range(len(boxes)):
                    for j in range(i + 1, len(boxes)):
                        dist = abs(boxes[i].center - boxes[j].center)
                        assert dist > boxes[i].radius + boxes[j].radius

    def test_residual_small_at_centers(self):
        p = poly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])
        rs = isolate_roots(p, 128)
        with mpmath.workprec(300):
            for b in rs.boxes:
                val = abs(sum(mpmath.mpc(c) * b.center**i for i, c in enumerate(p.coeffs)))
                assert val < mpmath.mpf(2) ** -100

    def test_conjugate_symmetry(self):
        p = poly([2, -4, 0, 0, 0, 1])
        boxes = isolate_roots(p, 128).boxes
        with mpmath.workprec(256):
            imags = sorted(float(b.center.imag) for b in boxes)
            for lo, hi in zip(imags, reversed(imags)):
                assert abs(lo + hi) < 1e-30

    def test_vieta(self):
        rng = random.Random(24)
        for _ in range(8):
            p = random_poly(rng, 5)
            from relheight.exactpoly import squarefree_part

            p = squarefree_part(p)
            boxes = isolate_roots(p, 128).boxes
            with mpmath.workprec(300):
                s = sum(b.center for b in boxes)
                expect = -mpmath.mpf(p.coeffs[-2]) / p.coeffs[-1]
                slack = sum(b.radius for b in boxes) + mpmath.mpf(2) ** -90
                assert abs(s - expect) <= slack
                prod = mpmath.mpf(1)
                for b in boxes:
                    prod *= b.center
                expect_p = mpmath.mpf((-1) ** p.degree * p.coeffs[0]) / p.coeffs[-1]
                assert abs(prod - expect_p) < mpmath.mpf(2) ** -60 * max(
                    1, abs(expect_p)
                )

    def test_matches_companion_oracle(self):
        rng = random.Random(25)
        for _ in range(6):
            p = random_poly(rng, 6)
            from relheight.exactpoly import squarefree_part

            p = squarefree_part(p)
            boxes = isolate_roots(p, 128).boxes
            eigs = companion_eigenvalues(p)
            with mpmath.workprec(300):
                for e in eigs:
                    hits = [
                        b
                        for b in boxes
                        if abs(b.center - e) < max(b.radius * 4, mpmath.mpf(2) ** -60)
                    ]
                    assert len(hits) == 1

    def test_rational_roots_are_exact(self):
        boxes = isolate_roots(poly([-3, 1]), 128).boxes
        assert len(boxes) == 1
        assert boxes[0].radius == 0
        assert boxes[0].center == 3

    def test_zero_poly_rejected(self):
        with pytest.raises(ZeroPolynomialError):
            isolate_roots(poly([0]), 128)

    def test_cyclotomic_roots_on_unit_circle(self):
        boxes = isolate_roots(cyclotomic(7), 128).boxes
        with mpmath.workprec(256):
            for b in boxes:
                lo, hi = b.abs_bounds()
                assert lo <= 1 <= hi


class TestRefine:
    def test_refine_shrinks_and_stays(self):
        p = poly([-2, 0, 1])
        box = isolate_roots(p, 64).boxes[0]
        fine = refine(box, p, 256)
        with mpmath.workprec(400):
            assert fine.radius <= mpmath.mpf(2) ** -250
            root = mpmath.sqrt(mpmath.mpf(2))
            target = root if abs(box.center - root) < 0.5 else -root
            assert abs(fine.center - target) <= fine.radius + mpmath.mpf(2) ** -250

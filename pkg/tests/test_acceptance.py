"""End-to-end acceptance gate.

Each test pins one external guarantee of the package: certified Mahler
measures, the Kronecker dichotomy, the explicit bound constants, rank
computation against an exhaustive oracle, the height power rule, and a
full verification sweep over the bundled corpus, with time budgets.
"""

import importlib.resources
import json
import math
import random
import time
from fractions import Fraction

import mpmath
import pytest
from click.testing import CliRunner
from mpmath import mpf

from relheight.boundeval import (
    FEIT_EXCEPTIONS,
    ConstantsConfig,
    f1_g1_crossing,
    gl3_order,
    phi_constant_C,
    rosser_totient_floor,
    theorem1_bound,
    theorem2_bound,
    voutier_f1,
    voutier_g1,
)
from relheight.cli import main as cli_main
from relheight.corpus import load_corpus
from relheight.exactpoly import (
    cyclotomic,
    factor_rationals,
    kronecker_test,
    poly,
)
from relheight.heights import (
    AlgebraicNumber,
    conjugates,
    from_rational,
    mahler_measure,
    power,
    root_of_unity_order,
    weil_height,
)
from relheight.logscalar import LogScalar
from relheight.multrank import brute_force_rank, multiplicative_rank, verify_relation
from relheight.rootcert import isolate_roots

from oracles import straight_theorem1, straight_theorem2

LEHMER = poly([1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1])


def corpus_path() -> str:
    return str(importlib.resources.files("relheight").joinpath("data/corpus.jsonl"))


def number_of(p, precision_bits=128):
    boxes = isolate_roots(p, precision_bits).boxes
    return AlgebraicNumber(
        p, max(boxes, key=lambda b: (b.center.real, b.center.imag >= 0))
    )


def test_01_lehmer_mahler_measure():
    started = time.monotonic()
    iv = mahler_measure(LEHMER, 256)
    elapsed = time.monotonic() - started
    with mpmath.workprec(320):
        # the interval brackets the value 1.176280818259917506544070338474...
        assert iv.lo <= mpf("1.1762808182599175065440703385")
        assert iv.hi >= mpf("1.1762808182599175065440703384")
        assert iv.width <= mpf("1e-8")
    assert elapsed < 1.0


def test_02_kronecker_dichotomy():
    started = time.monotonic()
    rng = random.Random(2024)

    # >= 200 products +-x^k * prod Phi_m of total degree <= 30
    kronecker_count = 0
    while kronecker_count < 200:
        p = poly([1])
        budget = 30
        for _ in range(rng.randint(1, 4)):
            m = rng.randint(1, 20)
            q = cyclotomic(m)
            if q.degree > budget:
                continue
            p = p * q
            budget -= q.degree
        k = rng.randint(0, budget)
        p = p.shift_up(k)
        if rng.random() < 0.5:
            p = -p
        assert kronecker_test(p), p.coeffs
        iv = mahler_measure(p, 64)
        assert iv.lo == 1 and iv.hi == 1
        kronecker_count += 1

    # 200 random irreducible non-Kronecker polynomials of degree <= 12
    other_count = 0
    while other_count < 200:
        deg = rng.randint(2, 12)
        coeffs = [rng.randint(-9, 9) for _ in range(deg)] + [rng.randint(1, 9)]
        if coeffs[0] == 0:
            continue
        p = poly(coeffs)
        if kronecker_test(p):
            continue
        if not factor_rationals(p).is_irreducible:
            continue
        iv = mahler_measure(p, 64)
        assert iv.lo > 1, p.coeffs
        other_count += 1

    assert time.monotonic() - started < 30.0


def test_03_voutier_constants():
    v = voutier_g1(3, 256)
    with mpmath.workprec(320):
        x = mpf(3)
        oracle = (mpmath.log(mpmath.log(x)) / mpmath.log(x)) ** 3 / (4 * x)
        assert mpmath.nstr(v.to_mpf(), 12) == mpmath.nstr(oracle, 12)
        # coarse cross-check against the truncated literal 0.00005227953369,
        # which is only reliable to its first 8 significant digits
        lit = mpf("0.00005227953369")
        assert abs(v.to_mpf() - lit) / lit < mpf("1e-8")

    a = f1_g1_crossing(160)
    assert 184 < a < 185
    assert abs(a - mpf("184.615")) < mpf("1e-3")
    assert voutier_f1(mpf(184), 128) > voutier_g1(mpf(184), 128)
    assert voutier_f1(mpf(185), 128) < voutier_g1(mpf(185), 128)


def test_04_totient_bounds():
    started = time.monotonic()
    limit = 100000
    sieve = list(range(limit + 1))
    for i in range(2, limit + 1):
        if sieve[i] == i:
            for j in range(i, limit + 1, i):
                sieve[j] -= sieve[j] // i

    with mpmath.workprec(96):
        floors = {}
        consts = {
            eps: phi_constant_C(eps, 96)
            for eps in (
                Fraction(1, 10), Fraction(1, 2), Fraction(1), Fraction(2)
            )
        }
        for n in range(3, limit + 1):
            ratio = mpf(sieve[n]) / n
            assert rosser_totient_floor(n, 96) < ratio
        for eps, c in consts.items():
            ev = mpf(eps.numerator) / eps.denominator
            for n in range(3, limit + 1, 17):
                assert c * n <= mpf(sieve[n]) ** (1 + ev)
    assert time.monotonic() - started < 60.0


def test_05_group_order_ceilings():
    for rho in range(1, 13):
        order = gl3_order(rho)
        expect = 1
        for i in range(rho):
            expect *= 3**rho - 3**i
        assert order == expect
        assert order < 3 ** (rho * rho)
    assert FEIT_EXCEPTIONS == {
        2: 12, 4: 1152, 6: 103680, 7: 2903040,
        8: 696729600, 9: 1393459200, 10: 8360755200,
    }
    for rho, order in FEIT_EXCEPTIONS.items():
        assert order <= Fraction(135, 2) * 2**rho * math.factorial(rho)


def test_06_rank_against_exhaustive_oracle():
    started = time.monotonic()
    sqrt2 = conjugates(poly([-2, 0, 1]), 128)
    golden = conjugates(poly([-1, -1, 1]), 128)
    silver = conjugates(poly([-1, -2, 1]), 128)
    zeta5 = conjugates(cyclotomic(5), 128)
    cbrt2 = conjugates(poly([-2, 0, 0, 1]), 128)
    two, three = from_rational(2), from_rational(3)
    instances = [
        tuple(sqrt2), tuple(golden), tuple(silver), tuple(zeta5), tuple(cbrt2),
        (two,), (two, three), (two, sqrt2[0]), (two, sqrt2[0], sqrt2[1]),
        (three, golden[0]), (golden[0], golden[1], two),
        (sqrt2[0], silver[0]), (sqrt2[0], silver[0], silver[1]),
        (zeta5[0], two), (zeta5[0], zeta5[1]), (cbrt2[0], two),
        (cbrt2[0], cbrt2[1]), (from_rational(4), two),
        (from_rational(6), two, three), (from_rational(-1), two),
        (golden[0], power(golden[0], 3)),
    ]
    assert len(instances) >= 20
    for nums in instances:
        got = multiplicative_rank(nums, exponent_bound=6)
        want = brute_force_rank(nums, exponent_bound=6)
        assert got.rho == want.rho
        assert got.lattice.relations == want.lattice.relations
        for vec in got.lattice.relations:
            assert verify_relation(nums, vec)
    assert time.monotonic() - started < 120.0


def test_07_height_power_rule():
    entries = load_corpus(corpus_path())
    numbers = []
    for e in entries:
        p = poly(list(e.coeffs))
        if kronecker_test(p) or not factor_rationals(p).is_irreducible:
            continue
        a = number_of(p)
        if root_of_unity_order(a) is not None:
            continue
        numbers.append(a)
        if len(numbers) == 20:
            break
    assert len(numbers) == 20
    for a in numbers:
        h1 = weil_height(a, 128)
        for k in (2, 3, 4, 5):
            ak = power(a, k)
            hk = weil_height(ak, 128)
            with mpmath.workprec(300):
                slack = hk.width + k * h1.width + mpf(2) ** -60
                assert abs(hk.mid - k * h1.mid) <= slack


def test_08_verify_bundled_corpus():
    started = time.monotonic()
    entries = load_corpus(corpus_path())
    runner = CliRunner()
    res = runner.invoke(cli_main, ["verify", corpus_path()])
    elapsed = time.monotonic() - started
    assert res.exit_code == 0
    records = [json.loads(line) for line in res.stdout.splitlines() if line.strip()]
    summary = records[-1]
    assert summary["type"] == "summary"
    assert summary["exit_code"] == 0
    verify_records = [r for r in records[:-1] if r.get("type") == "verify"]
    assert len(verify_records) == len(entries)

    non_torsion = [r for r in verify_records if r["verdict"] != "SKIP"]
    assert len(non_torsion) >= 30
    for rec in non_torsion:
        assert rec["verdict"] in ("PASS", "CONDITIONAL-PASS"), rec["name"]
        data = rec["data"]
        assert data["delta"] * data["tau"] <= 12, rec["name"]
        for b in rec["bounds"]:
            if b["bound_id"] == "voutier":
                assert b["verdict"] == "PASS", rec["name"]
            if b["bound_id"].startswith("thm2-case"):
                assert b["verdict"] == "PASS", rec["name"]
            if b["bound_id"] == "thm1-case-c":
                assert b["params"]["c_AD"] == 1.0
                assert b["verdict"] == "CONDITIONAL-PASS", rec["name"]
    # theorem 2 must actually be exercised somewhere in the corpus
    exercised = {
        b["bound_id"]
        for rec in non_torsion
        for b in rec["bounds"]
        if b["verdict"] == "PASS"
    }
    assert "thm2-case-1" in exercised and "thm2-case-2" in exercised
    assert elapsed < 300.0


def test_09_bounds_match_straightline_reimplementation():
    rng = random.Random(9)
    points = 0
    while points < 100:
        eps = Fraction(rng.randint(1, 40), rng.randint(1, 20))
        if not (Fraction(1, 20) <= eps <= 2):
            continue
        points += 1
        cfg = ConstantsConfig(eps=eps, precision_bits=192)
        tau = rng.randint(1, 6)
        delta = rng.randint(1, 10**6)
        rho = rng.randint(1, 8)
        f = rng.choice([2, 4, 6])
        e = f * rng.choice([1, 2, 3])
        disc = rng.randint(1, 10**6)
        got1 = theorem1_bound(
            delta, tau, delta * tau, rho, e, f, disc, LogScalar.one(), cfg
        )
        r = rng.randint(1, 3)
        eta = rng.randint(1, 10**6)
        rho2 = rng.randint(r, r + 3)
        d_alpha_e = rng.choice([1, 2, 4, 6, 9, 50])
        got2 = theorem2_bound(eta, tau, r, rho2, e, d_alpha_e, cfg)
        with mpmath.workprec(320):
            want1 = straight_theorem1(
                delta, tau, delta * tau, rho, e, f, disc, mpf(0), eps, 1.0, 320
            )
            want2 = straight_theorem2(eta, tau, r, rho2, e, d_alpha_e, eps, 320)
            for rep in got1:
                expect = want1[rep.bound_id]
                assert abs(rep.value.logmag - expect) <= mpf("1e-20") * max(
                    1, abs(expect)
                ), rep.bound_id
            for rep in got2:
                expect = want2[rep.bound_id]
                assert abs(rep.value.logmag - expect) <= mpf("1e-20") * max(
                    1, abs(expect)
                ), rep.bound_id

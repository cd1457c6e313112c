"""Orchestration: corpus entry -> heights -> relative data -> rank -> bounds.

Produces plain dict records (JSON-ready, schema "relheight/1") so the
service and the CLI can share one implementation.  All numeric rendering
goes through mpmath.nstr with fixed digit counts, keeping output
deterministic for identical inputs and flags.
"""

from __future__ import annotations

import math

import mpmath

from . import multrank
from .boundeval import (
    BoundReport,
    ConstantsConfig,
    dobrowolski_floor,
    theorem1_bound,
    theorem2_bound,
    voutier_height_floor,
)
from .corpus import CorpusEntry
from .errors import InputError, NotAFieldError, RelHeightError
from .exactpoly import IntPolynomial, factor_rationals, kronecker_test
from .heights import (
    AlgebraicNumber,
    RealInterval,
    mahler_measure,
    power,
    root_of_unity_order,
    weil_height,
)
from .logscalar import LogScalar
from .numfield import NumberField, g_flag, make_field, rational_field, relative_data
from .rootcert import isolate_roots

SCHEMA = "relheight/1"

DIGITS = 20


def _fmt(x) -> str:
    with mpmath.workprec(max(mpmath.mp.prec, 80)):
        return mpmath.nstr(mpmath.mpf(x), DIGITS)


def _interval_dict(iv: RealInterval) -> dict:
    return {"lo": _fmt(iv.lo), "hi": _fmt(iv.hi)}


def _poly_of(entry_coeffs: tuple[int, ...]) -> IntPolynomial:
    p = IntPolynomial(tuple(entry_coeffs))
    if p.is_zero:
        raise InputError("zero polynomial")
    return p


def canonical_number(p: IntPolynomial, precision_bits: int = 128) -> AlgebraicNumber:
    """The root with greatest real part (ties to the upper half-plane)."""
    prim = factor_rationals(p)
    if not prim.is_irreducible:
        raise InputError("polynomial is not irreducible")
    q = prim.factors[0][0]
    boxes = isolate_roots(q, precision_bits).boxes
    best = max(boxes, key=lambda b: (b.center.real, b.center.imag >= 0))
    return AlgebraicNumber(q, best)


def base_field(entry: CorpusEntry) -> NumberField:
    if entry.base is None:
        return rational_field()
    bp = _poly_of(entry.base)
    if bp.leading != 1:
        raise NotAFieldError("base field polynomial must be monic")
    return make_field(bp, galois_tower=entry.galois_tower)


# ---------------------------------------------------------------------------
# records
# ---------------------------------------------------------------------------


def height_record(entry: CorpusEntry, precision_bits: int = 128) -> dict:
    rec = {
        "schema": SCHEMA,
        "type": "height",
        "name": entry.name,
        "degree": None,
        "irreducible": None,
        "kronecker": None,
        "root_of_unity_order": None,
        "mahler": None,
        "height": None,
        "error": None,
    }
    try:
        p = _poly_of(entry.coeffs)
        rec["degree"] = p.degree
        rec["kronecker"] = kronecker_test(p)
        rec["mahler"] = _interval_dict(mahler_measure(p, precision_bits))
        fl = factor_rationals(p)
        rec["irreducible"] = fl.is_irreducible
        if fl.is_irreducible:
            a = canonical_number(p, precision_bits)
            rec["height"] = _interval_dict(weil_height(a, precision_bits))
            rec["root_of_unity_order"] = root_of_unity_order(a)
    except RelHeightError as exc:
        rec["error"] = str(exc)
    return rec


def rank_record(
    entry: CorpusEntry,
    exponent_bound: int = 6,
    precision_bits: int = 128,
) -> dict:
    rec = {
        "schema": SCHEMA,
        "type": "rank",
        "name": entry.name,
        "tau": None,
        "delta": None,
        "conjugates": None,
        "rho": None,
        "relations": None,
        "status": None,
        "all_torsion": None,
        "note": None,
        "error": None,
    }
    try:
        p = _poly_of(entry.coeffs)
        K = base_field(entry)
        rec["tau"] = K.tau
        a = canonical_number(p, precision_bits)
        rel = relative_data(K, a)
        rec["delta"] = rel.delta
        rec["conjugates"] = len(rel.conjugates_over_K)
        rank = multrank.multiplicative_rank(
            rel.conjugates_over_K, exponent_bound, precision_bits
        )
        rec["rho"] = rank.rho
        rec["relations"] = [list(v) for v in rank.lattice.relations]
        rec["status"] = rank.status
        rec["all_torsion"] = rank.rho == 0
        if rank.rho == 0:
            rec["note"] = "all conjugates are roots of unity; theorems inapplicable"
    except RelHeightError as exc:
        rec["error"] = str(exc)
    return rec


def bound_report_dict(b: BoundReport) -> dict:
    return {
        "bound_id": b.bound_id,
        "case": b.case_label,
        "conditional": b.conditional,
        "logmag": _fmt(b.value.logmag) if b.value.sign else "0",
        "sign": b.value.sign,
        "value": b.value.decimal_string(14),
        "params": b.params,
    }


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------

#: bound ids that are intermediate constants, not height floors
_NON_FLOOR_IDS = {"thm1-c4"}


def _verdict(b: BoundReport, h: RealInterval, strict: bool) -> str:
    if b.bound_id in _NON_FLOOR_IDS:
        return "SKIP"
    if b.conditional and strict:
        return "SKIP"
    passed = h.lo > 0 and b.value.less_than_real(h.lo)
    if passed:
        return "CONDITIONAL-PASS" if b.conditional else "PASS"
    return "FAIL"


def verify_entry(
    entry: CorpusEntry,
    cfg: ConstantsConfig,
    strict_unconditional: bool = False,
    exponent_bound: int = 5,
) -> dict:
    rec = {
        "schema": SCHEMA,
        "type": "verify",
        "name": entry.name,
        "verdict": None,
        "note": None,
        "height": None,
        "data": None,
        "bounds": [],
        "error": None,
    }
    try:
        p = _poly_of(entry.coeffs)
        if kronecker_test(p):
            rec["verdict"] = "SKIP"
            rec["note"] = "root of unity (or power of x); height is zero"
            return rec
        fl = factor_rationals(p)
        if not fl.is_irreducible:
            rec["verdict"] = "SKIP"
            rec["note"] = "reducible polynomial; no single algebraic number"
            return rec
        K = base_field(entry)
        a = canonical_number(p, cfg.precision_bits)
        if root_of_unity_order(a) is not None:
            rec["verdict"] = "SKIP"
            rec["note"] = "root of unity; height is zero"
            return rec
        h = weil_height(a, cfg.precision_bits)
        rec["height"] = _interval_dict(h)
        d = a.degree
        rel = relative_data(K, a)
        rank = multrank.multiplicative_rank(
            rel.conjugates_over_K, exponent_bound, cfg.precision_bits
        )
        rec["data"] = {
            "tau": K.tau,
            "delta": rel.delta,
            "d": d,
            "e": rel.e,
            "f": K.torsion_order_f,
            "rho": rank.rho,
            "rank_status": rank.status,
            "is_galois": rel.is_galois,
            "disc_abs": str(K.disc_abs),
            "disc_is_defpoly": K.disc_is_defpoly,
        }
        reports: list[tuple[BoundReport, str | None]] = []
        if d >= 2:
            reports.append(
                (
                    BoundReport(
                        "voutier", voutier_height_floor(d, cfg.precision_bits),
                        "unconditional degree floor", False, {"d": d},
                    ),
                    None,
                )
            )
        if d >= 3:
            reports.append(
                (
                    BoundReport(
                        "dobrowolski", dobrowolski_floor(d, cfg.precision_bits),
                        "classical comparison floor", False, {"d": d},
                    ),
                    None,
                )
            )
        if rank.rho >= 1:
            for b in theorem1_bound(
                rel.delta, K.tau, d, rank.rho, rel.e, K.torsion_order_f,
                K.disc_abs, g_flag(K), cfg,
            ):
                reports.append((b, None))
        else:
            rec["note"] = "rho = 0: relative theorems inapplicable"
        if rel.is_galois and rank.rho >= 1:
            r = cfg.r
            if rank.rho >= r:
                d_alpha_e = power(a, rel.e).minpoly.degree
                for b in theorem2_bound(
                    rel.delta, K.tau, r, rank.rho, rel.e, d_alpha_e, cfg
                ):
                    reports.append((b, None))
            else:
                reports.append(
                    (
                        BoundReport(
                            "thm2", LogScalar.zero(),
                            "not applicable", False,
                            {"r": r, "rho": rank.rho},
                        ),
                        "fewer than r independent conjugates",
                    )
                )
        bounds_out = []
        verdicts = []
        for b, skip_note in reports:
            bd = bound_report_dict(b)
            if skip_note is not None:
                bd["verdict"] = "SKIP"
                bd["note"] = skip_note
            else:
                bd["verdict"] = _verdict(b, h, strict_unconditional)
            bounds_out.append(bd)
            verdicts.append(bd["verdict"])
        rec["bounds"] = bounds_out
        if any(
            v == "FAIL" and not b[0].conditional
            for v, b in zip(verdicts, reports)
        ):
            rec["verdict"] = "FAIL"
        elif any(v == "FAIL" for v in verdicts):
            rec["verdict"] = "CONDITIONAL-FAIL"
        elif any(v == "PASS" for v in verdicts):
            rec["verdict"] = "PASS"
        elif any(v == "CONDITIONAL-PASS" for v in verdicts):
            rec["verdict"] = "CONDITIONAL-PASS"
        else:
            rec["verdict"] = "SKIP"
    except RelHeightError as exc:
        rec["error"] = str(exc)
        rec["verdict"] = "ERROR"
    return rec


def summarize(records: list[dict]) -> dict:
    counts = {"PASS": 0, "CONDITIONAL-PASS": 0, "SKIP": 0, "FAIL": 0,
              "CONDITIONAL-FAIL": 0, "ERROR": 0}
    for r in records:
        v = r.get("verdict")
        if v in counts:
            counts[v] += 1
    hard_fail = counts["FAIL"] > 0 or counts["ERROR"] > 0
    return {
        "schema": SCHEMA,
        "type": "summary",
        "entries": len(records),
        "counts": counts,
        "exit_code": 2 if hard_fail else 0,
    }


# ---------------------------------------------------------------------------
# one-off bound evaluation (for the bound command / endpoint)
# ---------------------------------------------------------------------------


def evaluate_bound_request(theorem: str, params: dict, cfg: ConstantsConfig) -> list[dict]:
    if theorem == "voutier":
        d = int(params["d"])
        out = [
            BoundReport(
                "voutier", voutier_height_floor(d, cfg.precision_bits),
                "unconditional degree floor", False, {"d": d},
            )
        ]
    elif theorem == "1":
        g = (
            LogScalar.one()
            if params.get("galois_tower", True)
            else LogScalar.from_value(math.factorial(int(params["tau"])))
        )
        out = theorem1_bound(
            int(params["delta"]), int(params["tau"]),
            int(params.get("d", int(params["delta"]) * int(params["tau"]))),
            int(params["rho"]), int(params.get("e", 2)), int(params.get("f", 2)),
            int(params.get("disc_abs", 1)), g, cfg,
        )
    elif theorem in ("2", "corollary"):
        r = 1 if theorem == "corollary" else int(params.get("r", cfg.r))
        out = theorem2_bound(
            int(params["eta"]), int(params["tau"]), r, int(params["rho"]),
            int(params.get("e", 2)),
            int(params.get("d_alpha_e", int(params["eta"]) * int(params["tau"]))),
            cfg,
        )
    else:
        raise InputError(f"unknown theorem selector: {theorem}")
    return [bound_report_dict(b) for b in out]

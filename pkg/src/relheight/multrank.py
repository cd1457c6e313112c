"""Multiplicative rank of algebraic numbers, modulo roots of unity.

Discovery is numeric (LLL on a scaled log-embedding lattice); soundness
comes from verification: a candidate exponent vector is accepted only when
the corresponding product, computed exactly in a joint number field,
satisfies y**f = 1 for the field's torsion order f.  When the joint field
exceeds the degree cap, verification degrades to a high-precision numeric
check and the result is marked "numerically-supported".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath
from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from .errors import DegreeLimitError, InputError, PrecisionExhausted
from .exactpoly import IntPolynomial
from .heights import AlgebraicNumber, root_of_unity_order
from .numfield import (
    FieldElement,
    NumberField,
    _assign_boxes_to_factors,
    _compositum_poly,
    _factor_raw,
    make_field,
    rational_field,
    relative_degree,
)
from .rootcert import MAX_PRECISION, refine

EXACT = "exact"
NUMERIC = "numerically-supported"

#: Degree cap for the joint field used in exact relation verification.
#: Tighter than the general field cap: products of many conjugates make
#: exact arithmetic in larger composita far too slow for routine runs.
JOINT_DEGREE_CAP = 16


@dataclass(frozen=True)
class RelationLattice:
    """Basis (row Hermite normal form) of verified exponent relations."""

    relations: tuple[tuple[int, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.relations)


@dataclass(frozen=True)
class RankResult:
    rho: int
    lattice: RelationLattice
    status: str


# ---------------------------------------------------------------------------
# integer row Hermite normal form (small matrices)
# ---------------------------------------------------------------------------


def row_hnf(rows: list[tuple[int, ...]]) -> tuple[tuple[int, ...], ...]:
    """Nonzero rows of the row-style Hermite normal form, a canonical basis."""
    work = [list(r) for r in rows if any(r)]
    if not work:
        return ()
    ncols = len(work[0])
    out: list[list[int]] = []
    row_idx = 0
    for col in range(ncols):
        pivot = None
        for i in range(row_idx, len(work)):
            if work[i][col] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        work[row_idx], work[pivot] = work[pivot], work[row_idx]
        # clear below by gcd elimination
        for i in range(row_idx + 1, len(work)):
            while work[i][col] != 0:
                q = work[row_idx][col] // work[i][col]
                for j in range(ncols):
                    work[row_idx][j] -= q * work[i][j]
                work[row_idx], work[i] = work[i], work[row_idx]
        if work[row_idx][col] < 0:
            work[row_idx] = [-v for v in work[row_idx]]
        # reduce above
        for i in range(row_idx):
            q = work[i][col] // work[row_idx][col]
            if q:
                for j in range(ncols):
                    work[i][j] -= q * work[row_idx][j]
        row_idx += 1
    return tuple(tuple(r) for r in work[:row_idx] if any(r))


# ---------------------------------------------------------------------------
# joint exact context
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _JointContext:
    fld: NumberField
    reps: tuple[FieldElement, ...]


def _joint_context(nums: tuple[AlgebraicNumber, ...]) -> _JointContext:
    """A field containing every input, with exact coordinates for each."""
    M = rational_field()
    for a in nums:
        d = relative_degree(M, a)
        if d == 1:
            continue
        if d * M.tau > JOINT_DEGREE_CAP:
            raise DegreeLimitError("joint field exceeds the degree cap")
        M = make_field(_compositum_poly(M, a, d))
    reps = []
    for a in nums:
        if a.minpoly.degree == 1:
            reps.append(
                FieldElement.from_rational(
                    M, Fraction(-a.minpoly.coeffs[0], a.minpoly.coeffs[1])
                )
            )
            continue
        factors = [f for f, _ in _factor_raw(M, a.minpoly)]
        idx = _assign_boxes_to_factors(M, factors, (a.root,), a.minpoly)[0]
        lin = factors[idx]
        if lin.degree != 1:
            raise PrecisionExhausted("input not resolved to a linear factor")
        reps.append(-(lin.coeffs[0] * lin.coeffs[1].inverse()))
    return _JointContext(M, tuple(reps))


def _verify_exact(ctx: _JointContext, vec: tuple[int, ...]) -> bool:
    y = FieldElement.from_rational(ctx.fld, 1)
    for rep, a in zip(ctx.reps, vec):
        if a:
            y = y * rep**a
    return (y ** ctx.fld.torsion_order_f).is_one


# ---------------------------------------------------------------------------
# numeric embeddings
# ---------------------------------------------------------------------------


def _embedding_values(
    nums: tuple[AlgebraicNumber, ...],
    ctx: _JointContext | None,
    precision_bits: int,
):
    """Complex values of each input at every available embedding.

    With a joint context: all tau embeddings of the joint field (a square
    system, so relations appear at every column).  Without: the single
    chosen embedding of each input.
    """
    wp = 2 * precision_bits + 32
    with mpmath.workprec(wp):
        if ctx is not None and not ctx.fld.is_rational:
            from .rootcert import isolate_roots

            theta_boxes = isolate_roots(ctx.fld.defpoly, precision_bits).boxes
            out = []
            for rep in ctx.reps:
                row = []
                for tb in theta_boxes:
                    z = mpmath.mpc(0)
                    for c in reversed(rep.coords):
                        z = z * tb.center + mpmath.mpf(c.numerator) / mpmath.mpf(
                            c.denominator
                        )
                    row.append(z)
                out.append(row)
            return out
        if ctx is not None:
            return [
                [mpmath.mpf(r.coords[0].numerator) / mpmath.mpf(r.coords[0].denominator)]
                for r in ctx.reps
            ]
        rows = []
        for a in nums:
            box = refine(a.root, a.minpoly, precision_bits)
            rows.append([box.center])
        return rows


def log_embedding_matrix(nums, precision_bits: int = 128):
    """Rows per input, columns log|sigma_j(alpha_i)| over the joint field."""
    nums = tuple(nums)
    _validate(nums)
    ctx = _joint_context(nums)
    values = _embedding_values(nums, ctx, precision_bits)
    with mpmath.workprec(2 * precision_bits + 32):
        out = []
        for a, row in zip(nums, values):
            if root_of_unity_order(a) is not None:
                out.append([mpmath.mpf(0)] * len(row))
            else:
                out.append([mpmath.log(abs(z)) for z in row])
        return out


def _validate(nums: tuple[AlgebraicNumber, ...]):
    if not nums:
        raise InputError("empty input")
    for a in nums:
        if a.minpoly.degree == 1 and a.minpoly.coeffs[0] == 0:
            raise InputError("zero is not allowed")


# ---------------------------------------------------------------------------
# discovery
# ---------------------------------------------------------------------------


def _candidate_vectors(
    nums: tuple[AlgebraicNumber, ...],
    values,
    torsion_order: int,
    B: int,
    precision_bits: int,
) -> list[tuple[int, ...]]:
    """Short vectors from LLL on [identity | scaled logs | scaled angles]."""
    n = len(nums)
    with mpmath.workprec(2 * precision_bits + 32):
        scale = mpmath.mpf(2) ** (precision_bits // 2)
        ncols = len(values[0])
        rows = []
        for i in range(n):
            row = [0] * n
            row[i] = 1
            for z in values[i]:
                row.append(int(mpmath.nint(scale * mpmath.log(abs(z)))))
            for z in values[i]:
                row.append(
                    int(
                        mpmath.nint(
                            scale * torsion_order * mpmath.arg(z) / (2 * mpmath.pi)
                        )
                    )
                )
            rows.append(row)
        # a relation's angle column sums to scale * (integer), since the
        # product's argument is a multiple of 2*pi/torsion_order
        unit = int(scale)
        for j in range(ncols):
            aux = [0] * (n + 2 * ncols)
            aux[n + ncols + j] = unit
            rows.append(aux)
        dm = DomainMatrix([[ZZ(v) for v in r] for r in rows], (len(rows), n + 2 * ncols), ZZ)
        reduced = dm.lll().to_list()
        tol = mpmath.mpf(2) ** (-(precision_bits // 4))
        cands = []
        for r in reduced:
            vec = tuple(int(v) for v in r[:n])
            if not any(vec) or max(abs(v) for v in vec) > B:
                continue
            residual = max(
                abs(sum(a * mpmath.log(abs(values[i][j])) for i, a in enumerate(vec)))
                for j in range(ncols)
            )
            if residual < tol:
                cands.append(vec)
        return cands


def _numeric_witness_values(
    nums: tuple[AlgebraicNumber, ...], precision_bits: int
) -> tuple[int, list]:
    """(bits, high-precision root values) shared by all candidate checks."""
    bits = min(4 * precision_bits, MAX_PRECISION)
    with mpmath.workprec(2 * bits + 32):
        values = [refine(a.root, a.minpoly, bits).center for a in nums]
    return bits, values


def _verify_numeric(
    witness: tuple[int, list],
    vec: tuple[int, ...],
    torsion_guess: int,
) -> bool:
    """Heuristic check at 4x precision: product lies on the unit circle and
    its angle is a small-denominator fraction of a turn."""
    bits, values = witness
    with mpmath.workprec(2 * bits + 32):
        z = mpmath.mpc(1)
        for a, v in zip(vec, values):
            if a:
                z *= v**a
        if abs(abs(z) - 1) > mpmath.mpf(2) ** (-(bits // 2)):
            return False
        turns = mpmath.arg(z) / (2 * mpmath.pi) * torsion_guess
        return abs(turns - mpmath.nint(turns)) < mpmath.mpf(2) ** (-(bits // 2))


_AUTO = object()


def find_relations(
    nums, exponent_bound: int = 10, precision_bits: int = 128, _ctx=_AUTO
) -> tuple[RelationLattice, str]:
    """Verified relation lattice among the inputs, with its trust status."""
    nums = tuple(nums)
    _validate(nums)
    n = len(nums)
    if _ctx is _AUTO:
        try:
            ctx = _joint_context(nums)
        except DegreeLimitError:
            ctx = None
    else:
        ctx = _ctx
    status = EXACT if ctx is not None else NUMERIC
    verified: list[tuple[int, ...]] = []
    for i, a in enumerate(nums):
        if root_of_unity_order(a) is not None:
            e = [0] * n
            e[i] = 1
            verified.append(tuple(e))
    torsion = ctx.fld.torsion_order_f if ctx is not None else 2 * 3 * 4 * 5 * 7 * 8 * 9
    values = _embedding_values(nums, ctx, precision_bits)
    witness = None if ctx is not None else _numeric_witness_values(nums, precision_bits)
    for vec in _candidate_vectors(nums, values, torsion, exponent_bound, precision_bits):
        if ctx is not None:
            ok = _verify_exact(ctx, vec)
        else:
            ok = _verify_numeric(witness, vec, torsion)
        if ok:
            verified.append(vec)
    return RelationLattice(row_hnf(verified)), status


def multiplicative_rank(
    nums, exponent_bound: int = 10, precision_bits: int = 128
) -> RankResult:
    """rho = number of inputs minus the rank of the verified relation lattice.

    Status is "exact" only when discovery saturates: re-running with the
    exponent bound doubled and the precision doubled finds nothing new.
    """
    nums = tuple(nums)
    _validate(nums)
    try:
        ctx = _joint_context(nums)
    except DegreeLimitError:
        ctx = None
    first, status1 = find_relations(nums, exponent_bound, precision_bits, _ctx=ctx)
    second, status2 = find_relations(
        nums, 2 * exponent_bound, 2 * precision_bits, _ctx=ctx
    )
    saturated = first.relations == second.relations
    lattice = second if second.rank >= first.rank else first
    status = EXACT if (saturated and status1 == EXACT and status2 == EXACT) else NUMERIC
    return RankResult(rho=len(nums) - lattice.rank, lattice=lattice, status=status)


def brute_force_rank(nums, exponent_bound: int = 4) -> RankResult:
    """Exhaustive oracle: all vectors in [-B, B]^n, each verified exactly."""
    nums = tuple(nums)
    _validate(nums)
    n = len(nums)
    if n > 4 or exponent_bound > 6:
        raise InputError("brute force capped at n <= 4, B <= 6")
    ctx = _joint_context(nums)
    prec = 64
    with mpmath.workprec(2 * prec + 32):
        values = _embedding_values(nums, ctx, prec)
        logs = [[mpmath.log(abs(z)) for z in row] for row in values]
        ncols = len(logs[0])
        tol = mpmath.mpf("1e-6")
        found: list[tuple[int, ...]] = []
        B = exponent_bound
        ranges = [range(-B, B + 1)] * n

        def rec(i, vec):
            if i == n:
                if not any(vec):
                    return
                residual = max(
                    abs(sum(a * logs[k][j] for k, a in enumerate(vec)))
                    for j in range(ncols)
                )
                if residual < tol and _verify_exact(ctx, tuple(vec)):
                    found.append(tuple(vec))
                return
            for a in ranges[i]:
                rec(i + 1, vec + [a])

        rec(0, [])
    lattice = RelationLattice(row_hnf(found))
    return RankResult(rho=n - lattice.rank, lattice=lattice, status=EXACT)


def verify_relation(nums, vec: tuple[int, ...]) -> bool:
    """Re-verify a relation exactly on demand."""
    nums = tuple(nums)
    ctx = _joint_context(nums)
    return _verify_exact(ctx, tuple(vec))

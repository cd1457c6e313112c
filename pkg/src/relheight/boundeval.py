"""Explicit height lower bounds, evaluated in log-space.

Every constant is assembled exactly as in its source display, including the
piecewise small-degree branches.  Values that can dwarf floating-point
range (for instance c2(1) = 2*exp(16384)) live in LogScalar form
throughout; nothing here is ever exponentiated back unless it fits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
from mpmath import mpf

from .errors import DomainError, HypothesisViolation, InputError
from .logscalar import LogScalar

#: Euler's constant, 85 decimal digits (> 256 bits)
EULER_GAMMA_LITERAL = (
    "0.5772156649015328606065120900824024310421593359399235988057672348848"
    "677267776646709369"
)


def _gamma() -> mpf:
    return mpf(EULER_GAMMA_LITERAL)


@dataclass(frozen=True)
class ConstantsConfig:
    """Tunable inputs shared by the bound evaluators.

    c_AD is the absolute constant of the discriminant-aware height bound,
    for which no explicit value is published; the default 1.0 is a
    documented placeholder and every bound that uses it is flagged
    conditional.
    """

    eps: Fraction = Fraction(1, 2)
    c_AD: float = 1.0
    precision_bits: int = 128

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps).limit_denominator(10**12))
        if self.eps <= 0:
            raise InputError("eps must be positive")
        if self.c_AD <= 0:
            raise InputError("c_AD must be positive")
        if self.precision_bits < 32:
            raise InputError("precision_bits too small")

    @property
    def r(self) -> int:
        """Smallest integer strictly greater than 1/eps."""
        inv = 1 / self.eps
        return int(inv) + 1 if inv.denominator == 1 else math.ceil(inv)


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    value: LogScalar
    case_label: str
    conditional: bool
    params: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# elementary comparison functions
# ---------------------------------------------------------------------------


def voutier_f1(x, precision_bits: int = 128) -> LogScalar:
    """f1(x) = 2 / (x * (log 3x)^3), decreasing for x >= 1."""
    with mpmath.workprec(precision_bits):
        v = mpf(x)
        if v < 1:
            raise DomainError("f1 requires x >= 1")
        return LogScalar.from_log(
            mpmath.log(2) - mpmath.log(v) - 3 * mpmath.log(mpmath.log(3 * v))
        )


def voutier_g1(x, precision_bits: int = 128) -> LogScalar:
    """g1(x) = (1/4x) * (loglog x / log x)^3, positive for x >= 3."""
    with mpmath.workprec(precision_bits):
        v = mpf(x)
        if v < mpmath.e:
            raise DomainError("domain error: g1 needs log log x > 0")
        ll = mpmath.log(mpmath.log(v))
        if ll <= 0:
            raise DomainError("domain error: g1 needs log log x > 0")
        return LogScalar.from_log(
            3 * (mpmath.log(ll) - mpmath.log(mpmath.log(v)))
            - mpmath.log(4 * v)
        )


_CROSSING_CACHE: dict[int, mpf] = {}


def f1_g1_crossing(precision_bits: int = 128) -> mpf:
    """The unique a in (184, 185) with f1(a) = g1(a), by bisection."""
    if precision_bits in _CROSSING_CACHE:
        return _CROSSING_CACHE[precision_bits]
    with mpmath.workprec(precision_bits + 32):

        def diff(x):
            return (
                voutier_f1(x, precision_bits + 32).logmag
                - voutier_g1(x, precision_bits + 32).logmag
            )

        lo, hi = mpf(184), mpf(185)
        if not (diff(lo) > 0 > diff(hi)):
            raise DomainError("crossing bracket failed")
        for _ in range(precision_bits + 8):
            mid = (lo + hi) / 2
            if diff(mid) > 0:
                lo = mid
            else:
                hi = mid
        result = (lo + hi) / 2
    _CROSSING_CACHE[precision_bits] = result
    return result


def voutier_height_floor(d: int, precision_bits: int = 128) -> LogScalar:
    """Best of the two unconditional height floors at degree d."""
    if d < 2:
        raise DomainError("degree too small for Voutier")
    best = voutier_f1(d, precision_bits)
    if d >= 3:
        alt = voutier_g1(d, precision_bits)
        if alt > best:
            best = alt
    return best


def dobrowolski_floor(d: int, precision_bits: int = 128) -> LogScalar:
    """(1/d) log(1 + (loglog d / log d)^3 / 1200)."""
    if d < 3:
        raise DomainError("dobrowolski floor needs d >= 3")
    with mpmath.workprec(precision_bits):
        t = mpmath.log(mpmath.log(mpf(d))) / mpmath.log(mpf(d))
        return LogScalar.from_log(mpmath.log(mpmath.log(1 + t**3 / 1200) / d))


def abelian_reference(precision_bits: int = 128) -> LogScalar:
    """(log 5)/12, the abelian-case reference constant."""
    with mpmath.workprec(precision_bits):
        return LogScalar.from_log(mpmath.log(mpmath.log(mpf(5)) / 12))


def rosser_totient_floor(n: int, precision_bits: int = 128) -> mpf:
    """Lower bound for phi(n)/n: 1/(e^gamma loglog n + 3/loglog n)."""
    if n < 3:
        raise DomainError("totient floor needs n >= 3")
    with mpmath.workprec(precision_bits):
        ll = mpmath.log(mpmath.log(mpf(n)))
        return 1 / (mpmath.exp(_gamma()) * ll + 3 / ll)


def phi_constant_theta(eps, precision_bits: int = 128) -> mpf:
    """The proof's theta with 2*theta^2 = eps/(1+eps)."""
    with mpmath.workprec(precision_bits):
        e = _to_mpf(eps)
        return mpmath.sqrt(e / (2 + 2 * e) / 2)


def phi_constant_C(eps, precision_bits: int = 128) -> mpf:
    """C(eps) with phi(n)^(1+eps)/n >= C(eps) for all n >= 3."""
    with mpmath.workprec(precision_bits):
        e = _to_mpf(eps)
        if e <= 0:
            raise DomainError("eps must be positive")
        a = (mpmath.exp(2) * e / (2 + 2 * e)) ** (
            mpmath.sqrt(e / (2 + 2 * e)) + 1
        )
        num = mpmath.log(mpmath.log(mpf(3))) * a
        den = mpmath.exp(_gamma()) + mpf(3) ** (1 / (1 + e)) * a
        return (num / den) ** (1 + e)


def _to_mpf(eps) -> mpf:
    if isinstance(eps, Fraction):
        return mpf(eps.numerator) / mpf(eps.denominator)
    return mpf(eps)


# ---------------------------------------------------------------------------
# group-order ceilings
# ---------------------------------------------------------------------------

#: exceptional maximal orders of finite subgroups of GL_rho(Q)
FEIT_EXCEPTIONS = {
    2: 12,
    4: 1152,
    6: 103680,
    7: 2903040,
    8: 696729600,
    9: 1393459200,
    10: 8360755200,
}


def gl3_order(rho: int) -> int:
    """|GL_rho(Z/3Z)| = prod_{i=0}^{rho-1} (3^rho - 3^i), exact."""
    if not 1 <= rho <= 16:
        raise DomainError("rho out of range")
    p = 3**rho
    out = 1
    for i in range(rho):
        out *= p - 3**i
    return out


def n_rho(rho: int, use_feit: bool = False, precision_bits: int = 128) -> LogScalar:
    """Ceiling for the order of a finite subgroup of GL_rho(Z).

    Default: 3^(rho^2).  With use_feit: 2^rho * rho! except at the listed
    exceptional ranks; always at most (135/2) * 2^rho * rho!.
    """
    if rho < 1:
        raise DomainError("rho must be positive")
    with mpmath.workprec(precision_bits):
        if not use_feit:
            return LogScalar.from_log(rho * rho * mpmath.log(mpf(3)))
        order = FEIT_EXCEPTIONS.get(rho, 2**rho * math.factorial(rho))
        cap = 135 * 2**rho * math.factorial(rho)
        if 2 * order > cap:
            raise DomainError("table entry exceeds the universal cap")
        return LogScalar.from_value(order)


# ---------------------------------------------------------------------------
# multi-number product floors
# ---------------------------------------------------------------------------


def amoroso_viada_floor(n: int, D: int, precision_bits: int = 128) -> LogScalar:
    """Floor for h(a_1)...h(a_n): D^-1 (1050 n^5 log 3D)^(-n^2 (n+1)^2)."""
    if n < 1 or D < 1:
        raise DomainError("n and D must be positive")
    with mpmath.workprec(precision_bits):
        inner = mpmath.log(1050 * mpf(n) ** 5) + mpmath.log(mpmath.log(3 * mpf(D)))
        return LogScalar.from_log(
            -mpmath.log(mpf(D)) - n * n * (n + 1) * (n + 1) * inner
        )


def amoroso_delsinne_floor(
    D: int, delta_abs: int, g: LogScalar, cfg: ConstantsConfig
) -> BoundReport:
    """(g*Delta)^-c / D * (loglog 5D)^3 / (log 2D)^4; conditional on c."""
    if D < 1 or delta_abs < 1:
        raise DomainError("D and the discriminant must be positive")
    with mpmath.workprec(cfg.precision_bits):
        g_delta = g * LogScalar.from_value(delta_abs)
        if g_delta.sign != 1:
            raise DomainError("g * Delta must be positive")
        value = LogScalar.from_log(
            -cfg.c_AD * g_delta.logmag
            - mpmath.log(mpf(D))
            + 3 * mpmath.log(mpmath.log(mpmath.log(5 * mpf(D))))
            - 4 * mpmath.log(mpmath.log(2 * mpf(D)))
        )
    return BoundReport(
        bound_id="discriminant-aware",
        value=value,
        case_label="discriminant-aware floor",
        conditional=True,
        params={"D": D, "delta_abs": delta_abs, "c_AD": cfg.c_AD},
    )


@dataclass(frozen=True)
class DelsinneConstants:
    kappa: int
    eta: int
    mu: int
    c: LogScalar


def delsinne_constants(n: int, precision_bits: int = 128) -> DelsinneConstants:
    """kappa, eta, mu and log-space c for the n-variable product bound.

    The published mu uses a symbol m with no definition in scope; it is
    evaluated under m := n and does not feed any bound path.  The eta sum
    is empty for n < 3.
    """
    if n < 1:
        raise DomainError("n must be positive")
    base = 2 * (n + 1) ** 2 * math.factorial(n + 1)
    kappa = 3 * n * base**n
    s = sum(Fraction(1, math.factorial(i)) for i in range(0, n - 2))
    eta_frac = math.factorial(n - 1) * (s + 1) + n - 1
    assert eta_frac.denominator == 1
    eta = int(eta_frac)
    mu = 8 * math.factorial(n) * base**n
    with mpmath.workprec(precision_bits):
        logc = n * mpmath.log(2 * mpf(n) ** 2) + 64 * mpf(
            n * n * math.factorial(n)
        ) * mpf(base) ** (2 * n)
        c = LogScalar.from_log(logc)
    return DelsinneConstants(kappa=kappa, eta=eta, mu=mu, c=c)


def delsinne_product_floor(n: int, D_ab: int, precision_bits: int = 128) -> LogScalar:
    """Floor for a product of n heights: 1/(c(n) D_ab (log 3 D_ab)^kappa)."""
    if n < 1 or D_ab < 1:
        raise DomainError("n and D_ab must be positive")
    consts = delsinne_constants(n, precision_bits)
    with mpmath.workprec(precision_bits):
        return LogScalar.from_log(
            -consts.c.logmag
            - mpmath.log(mpf(D_ab))
            - consts.kappa * mpmath.log(mpmath.log(3 * mpf(D_ab)))
        )


# ---------------------------------------------------------------------------
# the two main theorems
# ---------------------------------------------------------------------------


def _phi_C(eps, e: int, f: int, precision_bits: int) -> mpf:
    """C(eps), replaced by 1/2 when e/f is exactly 1 or 2."""
    if f > 0 and e % f == 0 and e // f in (1, 2):
        return mpf(1) / 2
    return phi_constant_C(eps, precision_bits)


def _case_a_constant(d: int, x: mpf, precision_bits: int) -> tuple[LogScalar, str]:
    """The piecewise small-relative-degree constant on d and x = tau/eps."""
    if d == 1:
        with mpmath.workprec(precision_bits):
            return LogScalar.from_log(mpmath.log(mpmath.log(mpf(2)))), "d=1: log 2"
    if d == 2:
        return voutier_f1(2, precision_bits), "d=2: f1(2)"
    a = f1_g1_crossing(precision_bits)
    if 3 <= d <= 6:
        if x < 6:
            return voutier_f1(6, precision_bits), "3<=d<=6, x<6: f1(6)"
        return voutier_f1(x, precision_bits), "3<=d<=6, x>=6: f1(x)"
    if x <= a:
        return voutier_f1(x, precision_bits), "d>=7, x<=a: f1(x)"
    return voutier_g1(x, precision_bits), "d>=7, x>=a: g1(x)"


def theorem1_bound(
    delta: int,
    tau: int,
    d: int,
    rho: int,
    e: int,
    f: int,
    disc_abs: int,
    g: LogScalar,
    cfg: ConstantsConfig,
) -> list[BoundReport]:
    """Per-case lower bounds for h(alpha) in terms of the relative degree.

    delta = [K(alpha):K], tau = [K:Q], d = [Q(alpha):Q], rho = number of
    multiplicatively independent conjugates over K, e/f = torsion orders
    of K(alpha)/K, disc_abs = |disc K|, g = the Galois-tower factor.
    """
    if delta < 1 or tau < 1 or rho < 0:
        raise InputError("invalid field data")
    if rho == 0:
        raise HypothesisViolation("theorem inapplicable")
    eps = cfg.eps
    prec = cfg.precision_bits
    r = cfg.r
    params = {
        "eps": str(eps), "r": r, "tau": tau, "delta": delta, "d": d,
        "rho": rho, "e": e, "f": f, "disc_abs": disc_abs, "c_AD": cfg.c_AD,
    }
    reports: list[BoundReport] = []
    with mpmath.workprec(prec):
        ev = _to_mpf(eps)
        if r > delta:
            value, label = _case_a_constant(d, mpf(tau) / ev, prec)
            reports.append(
                BoundReport("thm1-case-a", value, f"case A ({label})", False, params)
            )
            return reports
        delta_pow = LogScalar.from_log(-2 * ev * mpmath.log(mpf(delta)))
        if rho >= r:
            inv = 1 / ev
            inner = (
                mpmath.log(mpf(1050)) - 1 - mpmath.log(ev)
                + 6 * mpmath.log(1 + inv) + 2 * mpmath.log(2 + inv)
            )
            c2 = LogScalar.from_log(
                -2 * ev * mpmath.log(mpf(tau))
                - ev * mpmath.log(mpf(3))
                - (1 + inv) * (2 + inv) ** 2 * inner
            )
            reports.append(
                BoundReport(
                    "thm1-case-b", c2 * delta_pow, "case B (rho >= r)", False, params
                )
            )
        if rho <= r - 1:
            c_eps = _phi_C(eps, e, f, prec)
            g_delta = g * LogScalar.from_value(disc_abs)
            if g_delta.sign != 1:
                raise InputError("g * disc must be positive")
            head = -cfg.c_AD * g_delta.logmag + 2 * mpmath.log(c_eps) - mpmath.log(mpf(4))
            tail = mpmath.log(mpf(f)) + (1 + ev) * mpmath.log(mpf(tau))
            c3 = LogScalar.from_log(
                head - 2 * ((1 / ev) ** 2 * mpmath.log(mpf(3)) + tail)
            )
            n_r = n_rho(rho, precision_bits=prec)
            c5 = LogScalar.from_log(head - 2 * (n_r.logmag + tail))
            c4 = LogScalar.from_log(n_r.logmag + tail - mpmath.log(c_eps))
            reports.append(
                BoundReport(
                    "thm1-case-c", c3 * delta_pow, "case C (rho <= r-1)", True, params
                )
            )
            reports.append(
                BoundReport(
                    "thm1-case-c5", c5 * delta_pow,
                    "case C intermediate (group-order form)", True, params,
                )
            )
            reports.append(
                BoundReport(
                    "thm1-c4", c4,
                    "case C degree-bound constant (not a height floor)",
                    False, params,
                )
            )
    return reports


def _small_degree_factor(
    d_alpha_e: int, nr_tau: mpf, precision_bits: int
) -> tuple[LogScalar, str]:
    """The height floor for alpha^e feeding the rho = r case."""
    if d_alpha_e == 1:
        with mpmath.workprec(precision_bits):
            return LogScalar.from_log(mpmath.log(mpmath.log(mpf(2)))), "d=1: log 2"
    if d_alpha_e == 2:
        return voutier_f1(2, precision_bits), "d=2: f1(2)"
    if 3 <= d_alpha_e <= 6:
        x = nr_tau if nr_tau >= 6 else mpf(6)
        return voutier_f1(x, precision_bits), "3<=d<=6: f1"
    if nr_tau <= 184:
        return voutier_f1(nr_tau, precision_bits), "d>=7, small degree: f1"
    return voutier_g1(nr_tau, precision_bits), "d>=7: g1"


def theorem2_bound(
    eta: int,
    tau: int,
    r: int,
    rho: int,
    e_val: int,
    d_alpha_e: int,
    cfg: ConstantsConfig,
) -> list[BoundReport]:
    """Per-case lower bounds for h(alpha) in terms of the Galois closure.

    eta = [F:K] for the Galois closure F of K(alpha)/K, tau = [K:Q],
    r = the target number of independent conjugates, rho = the actual
    number, e_val = torsion order of F, d_alpha_e = [Q(alpha^e):Q].
    """
    if eta < 1 or r < 1 or tau < 1:
        raise InputError("invalid field data")
    if rho < r:
        raise HypothesisViolation(
            "hypothesis violated: fewer than r independent conjugates"
        )
    eps = cfg.eps
    prec = cfg.precision_bits
    params = {
        "eps": str(eps), "r": r, "tau": tau, "eta": eta, "rho": rho,
        "e": e_val, "d_alpha_e": d_alpha_e,
    }
    reports: list[BoundReport] = []
    with mpmath.workprec(prec):
        ev = _to_mpf(eps)
        exponent = -mpf(1) / (r + 1) - ev
        eta_pow = LogScalar.from_log(exponent * mpmath.log(mpf(eta)))
        if rho > r:
            inner = (
                mpmath.log(mpf(1050 * (r + 1) ** 6 * (r + 2) ** 2))
                - mpmath.log(ev) - 1
            )
            c1 = LogScalar.from_log(
                -ev * mpmath.log(mpf(3))
                - (r + 1) * (r + 2) ** 2 * inner
                + exponent * mpmath.log(mpf(tau))
            )
            value = c1 * eta_pow
            reports.append(
                BoundReport("thm2-case-1", value, "case 1 (rho > r)", False, params)
            )
        else:  # rho == r
            base = 2 * (r + 1) ** 2 * math.factorial(r + 1)
            kappa2 = 3 * r * base**r
            logc2 = r * mpmath.log(2 * mpf(r) ** 2) + 64 * mpf(
                r * r * math.factorial(r)
            ) * mpf(base) ** (2 * r)
            n_r = n_rho(r, precision_bits=prec)
            nr_tau = mpmath.exp(n_r.logmag) * tau if n_r.logmag < 700 else mpmath.inf
            v, branch = _small_degree_factor(d_alpha_e, nr_tau, prec)
            c_eps = phi_constant_C(eps, prec)
            logc3 = (
                v.logmag
                - kappa2 * (mpmath.log(mpf(kappa2)) - mpmath.log(ev) - 1)
                + mpmath.log(c_eps)
                - logc2
                - ev * mpmath.log(mpf(3))
                - (1 + ev) * mpmath.log(mpf(tau))
            )
            value = LogScalar.from_log(logc3 / (r + 1)) * eta_pow
            reports.append(
                BoundReport(
                    "thm2-case-2", value, f"case 2 (rho = r; {branch})", False, params
                )
            )
        if r == 1:
            reports.append(
                BoundReport(
                    "corollary-r1", value,
                    "corollary instance (r = 1, exponent -1/2 - eps)",
                    reports[-1].conditional, params,
                )
            )
    return reports


def best_bound(
    reports: list[BoundReport], require_unconditional: bool = True
) -> BoundReport:
    """The largest applicable bound; conditional ones only on request."""
    if not reports:
        raise InputError("no reports")
    pool = [b for b in reports if not b.conditional] if require_unconditional else reports
    if not pool:
        raise DomainError("no unconditional bound")
    return max(pool, key=lambda b: b.value)

"""Independent straight-line reimplementations of the bound displays.

Used as differential oracles: these transcribe the published formulas
directly (building the inner products as numbers where they fit, rather
than term by term in log space) so that agreement with the library is a
meaningful check and not a tautology.
"""

import math
from fractions import Fraction

import mpmath
from mpmath import mpf

def euler_gamma() -> mpf:
    # mpmath's built-in constant, evaluated at the ambient precision;
    # independent of the decimal literal used by the library
    return +mpmath.euler


def r_of_eps(eps: Fraction) -> int:
    inv = 1 / eps
    return int(inv) + 1 if inv.denominator == 1 else math.ceil(inv)


def log_f1(x) -> mpf:
    return mpmath.log(2 / (mpf(x) * mpmath.log(3 * mpf(x)) ** 3))


def log_g1(x) -> mpf:
    x = mpf(x)
    return mpmath.log(
        (mpmath.log(mpmath.log(x)) / mpmath.log(x)) ** 3 / (4 * x)
    )


def crossing(prec: int = 192) -> mpf:
    """Root of f1 - g1 in (184, 185) by plain bisection."""
    with mpmath.workprec(prec):
        lo, hi = mpf(184), mpf(185)
        for _ in range(prec):
            mid = (lo + hi) / 2
            if log_f1(mid) > log_g1(mid):
                lo = mid
            else:
                hi = mid
        return (lo + hi) / 2


def big_c_eps(eps) -> mpf:
    e = mpf(eps.numerator) / eps.denominator if isinstance(eps, Fraction) else mpf(eps)
    a = (mpmath.e**2 * e / (2 * (1 + e))) ** (mpmath.sqrt(e / (2 * (1 + e))) + 1)
    return (
        mpmath.log(mpmath.log(3)) * a / (mpmath.e ** euler_gamma() + 3 ** (1 / (1 + e)) * a)
    ) ** (1 + e)


def straight_theorem1(delta, tau, d, rho, e, f, disc_abs, g_log, eps, c_ad, prec=192):
    """Returns {bound_id: logmag} for the applicable cases."""
    out = {}
    with mpmath.workprec(prec):
        ev = mpf(eps.numerator) / eps.denominator
        r = r_of_eps(eps)
        if r > delta:
            x = tau / ev
            if d == 1:
                out["thm1-case-a"] = mpmath.log(mpmath.log(2))
            elif d == 2:
                out["thm1-case-a"] = log_f1(2)
            elif 3 <= d <= 6:
                out["thm1-case-a"] = log_f1(6) if x < 6 else log_f1(x)
            else:
                a = crossing(prec)
                out["thm1-case-a"] = log_f1(x) if x <= a else log_g1(x)
            return out
        shift = -2 * ev * mpmath.log(mpf(delta))
        if rho >= r:
            big = (
                mpf(1050)
                / (ev * mpmath.e)
                * (1 + 1 / ev) ** 6
                * (2 + 1 / ev) ** 2
            )
            log_c2 = (
                -2 * ev * mpmath.log(mpf(tau))
                - ev * mpmath.log(3)
                - (1 + 1 / ev) * (2 + 1 / ev) ** 2 * mpmath.log(big)
            )
            out["thm1-case-b"] = log_c2 + shift
        if rho <= r - 1:
            c_eps = (
                mpf(1) / 2
                if (f > 0 and e % f == 0 and e // f in (1, 2))
                else big_c_eps(eps)
            )
            log_gd = g_log + mpmath.log(mpf(disc_abs))
            log_f_tau = mpmath.log(mpf(f) * mpf(tau) ** (1 + ev))
            log_n3 = (1 / ev) ** 2 * mpmath.log(3)
            out["thm1-case-c"] = (
                -c_ad * log_gd
                + 2 * mpmath.log(c_eps)
                - mpmath.log(4)
                - 2 * (log_n3 + log_f_tau)
                + shift
            )
            log_nr = rho * rho * mpmath.log(3)
            out["thm1-case-c5"] = (
                -c_ad * log_gd
                + 2 * mpmath.log(c_eps)
                - mpmath.log(4)
                - 2 * (log_nr + log_f_tau)
                + shift
            )
            out["thm1-c4"] = log_nr + log_f_tau - mpmath.log(c_eps)
    return out


def straight_theorem2(eta, tau, r, rho, e_val, d_alpha_e, eps, prec=192):
    """Returns {bound_id: logmag} for the applicable case."""
    out = {}
    with mpmath.workprec(prec):
        ev = mpf(eps.numerator) / eps.denominator
        expo = -mpf(1) / (r + 1) - ev
        shift = expo * mpmath.log(mpf(eta))
        if rho > r:
            big = mpf(1050 * (r + 1) ** 6 * (r + 2) ** 2) / (ev * mpmath.e)
            log_c1 = (
                -ev * mpmath.log(3)
                - (r + 1) * (r + 2) ** 2 * mpmath.log(big)
                + expo * mpmath.log(mpf(tau))
            )
            out["thm2-case-1"] = log_c1 + shift
        elif rho == r:
            base = 2 * (r + 1) ** 2 * math.factorial(r + 1)
            kappa2 = 3 * r * base**r
            log_c2 = r * mpmath.log(2 * mpf(r) ** 2) + 64 * mpf(
                r**2 * math.factorial(r)
            ) * mpf(base) ** (2 * r)
            n_r = mpf(3) ** (r * r)
            ntau = n_r * tau
            if d_alpha_e == 1:
                log_v = mpmath.log(mpmath.log(2))
            elif d_alpha_e == 2:
                log_v = log_f1(2)
            elif 3 <= d_alpha_e <= 6:
                log_v = log_f1(max(ntau, mpf(6)))
            elif ntau <= 184:
                log_v = log_f1(ntau)
            else:
                log_v = log_g1(ntau)
            log_c3 = (
                log_v
                - kappa2 * mpmath.log(mpf(kappa2) / (ev * mpmath.e))
                + mpmath.log(big_c_eps(eps))
                - log_c2
                - ev * mpmath.log(3)
                - (1 + ev) * mpmath.log(mpf(tau))
            )
            out["thm2-case-2"] = log_c3 / (r + 1) + shift
        if r == 1 and out:
            out["corollary-r1"] = next(iter(out.values()))
    return out

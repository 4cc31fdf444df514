"""Asymptotic RIC bounds in the proportional-growth regime.

Solves the implicit root equations for the extreme-eigenvalue levels
lambda^max and lambda^min, optimizes the group-size ratio gamma, and
assembles the three bound families:

  BT   gamma-optimized upper and lower bounds,
  BCT  gamma = rho, with the upper bound tightened by a sparsity-relaxation
       minimum over nu in [rho, 1],
  CT   closed forms built from concentration of the extreme singular values.

Also computes the l1-recovery phase-transition curve implied by the
max(L, U) < sqrt(2) - 1 sufficient condition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, SolverError
from .rates import (
    ProblemShape,
    _net_max_raw,
    _net_min_log_lambda,
    shannon_entropy,
)

__all__ = [
    "AsymptoticBound",
    "solve_lambda_max",
    "solve_lambda_min",
    "optimize_gamma_for_max",
    "optimize_gamma_for_min",
    "golden_section",
    "bt_bounds",
    "bct_bounds",
    "ct_bounds",
    "compute_bounds",
    "l1_phase_transition",
    "FAMILIES",
]

FAMILIES = ("BT", "BCT", "CT")

L1_THRESHOLD = math.sqrt(2.0) - 1.0

# Root residual target for the implicit lambda equations.
RESIDUAL_TOL = 1e-12
# Relative width target for gamma / nu location searches.
GAMMA_TOL = 1e-10

_LAMBDA_CEILING = 1e9
# ln(lambda^min) scales like -c/(1-gamma) near gamma = 1, so the bracket
# floor has to sit far below anything float-representable as lambda itself.
_LOG_FLOOR = -1e12


@dataclass(frozen=True)
class AsymptoticBound:
    """One bound family evaluated at a single (delta, rho) point.

    Naming convention: gamma_min is the gamma that minimizes lambda^max
    (it tightens the upper bound U) and gamma_max is the gamma that
    maximizes lambda^min (it tightens the lower bound L).

    lambda_min can underflow to 0.0 in double precision for extreme
    (delta, rho); log_lambda_min stays finite and is the value to use when
    comparing lower bounds between families.  gamma_* are None for CT
    (no grouping parameter) and nu_opt is only set for BCT.
    boundary_upper / boundary_lower flag gamma optima pinned at the
    feasible-interval edge, where the stationarity condition does not apply.
    """

    family: str
    delta: float
    rho: float
    L: float
    U: float
    lambda_min: float
    lambda_max: float
    log_lambda_min: float
    gamma_min: float | None = None
    gamma_max: float | None = None
    nu_opt: float | None = None
    boundary_upper: bool = False
    boundary_lower: bool = False


def _validate_point(delta: float, rho: float) -> None:
    if not (0.0 < delta < 1.0):
        raise DomainError(f"delta must be in (0,1), got {delta}")
    if not (0.0 < rho < 1.0):
        raise DomainError(f"rho must be in (0,1), got {rho}")


def solve_lambda_max(delta: float, rho: float, gamma: float) -> float:
    """Root lambda >= 1 + gamma of the net upper-tail exponent.

    The exponent is positive at lambda = 1 + gamma and strictly decreasing
    beyond it, so the root is bracketed by doubling and pinned by bisection.
    """
    _validate_point(delta, rho)
    if not (rho <= gamma <= 1.0 / delta):
        raise DomainError(f"gamma={gamma} outside [rho, 1/delta]")

    lo = 1.0 + gamma
    f_lo = _net_max_raw(lo, delta, rho, gamma)
    if f_lo < 0.0:
        raise SolverError(
            f"net exponent negative at lambda=1+gamma for "
            f"(delta={delta}, rho={rho}, gamma={gamma})"
        )
    hi = 2.0 * lo
    while _net_max_raw(hi, delta, rho, gamma) > 0.0:
        hi *= 2.0
        if hi > _LAMBDA_CEILING:
            raise SolverError(f"lambda^max bracket exceeded {_LAMBDA_CEILING:g}")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _net_max_raw(mid, delta, rho, gamma) > 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-15 * hi:
            break
    root = 0.5 * (lo + hi)
    if abs(_net_max_raw(root, delta, rho, gamma)) > RESIDUAL_TOL:
        raise SolverError(
            f"lambda^max residual above {RESIDUAL_TOL:g} at "
            f"(delta={delta}, rho={rho}, gamma={gamma})"
        )
    return root


def solve_lambda_min(delta: float, rho: float, gamma: float) -> float:
    """Log of the root lambda <= 1 - gamma of the net lower-tail exponent.

    Returned as ln(lambda): the root itself underflows double precision for
    extreme (delta, rho).  The exponent is increasing on (0, 1 - gamma),
    negative near 0 and positive at 1 - gamma, so bisection runs on
    ln(lambda).
    """
    _validate_point(delta, rho)
    if not (rho <= gamma < 1.0):
        raise DomainError(f"gamma={gamma} outside [rho, 1) for the lower bound")

    hi = math.log1p(-gamma)
    if _net_min_log_lambda(hi, delta, rho, gamma) < 0.0:
        raise SolverError(
            f"net exponent negative at lambda=1-gamma for "
            f"(delta={delta}, rho={rho}, gamma={gamma})"
        )
    step = 2.0
    lo = hi - step
    while _net_min_log_lambda(lo, delta, rho, gamma) > 0.0:
        step *= 2.0
        lo = hi - step
        if lo < _LOG_FLOOR:
            raise SolverError("lambda^min bracket ran past the log floor")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid == lo or mid == hi:
            break
        if _net_min_log_lambda(mid, delta, rho, gamma) > 0.0:
            hi = mid
        else:
            lo = mid
        if hi - lo <= 1e-13:
            break
    root = 0.5 * (lo + hi)
    if abs(_net_min_log_lambda(root, delta, rho, gamma)) > RESIDUAL_TOL:
        raise SolverError(
            f"lambda^min residual above {RESIDUAL_TOL:g} at "
            f"(delta={delta}, rho={rho}, gamma={gamma})"
        )
    return root


def _stationarity_max(delta: float, rho: float, log_offset: float) -> float:
    """Sign of the first-order condition lambda^max (gamma-rho)^2 = gamma^3.

    log_offset = ln(gamma - rho).  Evaluated in log form so offsets down to
    ~1e-300 resolve; for those the offset itself vanishes in gamma = rho +
    offset (below one ulp of rho), which is exactly why ln(gamma - rho)
    cannot be recomputed and is carried explicitly instead.
    """
    gamma = min(rho + math.exp(log_offset), 1.0 / delta)
    lam = solve_lambda_max(delta, rho, gamma)
    return math.log(lam) + 2.0 * log_offset - 3.0 * math.log(gamma)


def _stationarity_min(delta: float, rho: float, log_offset: float) -> float:
    """Sign of the condition gamma^3 lambda^min = (1-gamma)^2 (gamma-rho)^2."""
    gamma = rho + math.exp(log_offset)
    log_lam = solve_lambda_min(delta, rho, gamma)
    return (
        3.0 * math.log(gamma)
        + log_lam
        - 2.0 * math.log1p(-gamma)
        - 2.0 * log_offset
    )


def _bisect_log_offset(sign_fn, rho: float, u_hi: float, positive_at_hi: bool) -> float:
    """Bisection of a monotone sign function over u = ln(gamma - rho).

    The optimal gamma can sit within 1e-34 of rho, far below what a direct
    search on gamma resolves, so the offset is searched on a log scale.
    positive_at_hi states which sign the function takes at u_hi.
    """
    u_lo = -690.0
    if (sign_fn(u_lo) > 0.0) == positive_at_hi:
        raise SolverError("stationarity condition has no sign change in gamma")
    for _ in range(200):
        mid = 0.5 * (u_lo + u_hi)
        if (sign_fn(mid) > 0.0) == positive_at_hi:
            u_hi = mid
        else:
            u_lo = mid
        if u_hi - u_lo <= GAMMA_TOL * 1e-2:
            break
    return rho + math.exp(0.5 * (u_lo + u_hi))


def optimize_gamma_for_max(delta: float, rho: float) -> tuple[float, float, bool]:
    """Minimizing gamma for the upper bound over [rho, 1/delta].

    Returns (gamma, lambda_max, at_boundary).  The interior optimum solves
    lambda^max (gamma-rho)^2 = gamma^3; when that condition stays negative
    up to gamma = 1/delta the minimum sits on the boundary.
    """
    _validate_point(delta, rho)
    g_hi = 1.0 / delta
    u_hi = math.log(g_hi - rho)
    if _stationarity_max(delta, rho, u_hi) < 0.0:
        return g_hi, solve_lambda_max(delta, rho, g_hi), True
    gamma = _bisect_log_offset(
        lambda u: _stationarity_max(delta, rho, u),
        rho,
        u_hi,
        positive_at_hi=True,
    )
    return gamma, solve_lambda_max(delta, rho, gamma), False


def optimize_gamma_for_min(delta: float, rho: float) -> tuple[float, float, bool]:
    """Minimizing gamma for the lower bound over [rho, 1).

    Returns (gamma, log_lambda_min, at_boundary).  The interior optimum
    solves gamma^3 lambda^min = (1-gamma)^2 (gamma-rho)^2; the open right
    end of the interval is approached through a fixed guard.
    """
    _validate_point(delta, rho)
    g_cap = min(1.0, 1.0 / delta) - 1e-9
    if g_cap <= rho:
        return rho, solve_lambda_min(delta, rho, rho), True
    u_cap = math.log(g_cap - rho)
    if _stationarity_min(delta, rho, u_cap) > 0.0:
        return g_cap, solve_lambda_min(delta, rho, g_cap), True
    gamma = _bisect_log_offset(
        lambda u: _stationarity_min(delta, rho, u),
        rho,
        u_cap,
        positive_at_hi=False,
    )
    return gamma, solve_lambda_min(delta, rho, gamma), False


_INV_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def golden_section(fn, lo: float, hi: float, tol: float = GAMMA_TOL) -> tuple[float, float]:
    """Golden-section minimum of a unimodal function on [lo, hi].

    Returns (argmin, min value).
    """
    if not lo < hi:
        raise DomainError(f"empty search interval [{lo}, {hi}]")
    a, b = lo, hi
    x1 = b - _INV_GOLDEN * (b - a)
    x2 = a + _INV_GOLDEN * (b - a)
    f1, f2 = fn(x1), fn(x2)
    while b - a > tol * max(1.0, abs(a)):
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INV_GOLDEN * (b - a)
            f1 = fn(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INV_GOLDEN * (b - a)
            f2 = fn(x2)
    x = 0.5 * (a + b)
    return x, fn(x)


def bt_bounds(delta: float, rho: float) -> AsymptoticBound:
    """Gamma-optimized upper and lower bounds at one (delta, rho) point."""
    g_min, lam_max, b_up = optimize_gamma_for_max(delta, rho)
    g_max, log_lam_min, b_lo = optimize_gamma_for_min(delta, rho)
    lam_min = math.exp(log_lam_min)
    return AsymptoticBound(
        family="BT",
        delta=delta,
        rho=rho,
        L=1.0 - lam_min,
        U=lam_max - 1.0,
        lambda_min=lam_min,
        lambda_max=lam_max,
        log_lambda_min=log_lam_min,
        gamma_min=g_min,
        gamma_max=g_max,
        boundary_upper=b_up,
        boundary_lower=b_lo,
    )


def bct_bounds(delta: float, rho: float) -> AsymptoticBound:
    """gamma = rho bounds, upper side tightened over relaxed sparsity.

    The upper bound of this family is min over nu in [rho, 1] of
    lambda^max(delta, nu; nu) - 1: a bound valid at sparsity nu >= rho also
    covers sparsity rho.  The minimum is located by a coarse scan followed
    by golden section on the bracketing subinterval.
    """
    _validate_point(delta, rho)
    log_lam_min = solve_lambda_min(delta, rho, rho)
    lam_min = math.exp(log_lam_min)

    def upper(nu: float) -> float:
        return solve_lambda_max(delta, nu, nu)

    # The right end stays a hair inside rho < 1, where the exponent solver
    # is defined; the bound there is continuous in nu.
    nu_top = 1.0 - 1e-12
    pts = [rho + (nu_top - rho) * i / 32.0 for i in range(33)]
    vals = [upper(p) for p in pts]
    i = vals.index(min(vals))
    lo = pts[max(i - 1, 0)]
    hi = pts[min(i + 1, 32)]
    if lo < hi:
        nu_opt, lam_max = golden_section(upper, lo, hi)
    else:
        nu_opt, lam_max = pts[i], vals[i]
    # Endpoint guard: the scan grid's edge values compete with the refined
    # interior candidate when the minimum sits at rho or 1.
    for cand, val in ((pts[0], vals[0]), (pts[-1], vals[-1])):
        if val < lam_max:
            nu_opt, lam_max = cand, val
    return AsymptoticBound(
        family="BCT",
        delta=delta,
        rho=rho,
        L=1.0 - lam_min,
        U=lam_max - 1.0,
        lambda_min=lam_min,
        lambda_max=lam_max,
        log_lambda_min=log_lam_min,
        gamma_min=rho,
        gamma_max=rho,
        nu_opt=nu_opt,
    )


def ct_bounds(delta: float, rho: float) -> AsymptoticBound:
    """Closed-form bounds from extreme singular value concentration."""
    _validate_point(delta, rho)
    spread = math.sqrt(2.0 / delta * shannon_entropy(delta * rho))
    lam_max = (1.0 + math.sqrt(rho) + spread) ** 2
    edge = 1.0 - math.sqrt(rho) - spread
    lam_min = max(0.0, edge) ** 2
    return AsymptoticBound(
        family="CT",
        delta=delta,
        rho=rho,
        L=1.0 - lam_min,
        U=lam_max - 1.0,
        lambda_min=lam_min,
        lambda_max=lam_max,
        log_lambda_min=math.log(lam_min) if lam_min > 0.0 else -math.inf,
    )


def compute_bounds(family: str, delta: float, rho: float) -> AsymptoticBound:
    """Dispatch one (delta, rho) point to the named bound family."""
    if family == "BT":
        return bt_bounds(delta, rho)
    if family == "BCT":
        return bct_bounds(delta, rho)
    if family == "CT":
        return ct_bounds(delta, rho)
    raise DomainError(f"unknown bound family {family!r}; expected one of {FAMILIES}")


def l1_phase_transition(delta: float, family: str = "BT") -> float:
    """Largest rho where max(L, U) < sqrt(2) - 1 under the given family.

    Bisection to 1e-8 absolute in rho.  Monotone feasibility in rho is
    assumed for the search and spot-checked at fractions of the returned
    value.  Returns 0.0 when even the smallest probed rho fails the
    condition.
    """
    _validate_point(delta, 0.5)

    def feasible(rho: float) -> bool:
        b = compute_bounds(family, delta, rho)
        return max(b.L, b.U) < L1_THRESHOLD

    lo = 1e-7
    if not feasible(lo):
        return 0.0
    hi = 2e-3
    while feasible(hi):
        lo = hi
        hi *= 2.0
        if hi >= 1.0:
            hi = 1.0 - 1e-12
            if feasible(hi):
                return hi
            break
    while hi - lo > 1e-8:
        mid = 0.5 * (lo + hi)
        if feasible(mid):
            lo = mid
        else:
            hi = mid
    rho_star = lo
    for frac in (0.25, 0.5, 0.9):
        if not feasible(frac * rho_star):
            raise SolverError(
                f"feasibility not monotone below rho*={rho_star} at delta={delta}"
            )
    return rho_star

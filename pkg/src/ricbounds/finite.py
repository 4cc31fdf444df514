"""Finite-size tail probability bounds for the RIC of Gaussian matrices.

Combines the extreme-eigenvalue density bounds of the Wishart ensemble
with a union bound over support sets to bound, for a concrete (k, n, N)
and slack epsilon, the probability that the observed RIC exceeds the
asymptotic bound value plus epsilon.

Everything is carried in natural-log space with one final exponentiation;
several quantities here (the covering failure term, the lower-tail
eigenvalue level) underflow double precision in linear form.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .asymptotic import (
    optimize_gamma_for_max,
    optimize_gamma_for_min,
)
from .errors import DomainError
from .rates import _net_max_raw, _net_min_log_lambda

__all__ = [
    "FiniteInstance",
    "TailBound",
    "g_max_pdf_bound",
    "g_min_pdf_bound",
    "log_g_max_pdf_bound",
    "log_g_min_pdf_bound",
    "covering_failure_bound",
    "log_covering_failure_bound",
    "tail_prob_upper",
    "tail_prob_lower",
]

_LOG_54_CUBED = 3.0 * math.log(1.25)


@dataclass(frozen=True)
class FiniteInstance:
    """A concrete problem size (k, n, N) with tail slack epsilon."""

    k: int
    n: int
    N: int
    epsilon: float

    def __post_init__(self):
        if not (0 < self.k < self.n < self.N):
            raise DomainError(f"require 0 < k < n < N, got ({self.k}, {self.n}, {self.N})")
        if self.epsilon <= 0.0:
            raise DomainError(f"epsilon must be positive, got {self.epsilon}")

    @property
    def delta_n(self) -> float:
        return self.n / self.N

    @property
    def rho_n(self) -> float:
        return self.k / self.n


@dataclass(frozen=True)
class TailBound:
    """One evaluated tail probability bound.

    total is the final probability, clamped to [0, 1]; log_total is the
    unclamped log value.  eig_term / cover_term are the two summands in
    linear form (exponentiated from their log fields, 0.0 on underflow).
    psi_derivative is the coefficient multiplying n*epsilon in the slack
    exponent; it is negative for both tails, so total decreases in epsilon.
    log_prefactor_proof and log_prefactor_stated carry the two published
    variants of the polynomial prefactor (they differ by gamma^(1/2) on
    the upper tail and coincide on the lower); the proof-derived form is
    the one used in eig_term.
    """

    side: str
    instance: FiniteInstance
    lambda_star: float
    log_lambda_star: float
    gamma_used: float
    psi_derivative: float
    log_prefactor_proof: float
    log_prefactor_stated: float
    log_eig_term: float
    log_cover_term: float
    log_total: float

    @property
    def eig_term(self) -> float:
        return math.exp(self.log_eig_term) if self.log_eig_term > -745.0 else 0.0

    @property
    def cover_term(self) -> float:
        return math.exp(self.log_cover_term) if self.log_cover_term > -745.0 else 0.0

    @property
    def total(self) -> float:
        log_t = min(self.log_total, 0.0)
        return math.exp(log_t) if log_t > -745.0 else 0.0


def log_g_max_pdf_bound(m: int, n: int, lam: float) -> float:
    """Log of the largest-eigenvalue density bound of an n x m Wishart-type
    Gram matrix with variance-1/n Gaussian entries:

      (2 pi)^(1/2) (n lam)^(-3/2) (n lam / 2)^((n+m)/2)
        / (Gamma(m/2) Gamma(n/2)) * exp(-n lam / 2).
    """
    if m < 1 or n < 1:
        raise DomainError(f"m and n must be >= 1, got ({m}, {n})")
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam}")
    nl = n * lam
    return (
        0.5 * math.log(2.0 * math.pi)
        - 1.5 * math.log(nl)
        + 0.5 * (n + m) * math.log(0.5 * nl)
        - math.lgamma(0.5 * m)
        - math.lgamma(0.5 * n)
        - 0.5 * nl
    )


def g_max_pdf_bound(m: int, n: int, lam: float) -> float:
    return math.exp(log_g_max_pdf_bound(m, n, lam))


def log_g_min_pdf_bound(m: int, n: int, lam: float) -> float:
    """Log of the smallest-eigenvalue density bound:

      (pi / (2 n lam))^(1/2) (n lam / 2)^((n-m)/2)
        * Gamma((n+1)/2) / (Gamma(m/2) Gamma((n-m+1)/2) Gamma((n-m+2)/2))
        * exp(-n lam / 2).
    """
    if not 1 <= m <= n:
        raise DomainError(f"require 1 <= m <= n, got ({m}, {n})")
    if lam <= 0.0:
        raise DomainError(f"lambda must be positive, got {lam}")
    nl = n * lam
    return (
        0.5 * math.log(math.pi / (2.0 * nl))
        + 0.5 * (n - m) * math.log(0.5 * nl)
        + math.lgamma(0.5 * (n + 1))
        - math.lgamma(0.5 * m)
        - math.lgamma(0.5 * (n - m + 1))
        - math.lgamma(0.5 * (n - m + 2))
        - 0.5 * nl
    )


def g_min_pdf_bound(m: int, n: int, lam: float) -> float:
    return math.exp(log_g_min_pdf_bound(m, n, lam))


def log_covering_failure_bound(k: int, N: int) -> float:
    """Log of (5/4) (2 pi k (1 - k/N))^(-1/2) exp(-N (1 - ln 2)).

    This is the probability that the random grouping scheme behind the
    union bound fails to cover some support set.  It underflows linear
    doubles for N beyond ~2500.
    """
    if not 0 < k < N:
        raise DomainError(f"require 0 < k < N, got ({k}, {N})")
    return (
        math.log(1.25)
        - 0.5 * math.log(2.0 * math.pi * k * (1.0 - k / N))
        - N * (1.0 - math.log(2.0))
    )


def covering_failure_bound(k: int, N: int) -> float:
    log_v = log_covering_failure_bound(k, N)
    return math.exp(log_v) if log_v > -745.0 else 0.0


def _sqrt_factor_log(inst: FiniteInstance, gamma: float) -> float:
    """Log of (n N (gamma - rho) / (gamma delta (1 - rho delta)))^(1/2)."""
    delta, rho = inst.delta_n, inst.rho_n
    diff = gamma - rho
    if diff <= 0.0:
        raise DomainError(
            f"degenerate group ratio gamma={gamma} equals rho={rho}; "
            "the tail prefactor divides by gamma - rho"
        )
    return 0.5 * math.log(inst.n * inst.N * diff / (gamma * delta * (1.0 - rho * delta)))


def tail_prob_upper(inst: FiniteInstance) -> TailBound:
    """Bound on P(U(k,n,N) exceeds the asymptotic upper bound + epsilon).

    lambda* and gamma are the upper-side optimized solution evaluated at
    the finite ratios (delta_n, rho_n).  The eigenvalue term is
    prefactor * exp(N * net exponent at lambda*) * exp(n eps psi'(lambda*))
    with the net exponent vanishing at the root by construction; the
    covering failure probability is added on top.
    """
    delta, rho = inst.delta_n, inst.rho_n
    gamma, lam, _ = optimize_gamma_for_max(delta, rho)
    sqrt_log = _sqrt_factor_log(inst, gamma)

    # Polynomial prefactor in front of the exponential rate, proof form:
    # 2 lam (5/4)^3 sqrt-factor * (8/pi)^(1/2) gamma^(-1) n^(-7/2) lam^(-3/2).
    log_pmax = (
        0.5 * math.log(8.0 / math.pi)
        - math.log(gamma)
        - 3.5 * math.log(inst.n)
        - 1.5 * math.log(lam)
    )
    log_pref_proof = math.log(2.0) + math.log(lam) + _LOG_54_CUBED + sqrt_log + log_pmax
    log_pref_stated = log_pref_proof + 0.5 * math.log(gamma)

    psi_prime = 0.5 * ((1.0 + gamma) / lam - 1.0)
    log_eig = log_pref_proof + inst.N * _net_max_raw(lam, delta, rho, gamma)
    log_eig += inst.n * inst.epsilon * psi_prime
    log_cover = log_covering_failure_bound(inst.k, inst.N)

    return TailBound(
        side="upper",
        instance=inst,
        lambda_star=lam,
        log_lambda_star=math.log(lam),
        gamma_used=gamma,
        psi_derivative=psi_prime,
        log_prefactor_proof=log_pref_proof,
        log_prefactor_stated=log_pref_stated,
        log_eig_term=log_eig,
        log_cover_term=log_cover,
        log_total=_log_add(log_eig, log_cover),
    )


def tail_prob_lower(inst: FiniteInstance) -> TailBound:
    """Bound on P(L(k,n,N) exceeds the asymptotic lower bound + epsilon).

    Mirrors tail_prob_upper with the lower-side solution.  The slack
    exponent uses psi'(lambda) = (1/2)[(1 - gamma)/lambda - 1], which is
    positive at lambda* < 1 - gamma; larger epsilon means a smaller lambda
    level and a smaller tail, so the slack factor is exp(-n eps psi').
    psi_derivative stores the signed coefficient -psi' actually applied.
    """
    delta, rho = inst.delta_n, inst.rho_n
    gamma, log_lam, _ = optimize_gamma_for_min(delta, rho)
    sqrt_log = _sqrt_factor_log(inst, gamma)

    # One published form only: (5/4)^3 e sqrt(lam) / (pi sqrt(2)) * sqrt-factor.
    log_pref = (
        _LOG_54_CUBED
        + 1.0
        + 0.5 * log_lam
        - math.log(math.pi)
        - 0.5 * math.log(2.0)
        + sqrt_log
    )

    inv_lam = math.exp(-log_lam) if log_lam > -709.0 else math.inf
    psi_prime = 0.5 * ((1.0 - gamma) * inv_lam - 1.0)
    log_eig = log_pref + inst.N * _net_min_log_lambda(log_lam, delta, rho, gamma)
    log_eig -= inst.n * inst.epsilon * psi_prime
    log_cover = log_covering_failure_bound(inst.k, inst.N)

    return TailBound(
        side="lower",
        instance=inst,
        lambda_star=math.exp(log_lam) if log_lam > -745.0 else 0.0,
        log_lambda_star=log_lam,
        gamma_used=gamma,
        psi_derivative=-psi_prime,
        log_prefactor_proof=log_pref,
        log_prefactor_stated=log_pref,
        log_eig_term=log_eig,
        log_cover_term=log_cover,
        log_total=_log_add(log_eig, log_cover),
    )


def _log_add(a: float, b: float) -> float:
    """log(exp(a) + exp(b)) without leaving log space."""
    if a == -math.inf:
        return b
    if b == -math.inf:
        return a
    hi, lo = (a, b) if a >= b else (b, a)
    return hi + math.log1p(math.exp(lo - hi))

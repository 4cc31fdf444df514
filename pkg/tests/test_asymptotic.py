import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ricbounds.asymptotic import (
    L1_THRESHOLD,
    bct_bounds,
    bt_bounds,
    compute_bounds,
    ct_bounds,
    golden_section,
    l1_phase_transition,
    optimize_gamma_for_max,
    optimize_gamma_for_min,
    solve_lambda_max,
    solve_lambda_min,
)
from ricbounds.errors import DomainError
from ricbounds.rates import _net_max_raw, _net_min_log_lambda, shannon_entropy

mpmath.mp.dps = 40


def mp_net_max(lam, d, r, g):
    lam, d, r, g = map(mpmath.mpf, (lam, d, r, g))
    H = lambda p: -p * mpmath.log(p) - (1 - p) * mpmath.log(1 - p)
    psi = 0.5 * ((1 + g) * mpmath.log(lam) - g * mpmath.log(g) + 1 + g - lam)
    return d * psi + H(r * d) - d * g * H(r / g)


class TestLambdaSolvers:
    def test_root_against_independent_high_precision_solve(self):
        d, r, g = 0.1, 0.5, 0.7
        lam = solve_lambda_max(d, r, g)
        ref = mpmath.findroot(lambda x: mp_net_max(x, d, r, g), mpmath.mpf(lam))
        assert lam == pytest.approx(float(ref), rel=1e-11)

    @given(
        st.floats(min_value=0.05, max_value=0.95),
        st.floats(min_value=0.05, max_value=0.95),
        st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_max_root_residual_and_constraint(self, d, r, t):
        g = r + t * (1.0 / d - r)
        lam = solve_lambda_max(d, r, g)
        assert lam >= 1.0 + g
        assert abs(_net_max_raw(lam, d, r, g)) < 1e-12

    @given(
        st.floats(min_value=0.05, max_value=0.95),
        st.floats(min_value=0.05, max_value=0.95),
        st.floats(min_value=0.0, max_value=1.0),
    )
    @settings(max_examples=60, deadline=None)
    def test_min_root_residual_and_constraint(self, d, r, t):
        g = r + t * (1.0 - 1e-6 - r)
        log_lam = solve_lambda_min(d, r, g)
        assert log_lam <= math.log1p(-g)
        assert abs(_net_min_log_lambda(log_lam, d, r, g)) < 1e-12

    def test_domain_checks(self):
        with pytest.raises(DomainError):
            solve_lambda_max(0.5, 0.5, 0.4)
        with pytest.raises(DomainError):
            solve_lambda_min(0.5, 0.5, 1.0)


class TestGammaOptimizers:
    def test_max_optimizer_improves_on_gamma_equals_rho(self):
        for d, r in [(0.1, 0.5), (0.3, 0.2), (0.7, 0.7)]:
            g, lam, boundary = optimize_gamma_for_max(d, r)
            assert r < g <= 1.0 / d
            assert lam <= solve_lambda_max(d, r, r) + 1e-12
            if not boundary:
                # First-order condition lam (g - rho)^2 = g^3, log form.
                resid = abs(math.log(lam) + 2 * math.log(g - r) - 3 * math.log(g))
                assert resid < 1e-6

    def test_min_optimizer_improves_on_gamma_equals_rho(self):
        for d, r in [(0.1, 0.5), (0.3, 0.2), (0.7, 0.7)]:
            g, log_lam, boundary = optimize_gamma_for_min(d, r)
            assert r < g < 1.0
            assert log_lam >= solve_lambda_min(d, r, r) - 1e-10
            if not boundary:
                resid = abs(
                    3 * math.log(g) + log_lam - 2 * math.log1p(-g) - 2 * math.log(g - r)
                )
                assert resid < 1e-6

    def test_dense_scan_confirms_optimum(self):
        d, r = 0.1, 0.5
        _, lam_opt, _ = optimize_gamma_for_max(d, r)
        scan = min(
            solve_lambda_max(d, r, r + (1.0 / d - r) * i / 400.0) for i in range(1, 401)
        )
        assert lam_opt <= scan + 1e-9


class TestGoldenSection:
    def test_quadratic_minimum(self):
        x, v = golden_section(lambda x: (x - 2.0) ** 2 + 1.0, 0.0, 5.0, tol=1e-12)
        assert x == pytest.approx(2.0, abs=1e-6)
        assert v == pytest.approx(1.0, abs=1e-12)

    def test_empty_interval_rejected(self):
        with pytest.raises(DomainError):
            golden_section(lambda x: x, 1.0, 1.0)


class TestFamilies:
    def test_ct_closed_form_values(self):
        b = ct_bounds(0.5, 0.5)
        spread = math.sqrt(4.0 * shannon_entropy(0.25))
        assert b.U == pytest.approx((1 + math.sqrt(0.5) + spread) ** 2 - 1, rel=1e-14)
        assert b.L == 1.0  # edge term is negative here, clamped
        assert b.lambda_min == 0.0

    def test_ct_lower_positive_for_small_rho(self):
        b = ct_bounds(0.5, 1e-4)
        assert 0.0 < b.L < 1.0

    def test_family_ordering_at_midpoint(self):
        bt = bt_bounds(0.5, 0.5)
        bct = bct_bounds(0.5, 0.5)
        ct = ct_bounds(0.5, 0.5)
        assert bt.U < bct.U < ct.U
        assert bt.L < bct.L <= ct.L

    def test_bct_nu_fix_never_hurts(self):
        for d, r in [(0.1, 0.5), (0.5, 0.3), (0.8, 0.1)]:
            b = bct_bounds(d, r)
            assert b.U <= solve_lambda_max(d, r, r) - 1.0 + 1e-10
            assert r <= b.nu_opt <= 1.0

    def test_bct_nu_against_dense_scan(self):
        d, r = 0.3, 0.2
        b = bct_bounds(d, r)
        scan = min(
            solve_lambda_max(d, nu, nu)
            for nu in [r + (1 - 1e-9 - r) * i / 2000.0 for i in range(2001)]
        )
        assert b.lambda_max <= scan + 1e-8

    def test_dispatch(self):
        assert compute_bounds("CT", 0.5, 0.5).family == "CT"
        with pytest.raises(DomainError):
            compute_bounds("XX", 0.5, 0.5)

    def test_record_consistency(self):
        b = bt_bounds(0.2, 0.4)
        assert b.U == pytest.approx(b.lambda_max - 1.0, rel=1e-15)
        assert b.L == pytest.approx(1.0 - b.lambda_min, rel=1e-15)
        assert b.log_lambda_min == pytest.approx(math.log(b.lambda_min), rel=1e-12)


class TestPhaseTransition:
    def test_rho_star_order_of_magnitude(self):
        rs = l1_phase_transition(0.5, "BT")
        assert 1e-4 < rs < 1e-2

    def test_threshold_is_binding(self):
        rs = l1_phase_transition(0.5, "BT")
        below = compute_bounds("BT", 0.5, rs * 0.999)
        above = compute_bounds("BT", 0.5, rs * 1.01)
        assert max(below.L, below.U) < L1_THRESHOLD
        assert max(above.L, above.U) >= L1_THRESHOLD

    def test_bt_above_bct(self):
        assert l1_phase_transition(0.3, "BT") >= l1_phase_transition(0.3, "BCT")

import math

import numpy as np
import pytest

from pqdec.decoupling import (
    UNBOUNDED,
    OptimizerOptions,
    apply_isometry,
    bounds_report,
    decoupling_scores,
    half_qmi_upper,
    optimize_xi,
    outcome_isometry,
    povm_upper,
    prop1_lower,
    rates_sweep,
    xi_infinity,
)
from pqdec.entropics import coherent_information, mutual_information
from pqdec.isometries import (
    RankOnePovm,
    from_parameters,
    mub_shredder,
    povm_isometry,
    twirl_isometry,
)
from pqdec.qmat import DimSig, ValidationError, kron
from pqdec.states import (
    DensityMatrix,
    classically_correlated,
    max_entangled,
    random_density,
    random_pure,
    random_separable,
    to_density,
)

BELL = to_density(max_entangled(2))
CC_BIT = classically_correlated([0.5, 0.5], [np.diag([1.0, 0.0]), np.diag([0.0, 1.0])])
FAST = OptimizerOptions(restarts=4, iterations=400, seed=0)


def product_state():
    a = random_density(2, 2, 3).matrix
    b = random_density(2, 2, 4).matrix
    return DensityMatrix(kron(a, b), DimSig((2, 2), ("R", "A")))


class TestApplyIsometry:
    def test_identity_embedding_keeps_everything(self):
        v = from_parameters(np.zeros(4), 2, 2, 1)
        out = apply_isometry(BELL, v)
        assert out.sig.labels == ("R", "B", "E")
        assert abs(mutual_information(out, "R", "B") - 2.0) <= 1e-12
        assert abs(mutual_information(out, "R", "E")) <= 1e-12

    def test_twirl_on_bell_decouples_kept_output(self):
        out = apply_isometry(BELL, twirl_isometry(2))
        rb = out.marginal(("R", "B")).matrix
        assert np.max(np.abs(rb - np.eye(4) / 4)) <= 1e-12

    def test_trace_preserved(self):
        for seed in range(3):
            rho = random_density(4, 4, seed, labels=("R", "A"), dims=(2, 2))
            out = apply_isometry(rho, mub_shredder(2))
            assert abs(np.trace(out.matrix).real - 1.0) <= 1e-10

    def test_dimension_mismatch_rejected(self):
        with pytest.raises(ValidationError):
            apply_isometry(BELL, mub_shredder(3))


class TestDecouplingScores:
    def test_product_state_scores_zero(self):
        m = kron(np.eye(2) / 2, kron(np.eye(2) / 2, np.eye(2) / 2))
        rho = DensityMatrix(m, DimSig((2, 2, 2), ("R", "B", "E")))
        i_rb, i_re, swapped = decoupling_scores(rho)
        assert abs(i_rb) <= 1e-9 and abs(i_re) <= 1e-9
        assert not swapped

    def test_twirl_output_triggers_canonical_swap(self):
        out = apply_isometry(BELL, twirl_isometry(2))
        i_rb, i_re, swapped = decoupling_scores(out)
        assert abs(i_rb - 2.0) <= 1e-9
        assert abs(i_re) <= 1e-9
        assert swapped

    def test_measurement_output_balances_scores(self):
        vecs = tuple(np.eye(2)[i] for i in range(2))
        out = apply_isometry(CC_BIT, povm_isometry(RankOnePovm(vecs)))
        i_rb, i_re, _ = decoupling_scores(out)
        assert abs(i_rb - i_re) <= 1e-9

    def test_needs_three_factors(self):
        with pytest.raises(ValidationError):
            decoupling_scores(BELL)


class TestClosedFormBounds:
    def test_prop1_on_bell(self):
        assert prop1_lower(BELL, 0.0) == 2.0
        assert prop1_lower(BELL, 1.0) == 1.0
        assert prop1_lower(BELL) == 1.0

    def test_prop1_formula_on_random_states(self):
        for seed in range(5):
            rho = random_density(4, 4, seed, labels=("R", "A"), dims=(2, 2))
            ic = coherent_information(rho, "A", "R")
            for eps in (0.0, 0.3, 1.7):
                want = max(2.0 * ic - eps, ic, 0.0)
                assert abs(prop1_lower(rho, eps) - want) <= 1e-12

    def test_prop1_separable_clamps_to_zero(self):
        rho = random_separable(2, 2, 3, 0)
        assert prop1_lower(rho, 0.5) == 0.0
        assert prop1_lower(rho) == 0.0

    def test_prop1_rejects_negative_eps(self):
        with pytest.raises(ValidationError):
            prop1_lower(BELL, -0.5)
        with pytest.raises(ValidationError):
            prop1_lower(BELL, float("nan"))

    def test_half_qmi_examples(self):
        assert half_qmi_upper(BELL) == 1.0
        assert abs(half_qmi_upper(CC_BIT) - 0.5) <= 1e-12
        assert abs(half_qmi_upper(product_state())) <= 1e-9

    def test_xi_infinity_examples(self):
        assert abs(xi_infinity(BELL) - 1.0) <= 1e-12
        mixed = DensityMatrix(np.eye(4, dtype=complex) / 4, DimSig((2, 2), ("R", "A")))
        assert xi_infinity(mixed) == 0.0
        for seed in range(5):
            assert xi_infinity(random_separable(2, 2, 3, seed)) == 0.0


class TestOptimize:
    def test_bell_lands_on_one_bit(self):
        out = optimize_xi(BELL, UNBOUNDED, FAST)
        assert 0.98 <= out.i_rb <= 1.02
        assert out.feasible and out.converged
        assert out.restarts_used >= 1

    def test_classical_bit_fully_shredded_at_zero_leak(self):
        out = optimize_xi(CC_BIT, 0.0, OptimizerOptions(restarts=6, iterations=800, seed=0))
        assert out.i_rb <= 1e-4
        assert out.feasible

    def test_result_between_bounds(self):
        for seed in range(3):
            rho = random_density(4, 4, seed + 20, labels=("R", "A"), dims=(2, 2))
            out = optimize_xi(rho, UNBOUNDED, FAST)
            assert out.i_rb >= prop1_lower(rho) - 1e-6
            assert out.i_rb <= mutual_information(rho, "R", "A") + 1e-6

    def test_feasible_flag_invariant(self):
        for seed in range(3):
            rho = random_density(4, 4, seed + 40, labels=("R", "A"), dims=(2, 2))
            out = optimize_xi(rho, 0.3, FAST)
            if out.feasible:
                assert out.i_re <= min(0.3, out.i_rb) + 1e-6

    def test_deterministic_across_runs_and_threads(self):
        a = optimize_xi(BELL, UNBOUNDED, OptimizerOptions(restarts=4, iterations=300, seed=5))
        b = optimize_xi(BELL, UNBOUNDED, OptimizerOptions(restarts=4, iterations=300, seed=5))
        c = optimize_xi(
            BELL, UNBOUNDED, OptimizerOptions(restarts=4, iterations=300, seed=5, threads=3)
        )
        assert np.array_equal(a.theta, b.theta)
        assert a.i_rb == b.i_rb and a.i_re == b.i_re
        assert np.array_equal(a.theta, c.theta)
        assert a.restarts_used == c.restarts_used

    def test_certificate_reproduces_scores(self):
        out = optimize_xi(BELL, UNBOUNDED, FAST)
        replay = apply_isometry(BELL, outcome_isometry(out))
        i_rb, i_re, _ = decoupling_scores(replay)
        assert abs(i_rb - out.i_rb) <= 1e-9
        assert abs(i_re - out.i_re) <= 1e-9

    def test_forced_leak_is_reported_infeasible(self):
        opts = OptimizerOptions(restarts=2, iterations=200, seed=0, d_b=1, d_e=2)
        out = optimize_xi(BELL, 0.5, opts)
        assert not out.feasible
        assert out.i_re >= 1.9

    def test_warm_start_accepted(self):
        first = optimize_xi(BELL, UNBOUNDED, FAST)
        warm = OptimizerOptions(restarts=1, iterations=100, seed=1, warm_theta=first.theta)
        second = optimize_xi(BELL, UNBOUNDED, warm)
        assert second.i_rb <= first.i_rb + 1e-6

    def test_eps_validation(self):
        with pytest.raises(ValidationError):
            optimize_xi(BELL, -1.0, FAST)


class TestPovmUpper:
    def test_pure_state_pinned_at_reference_entropy(self):
        value = povm_upper(BELL, FAST)
        assert abs(value - 1.0) <= 2e-2

    def test_classical_bit_reaches_zero(self):
        assert povm_upper(CC_BIT, OptimizerOptions(restarts=6, iterations=600, seed=0)) <= 1e-4

    def test_product_state_is_zero(self):
        assert povm_upper(product_state(), FAST) <= 1e-6

    def test_never_exceeds_half_qmi(self):
        for seed in range(5):
            rho = random_density(4, 4, seed + 60, labels=("R", "A"), dims=(2, 2))
            assert povm_upper(rho, FAST) <= half_qmi_upper(rho) + 1e-6


class TestBoundsReport:
    def test_bell_report(self):
        rep = bounds_report(BELL, UNBOUNDED, FAST)
        assert rep.qmi == 2.0
        assert abs(rep.ic_a_to_r - 1.0) <= 1e-12
        assert rep.prop1_lower == 1.0
        assert rep.half_qmi_upper == 1.0
        assert abs(rep.povm_upper - 1.0) <= 2e-2
        assert abs(rep.xi_infinity - 1.0) <= 1e-12

    def test_three_level_entangled_pair(self):
        rho = to_density(max_entangled(3))
        rep = bounds_report(rho, UNBOUNDED, OptimizerOptions(restarts=3, iterations=300, seed=0))
        want = math.log2(3.0)
        assert abs(rep.prop1_lower - want) <= 1e-9
        assert abs(rep.half_qmi_upper - want) <= 1e-9
        assert abs(rep.xi_infinity - want) <= 1e-9

    def test_separable_sample(self):
        rep = bounds_report(random_separable(2, 2, 3, 1), UNBOUNDED, FAST)
        assert rep.xi_infinity == 0.0
        assert rep.prop1_lower == 0.0


class TestRatesSweep:
    def test_bell_line(self):
        opts = OptimizerOptions(restarts=6, iterations=800, seed=0)
        res = rates_sweep(BELL, [0.0, 0.5, 1.0], opts)
        for row in res.rows:
            assert abs(row.xi_envelope - (2.0 - row.eps)) <= 0.05
            assert row.feasible

    def test_envelope_is_running_minimum(self):
        res = rates_sweep(BELL, [0.0, 0.5, 1.0], FAST)
        best = math.inf
        for row in res.rows:
            best = min(best, row.xi_raw)
            assert row.xi_envelope == best
        env = [row.xi_envelope for row in res.rows]
        assert all(b <= a + 1e-12 for a, b in zip(env, env[1:]))

    def test_product_state_flatlines(self):
        res = rates_sweep(product_state(), [0.0, 0.5], FAST)
        for row in res.rows:
            assert row.xi_raw <= 1e-6

    def test_classical_bit_all_points_shredded(self):
        opts = OptimizerOptions(restarts=6, iterations=800, seed=0)
        res = rates_sweep(CC_BIT, [0.0, 0.25, 0.5], opts)
        for row in res.rows:
            assert row.xi_raw <= 1e-4

    def test_grid_clipped_at_half_qmi(self):
        opts = OptimizerOptions(restarts=4, iterations=400, seed=0)
        res = rates_sweep(BELL, [5.0, float("inf")], opts)
        unbounded = optimize_xi(BELL, UNBOUNDED, opts)
        for row in res.rows:
            assert abs(row.xi_raw - unbounded.i_rb) <= 2e-2

    def test_csv_shape(self):
        res = rates_sweep(BELL, [0.0, float("inf")], FAST)
        lines = res.to_csv().strip().split("\n")
        assert lines[0] == (
            "eps,xi_raw,xi_envelope,i_rb,i_re,prop1_lower,half_qmi_upper,"
            "feasible,restarts_used,converged"
        )
        assert len(lines) == 3
        assert lines[2].startswith("inf,")

    def test_grid_validation(self):
        with pytest.raises(ValidationError):
            rates_sweep(BELL, [], FAST)
        with pytest.raises(ValidationError):
            rates_sweep(BELL, [1.0, 0.5], FAST)
        with pytest.raises(ValidationError):
            rates_sweep(BELL, [-0.5, 1.0], FAST)

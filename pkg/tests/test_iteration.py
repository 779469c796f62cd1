"""Tests for the stabilized fixed-point iterations and their traces."""
import json

import numpy as np
import pytest

from solwave.errors import ConfigurationError, DimensionMismatchError
from solwave.grid import make_grid
from solwave.iteration import (FactorStrategy, InitialGuess, IterationConfig,
                               align_to_reference, iterate_classic,
                               iterate_extended, iterate_petviashvili)
from solwave.problems import build_eboussinesq, build_nls_power


def benchmark_problem(m=512):
    grid = make_grid(32.0, m)
    return build_nls_power(1.0, 1.0, 1.0, 2.0, 4.0, grid)


def default_config(**kwargs):
    base = dict(max_iters=200, residual_tol=1e-12,
                initial_guess=InitialGuess(amplitude=1.5, width=2.0))
    base.update(kwargs)
    return IterationConfig(**base)


class TestFactorStrategy:
    """Exponent selection for the stabilizing factor."""

    def test_classic_resolves_to_zero(self):
        problem = benchmark_problem(64) if False else benchmark_problem()
        assert FactorStrategy.classic().resolve(problem) == (0.0, 0.0)

    def test_default_per_term_exponents(self):
        # degrees 3 and 5 give p/(p-1) = 3/2 and 5/4
        problem = benchmark_problem()
        assert FactorStrategy.per_term().resolve(problem) == (1.5, 1.25)

    def test_single_uses_one_exponent(self):
        problem = benchmark_problem()
        assert FactorStrategy.single(1.5).resolve(problem) == (1.5, 1.5)

    def test_explicit_per_term(self):
        problem = benchmark_problem()
        strategy = FactorStrategy.per_term((2.0, 1.5))
        assert strategy.resolve(problem) == (2.0, 1.5)

    def test_wrong_count_rejected(self):
        problem = benchmark_problem()
        with pytest.raises(ConfigurationError):
            FactorStrategy.per_term((1.5, 1.25, 1.1)).resolve(problem)


class TestInitialGuess:
    """Built-in guess shapes on the grid."""

    def test_gaussian_peak(self):
        grid = make_grid(16.0, 128)
        problem = build_nls_power(1.0, 1.0, 1.0, 1.0, 3.0, grid)
        guess = InitialGuess(kind="gaussian", amplitude=2.0, width=1.0)
        vals = guess.build(problem)
        assert np.max(vals) == pytest.approx(2.0, rel=1e-12)

    def test_two_component_amplitudes_alternate(self):
        grid = make_grid(64.0, 128)
        problem = build_eboussinesq(0.8, 1.8, 1.05, grid)
        vals = InitialGuess(amplitude=0.3, width=2.0).build(problem)
        eta, w = problem.split_components(vals)
        assert np.max(eta) == pytest.approx(0.3, rel=1e-12)
        assert np.min(w) == pytest.approx(-0.3, rel=1e-12)

    def test_field_guess_passthrough(self):
        grid = make_grid(16.0, 64)
        problem = build_nls_power(1.0, 1.0, 1.0, 1.0, 3.0, grid)
        values = np.linspace(0, 1, 64)
        vals = InitialGuess(kind="field", values=values).build(problem)
        assert np.allclose(vals, values)

    def test_unknown_kind_rejected(self):
        with pytest.raises(ConfigurationError):
            InitialGuess(kind="sawtooth")


class TestExtendedIteration:
    """Per-term stabilized iteration on the two-power benchmark."""

    def test_converges_to_exact_solution(self):
        problem = benchmark_problem()
        trace = iterate_extended(problem, default_config())
        assert trace.converged, trace.summary()
        assert trace.residuals[-1] < 1e-12
        shift, aligned, relerr = align_to_reference(
            problem.grid, trace.final, problem.exact_solution)
        assert relerr < 1e-9, f"aligned exact error {relerr:.3e}"

    def test_iterations_counted_from_guess(self):
        problem = benchmark_problem()
        trace = iterate_extended(problem, default_config())
        assert trace.iterations == len(trace.residuals) - 1
        assert trace.iterations <= 40

    def test_warm_start_converges_immediately(self):
        problem = benchmark_problem()
        guess = InitialGuess(kind="field", values=problem.exact_solution)
        trace = iterate_extended(problem, default_config(initial_guess=guess))
        assert trace.converged
        assert trace.iterations <= 2

    def test_factor_discrepancy_vanishes(self):
        problem = benchmark_problem()
        trace = iterate_extended(problem, default_config())
        # the stabilizing factor equals 1 at any true solution
        assert trace.factor_discrepancies[-1] < 1e-10

    def test_max_iters_reported(self):
        problem = benchmark_problem()
        trace = iterate_extended(problem, default_config(max_iters=3))
        assert not trace.converged
        assert trace.reason == "max_iters"

    def test_strategy_must_not_be_classic(self):
        problem = benchmark_problem()
        with pytest.raises(ConfigurationError):
            iterate_extended(problem, default_config(
                strategy=FactorStrategy.classic()))


class TestClassicIteration:
    """Unstabilized map diverges on the benchmark."""

    def test_diverges(self):
        problem = benchmark_problem()
        trace = iterate_classic(problem, default_config())
        assert not trace.converged
        assert trace.reason == "diverged"


class TestPetviashviliIteration:
    """Single-factor variant."""

    def test_converges_with_default_gamma(self):
        problem = benchmark_problem()
        trace = iterate_petviashvili(problem, default_config(
            strategy=FactorStrategy.single()))
        assert trace.converged, trace.summary()
        shift, aligned, relerr = align_to_reference(
            problem.grid, trace.final, problem.exact_solution)
        assert relerr < 1e-9

    def test_rejects_per_term_strategy(self):
        problem = benchmark_problem()
        with pytest.raises(ConfigurationError):
            iterate_petviashvili(problem, default_config(
                strategy=FactorStrategy.per_term((1.5, 1.25))))


class TestErrorRatios:
    """Consecutive exact-error quotients along the trace."""

    def test_ratios_settle_to_constant(self):
        problem = benchmark_problem()
        trace = iterate_extended(problem, default_config())
        ratios = trace.error_ratios()
        tail = [ratios[n] for n in (16, 18, 20)]
        spread = max(tail) - min(tail)
        assert spread < 1e-4, f"ratio spread {spread:.3e}"


class TestAlignToReference:
    """Shift-aligned comparison of profiles."""

    def test_detects_translation(self):
        grid = make_grid(32.0, 512)
        u = np.exp(-grid.nodes ** 2)
        moved = grid.translate(u, 3.25)
        shift, aligned, relerr = align_to_reference(grid, moved, u)
        # the returned shift moves the values back onto the reference
        assert shift == pytest.approx(-3.25, abs=1e-6)
        assert relerr < 1e-10

    def test_two_component_alignment(self):
        grid = make_grid(32.0, 256)
        a = np.exp(-grid.nodes ** 2)
        b = np.tanh(grid.nodes) / np.cosh(grid.nodes)
        ref = np.concatenate([a, b])
        moved = np.concatenate([grid.translate(a, 1.5), grid.translate(b, 1.5)])
        shift, aligned, relerr = align_to_reference(grid, moved, ref,
                                                    num_components=2)
        assert relerr < 1e-9

    def test_shape_mismatch_rejected(self):
        grid = make_grid(8.0, 64)
        with pytest.raises(DimensionMismatchError):
            align_to_reference(grid, np.zeros(64), np.zeros(32))


class TestTraceSerialization:
    """CSV and JSON artifacts of one run."""

    def test_csv_columns(self, tmp_path):
        problem = benchmark_problem()
        trace = iterate_extended(problem, default_config())
        path = tmp_path / "trace.csv"
        trace.to_csv(path)
        lines = path.read_text().splitlines()
        assert lines[0].startswith("n,residual")
        assert len(lines) == len(trace.residuals) + 1

    def test_json_roundtrip(self, tmp_path):
        problem = benchmark_problem()
        trace = iterate_extended(problem, default_config())
        path = tmp_path / "trace.json"
        trace.to_json(path)
        payload = json.loads(path.read_text())
        assert payload["reason"] == "converged"
        assert payload["iterations"] == trace.iterations
        assert len(payload["final"]) == problem.state_dim

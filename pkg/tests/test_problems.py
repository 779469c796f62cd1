"""Tests for problem assembly, homogeneous terms, and the closed-form profile."""
import numpy as np
import pytest

from solwave.errors import ConfigurationError
from solwave.grid import make_grid
from solwave.problems import (BoussinesqCoefficients, PotentialSpec,
                              build_eboussinesq, build_gnls_double_well,
                              build_gnls_three_term, build_nls_power, eval_N,
                              eval_N_jacobian, exact_profile, power_term)

# closed-form profile values recomputed at 40-digit precision for
# mu = alpha = beta = 1, sigma = 2; the ODE residual there is ~1e-17
PROFILE_B = 0.39735970711951315
PROFILE_A = 1.5894388284780526
PROFILE_AT = {
    0.0: 1.0665170457229868,
    1.0: 0.61815651774598473,
    2.5: 0.14595911568299614,
    20.0: 3.6749147501650736e-9,
}


class TestExactProfile:
    """Closed-form two-power ground state."""

    def test_reference_values(self):
        for x, want in PROFILE_AT.items():
            got = exact_profile(x, mu=1.0, alpha=1.0, beta=1.0, sigma=2.0)
            assert got == pytest.approx(want, rel=1e-14), f"U({x}) = {got!r}"

    def test_amplitude_beta_quarter(self):
        # second parameter set: B = 1/sqrt(1 + 16*0.25/3), A = 4B
        got = exact_profile(0.0, mu=1.0, alpha=1.0, beta=0.25, sigma=2.0)
        want = (2.6186146828319086 / (0.65465367070797714 + 1.0)) ** 0.5
        assert got == pytest.approx(want, rel=1e-14)

    def test_even_symmetry(self):
        xs = np.linspace(0.1, 3.0, 7)
        left = exact_profile(-xs, 1.0, 1.0, 1.0, 2.0)
        right = exact_profile(xs, 1.0, 1.0, 1.0, 2.0)
        assert np.allclose(left, right, rtol=1e-15)

    def test_satisfies_discrete_equation(self):
        grid = make_grid(32.0, 512)
        u = exact_profile(grid.nodes, 1.0, 1.0, 1.0, 2.0)
        lhs = 1.0 * u - grid.derivative(u, 2)
        rhs = u ** 3 + u ** 5
        err = np.max(np.abs(lhs - rhs))
        assert err < 1e-9, f"discrete residual {err:.3e}"

    def test_parameter_validation(self):
        with pytest.raises(ConfigurationError):
            exact_profile(0.0, mu=1.0, alpha=0.0, beta=1.0, sigma=2.0)
        with pytest.raises(ConfigurationError):
            exact_profile(0.0, mu=-1.0, alpha=1.0, beta=1.0, sigma=2.0)

    def test_scalar_input_gives_float(self):
        assert isinstance(exact_profile(0.5, 1.0, 1.0, 1.0, 2.0), float)


class TestHomogeneousTerms:
    """Degree bookkeeping and the scaling property N(c x) = c^p N(x)."""

    def test_power_term_degree(self):
        term = power_term(2.0, 3.0)
        assert term.degree == 4.0

    def test_homogeneity(self):
        term = power_term(1.5, 2.0)
        rng = np.random.default_rng(7)
        x = rng.standard_normal(64)
        for c in (0.5, 2.0, 3.7):
            scaled = term.evaluate(c * x)
            assert np.allclose(scaled, c ** term.degree * term.evaluate(x),
                               rtol=1e-12)

    def test_euler_identity(self):
        # p-homogeneous maps satisfy N'(x) x = p N(x)
        term = power_term(0.7, 4.0)
        rng = np.random.default_rng(8)
        x = rng.standard_normal(32)
        jac_x = term.jacobian(x) @ x
        assert np.allclose(jac_x, term.degree * term.evaluate(x), rtol=1e-10)

    def test_jacobian_matches_finite_difference(self):
        term = power_term(1.0, 2.0)
        rng = np.random.default_rng(9)
        x = rng.standard_normal(16) + 1.5
        jac = term.jacobian(x)
        eps = 1e-6
        for j in range(16):
            e = np.zeros(16)
            e[j] = eps
            col = (term.evaluate(x + e) - term.evaluate(x - e)) / (2 * eps)
            assert np.allclose(jac[:, j], col, atol=1e-5)


class TestPotentialSpec:
    """Attractive sech-squared wells."""

    def test_two_symmetric_wells(self):
        pot = PotentialSpec(depths=(2.8, 2.8), centers=(-1.5, 1.5))
        x = np.array([-1.5, 0.0, 1.5])
        vals = pot(x)
        assert vals[0] == pytest.approx(vals[2])
        assert vals[0] < vals[1] < 0.0

    def test_asymmetric_depths(self):
        pot = PotentialSpec(depths=(1.0, 3.0), centers=(-1.0, 1.0))
        vals = pot(np.array([-1.0, 1.0]))
        assert vals[1] < vals[0]


class TestBoussinesqCoefficients:
    """Derived coefficients against 40-digit reference values."""

    def test_default_s(self):
        coeffs = BoussinesqCoefficients(r=0.8, H=1.8, c_s=1.05)
        assert coeffs.s == pytest.approx(-2.44, rel=1e-15)

    def test_reference_values(self):
        coeffs = BoussinesqCoefficients(r=0.8, H=1.8, c_s=1.05)
        assert coeffs.d1 == pytest.approx(0.69230769230769231, rel=1e-14)
        assert coeffs.d2 == pytest.approx(-0.1949112426035503, rel=1e-13)
        assert coeffs.d3 == pytest.approx(-0.84461538461538462, rel=1e-14)
        assert coeffs.d4 == pytest.approx(0.36094674556213018, rel=1e-14)
        assert coeffs.d5 == pytest.approx(0.3568502503413746, rel=1e-14)

    def test_shallow_case(self):
        coeffs = BoussinesqCoefficients(r=0.8, H=0.95, c_s=1.02)
        assert coeffs.d1 == pytest.approx(0.54285714285714286, rel=1e-14)
        assert coeffs.s == pytest.approx(-1.76, rel=1e-15)


class TestProblemBuilders:
    """Constructed systems L x = N(x) and their attached metadata."""

    def test_nls_power_attaches_exact_solution(self):
        grid = make_grid(32.0, 512)
        problem = build_nls_power(1.0, 1.0, 1.0, 2.0, 4.0, grid)
        assert problem.name == "nls-two-power"
        assert problem.exact_solution is not None
        u = problem.exact_solution
        res = problem.linear_matrix @ u - eval_N(problem, u)
        assert np.linalg.norm(res) < 1e-8 * np.linalg.norm(u)

    def test_nls_power_without_closed_form(self):
        grid = make_grid(16.0, 128)
        problem = build_nls_power(1.0, 1.0, 1.0, 1.0, 3.0, grid)
        assert problem.exact_solution is None
        assert [t.degree for t in problem.terms] == [2.0, 4.0]

    def test_underresolved_exact_solution_rejected(self):
        # the attached closed form fails the discrete residual check here
        grid = make_grid(32.0, 32)
        with pytest.raises(ConfigurationError):
            build_nls_power(1.0, 1.0, 1.0, 2.0, 4.0, grid)

    def test_double_well_params(self):
        grid = make_grid(16.0, 128)
        problem = build_gnls_double_well(1.9, 2.8, 1.5, 0.25, grid)
        assert problem.name == "gnls-double-well"
        assert callable(problem.params["potential"])
        degrees = sorted(t.degree for t in problem.terms)
        assert degrees == [3.0, 5.0]

    def test_three_term_degrees(self):
        grid = make_grid(16.0, 128)
        problem = build_gnls_three_term(3.275, 0.01247946, grid)
        assert problem.name == "gnls-three-term"
        assert sorted(t.degree for t in problem.terms) == [3.0, 5.0, 7.0]

    def test_eboussinesq_structure(self):
        grid = make_grid(64.0, 128)
        problem = build_eboussinesq(0.8, 1.8, 1.05, grid)
        assert problem.num_components == 2
        assert problem.state_dim == 256
        assert [t.degree for t in problem.terms] == [2.0, 3.0]
        assert problem.params["s"] == pytest.approx(-2.44)

    def test_split_components(self):
        grid = make_grid(64.0, 64)
        problem = build_eboussinesq(0.8, 1.8, 1.05, grid)
        x = np.arange(128.0)
        eta, w = problem.split_components(x)
        assert np.allclose(eta, np.arange(64.0))
        assert np.allclose(w, np.arange(64.0, 128.0))


class TestEvalN:
    """Assembled nonlinearity and its Jacobian."""

    def test_eval_matches_terms(self):
        grid = make_grid(16.0, 64)
        problem = build_nls_power(1.0, 2.0, 0.5, 1.0, 3.0, grid)
        rng = np.random.default_rng(5)
        x = rng.standard_normal(64)
        want = 2.0 * np.abs(x) * x + 0.5 * np.abs(x) ** 3 * x
        assert np.allclose(eval_N(problem, x), want, rtol=1e-12)

    def test_jacobian_euler_identity(self):
        grid = make_grid(16.0, 64)
        problem = build_gnls_three_term(3.275, 0.01247946, grid)
        rng = np.random.default_rng(6)
        x = 0.5 + 0.1 * rng.standard_normal(64)
        # sum_j p_j N_j(x) equals N'(x) x term by term
        jac_x = eval_N_jacobian(problem, x) @ x
        per_term = sum(t.degree * t.evaluate(x) for t in problem.terms)
        assert np.allclose(jac_x, per_term, rtol=1e-9)

    def test_boussinesq_homogeneity(self):
        grid = make_grid(64.0, 64)
        problem = build_eboussinesq(0.8, 1.8, 1.05, grid)
        rng = np.random.default_rng(12)
        x = rng.standard_normal(128)
        for term, degree in zip(problem.terms, (2.0, 3.0)):
            assert np.allclose(term.evaluate(2.0 * x),
                               2.0 ** degree * term.evaluate(x), rtol=1e-12)

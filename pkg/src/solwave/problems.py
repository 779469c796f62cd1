"""Discrete stationary systems L x = N(x) with homogeneous nonlinear terms.

Each problem bundles a dense linear operator (with a reusable LU solve), an
ordered list of homogeneous terms with analytic Jacobians, and, when a closed
form is known, the exact profile sampled on the grid.  Four concrete systems
are provided: the two-power NLS ground-state equation, the same equation with
a symmetric double-well potential, a three-power variant with an asymmetric
potential, and the two-component e-Boussinesq solitary-wave system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from .errors import ConfigurationError, DimensionMismatchError
from .grid import Field, GridSpec

Array = np.ndarray


def _sech(x: Array) -> Array:
    """Overflow-safe sech(x) = 2 e^{-|x|} / (1 + e^{-2|x|})."""
    a = np.abs(x)
    e = np.exp(-a)
    return 2.0 * e / (1.0 + e * e)


@dataclass(frozen=True)
class HomogeneousTerm:
    """One homogeneous piece N_j of the nonlinearity.

    ``evaluate(c*x) = c**degree * evaluate(x)`` for c > 0, and the analytic
    Jacobian satisfies the Euler identity jacobian(x) @ x = degree * evaluate(x).
    """

    degree: float
    label: str
    evaluate: Callable[[Array], Array]
    jacobian: Callable[[Array], Array]

    def __post_init__(self):
        if abs(self.degree) <= 1:
            raise ConfigurationError(
                f"term degree must satisfy |p| > 1, got {self.degree}")


def power_term(coefficient: float, exponent: float) -> HomogeneousTerm:
    """Term c*|U|^m*U of degree m+1 acting on a single real component."""
    if exponent <= 0:
        raise ConfigurationError(f"modulus exponent must be positive, got {exponent}")

    def evaluate(u: Array) -> Array:
        return coefficient * np.abs(u) ** exponent * u

    def jacobian(u: Array) -> Array:
        return np.diag(coefficient * (exponent + 1.0) * np.abs(u) ** exponent)

    label = f"{coefficient:+g}*|U|^{exponent:g}*U"
    return HomogeneousTerm(exponent + 1.0, label, evaluate, jacobian)


@dataclass(frozen=True)
class PotentialSpec:
    """Two localized sech^2 wells: V(x) = -sum_i depth_i * sech^2(x - center_i)."""

    depths: tuple
    centers: tuple

    def __post_init__(self):
        if len(self.depths) != len(self.centers):
            raise ConfigurationError("one center per well depth required")
        if any(d < 0 for d in self.depths):
            raise ConfigurationError("well depths must be nonnegative")

    def __call__(self, x: Array) -> Array:
        x = np.asarray(x, dtype=float)
        v = np.zeros_like(x)
        for depth, center in zip(self.depths, self.centers):
            v -= depth * _sech(x - center) ** 2
        return v

    @property
    def is_symmetric(self) -> bool:
        d1, d2 = self.depths
        c1, c2 = self.centers
        return math.isclose(d1, d2, rel_tol=0, abs_tol=1e-12) and \
            math.isclose(c1, -c2, rel_tol=0, abs_tol=1e-12)


@dataclass(frozen=True)
class BoussinesqCoefficients:
    """Physical parameters (r, H, s, c_s) and the derived d1..d5 coefficients."""

    r: float
    H: float
    c_s: float
    s: Optional[float] = None
    d1: float = field(init=False)
    d2: float = field(init=False)
    d3: float = field(init=False)
    d4: float = field(init=False)
    d5: float = field(init=False)

    def __post_init__(self):
        r, H = self.r, self.H
        if r + H == 0:
            raise ConfigurationError("r + H must be nonzero")
        if self.s is None:
            object.__setattr__(self, "s", -(1.0 + r * H))
        s = self.s
        object.__setattr__(self, "d1", H / (r + H))
        object.__setattr__(self, "d2",
                           H ** 2 / (2.0 * (r + H) ** 2) * (s + (2.0 / 3.0) * (1.0 + r * H)))
        object.__setattr__(self, "d3", s * self.d1 / 2.0)
        object.__setattr__(self, "d4", (H ** 2 - r) / (r + H) ** 2)
        object.__setattr__(self, "d5", r * (1.0 + H) ** 2 / (r + H) ** 3)
        if self.d1 == 0:
            raise ConfigurationError("d1 = H/(r+H) must be nonzero")


@dataclass(frozen=True, eq=False)
class Problem:
    """Discrete system L x = N(x), N(x) = sum_j N_j(x)."""

    name: str
    grid: GridSpec
    num_components: int
    linear_matrix: Array = field(repr=False)
    terms: tuple
    exact_solution: Optional[Array] = field(default=None, repr=False)
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.terms:
            raise ConfigurationError("problem needs at least one nonlinear term")
        degrees = [t.degree for t in self.terms]
        if len(set(degrees)) != len(degrees):
            raise ConfigurationError(f"term degrees must be pairwise distinct, got {degrees}")
        n = self.state_dim
        if self.linear_matrix.shape != (n, n):
            raise ConfigurationError(
                f"linear operator shape {self.linear_matrix.shape} does not match state dim {n}")
        rng = np.random.default_rng(0)
        b = rng.standard_normal(n)
        err = np.linalg.norm(self.linear_matrix @ self.solve_linear(b) - b)
        if not err < 1e-8 * np.linalg.norm(b):
            raise ConfigurationError(
                f"linear operator appears singular (back-substitution error {err:.3e})")
        if self.exact_solution is not None:
            xs = np.asarray(self.exact_solution, dtype=float)
            if xs.shape != (n,):
                raise DimensionMismatchError("exact solution length does not match state dim")
            res = np.linalg.norm(self.linear_matrix @ xs - eval_N(self, xs))
            if not res < 1e-8 * np.linalg.norm(xs):
                raise ConfigurationError(
                    f"attached exact solution fails L x = N(x) to 1e-8 (residual {res:.3e}); "
                    "enlarge the grid")

    @property
    def state_dim(self) -> int:
        return self.num_components * self.grid.num_points

    @cached_property
    def _lu(self):
        return scipy.linalg.lu_factor(self.linear_matrix)

    def apply_linear(self, x: Array) -> Array:
        return self.linear_matrix @ np.asarray(x)

    def solve_linear(self, rhs: Array) -> Array:
        """Solve L y = rhs with the LU factorization computed once per problem."""
        rhs = np.asarray(rhs)
        if rhs.shape[0] != self.state_dim:
            raise DimensionMismatchError(
                f"rhs length {rhs.shape[0]} does not match state dim {self.state_dim}")
        return scipy.linalg.lu_solve(self._lu, rhs)

    def split_components(self, x: Array):
        """Views of a stacked state as per-component vectors."""
        x = np.asarray(x)
        m = self.grid.num_points
        return tuple(x[i * m:(i + 1) * m] for i in range(self.num_components))


def _check_state(problem: Problem, x) -> Array:
    x = x.values if isinstance(x, Field) else np.asarray(x)
    if x.shape != (problem.state_dim,):
        raise DimensionMismatchError(
            f"state shape {x.shape} does not match problem dim {problem.state_dim}")
    return x


def eval_N(problem: Problem, x) -> Array:
    """Full nonlinearity N(x) = sum_j N_j(x)."""
    x = _check_state(problem, x)
    out = problem.terms[0].evaluate(x)
    for term in problem.terms[1:]:
        out = out + term.evaluate(x)
    return out


def eval_N_jacobian(problem: Problem, x) -> Array:
    """Dense analytic Jacobian N'(x) = sum_j N_j'(x)."""
    x = _check_state(problem, x)
    out = problem.terms[0].jacobian(x)
    for term in problem.terms[1:]:
        out = out + term.jacobian(x)
    return out


def exact_profile(x, mu: float, alpha: float, beta: float, sigma: float):
    """Closed-form two-power ground state (A / (B + cosh(D x)))**(1/sigma).

    B = sign(alpha) / sqrt(1 + (2+sigma)^2*beta*mu / ((1+sigma)*alpha^2)),
    A = (2+sigma)*B*mu/alpha, D = sigma*sqrt(mu).
    Valid for the |U|^sigma / |U|^(2*sigma) power pair.  The constant A
    carries the factor B, not beta: only then does the profile satisfy
    mu*U - U'' = alpha*U^(sigma+1) + beta*U^(2*sigma+1), as the translation
    eigenvalue of the iteration matrix independently confirms.
    """
    if alpha == 0:
        raise ConfigurationError("exact profile requires alpha != 0")
    if mu <= 0 or sigma <= 0:
        raise ConfigurationError("exact profile requires mu > 0 and sigma > 0")
    root_arg = 1.0 + (2.0 + sigma) ** 2 * beta * mu / ((1.0 + sigma) * alpha ** 2)
    if root_arg <= 0:
        raise ConfigurationError(f"root argument {root_arg:.6g} must be positive")
    D = sigma * math.sqrt(mu)
    B = math.copysign(1.0, alpha) / math.sqrt(root_arg)
    A = (2.0 + sigma) * B * mu / alpha
    denom = B + np.cosh(D * np.asarray(x, dtype=float))
    if np.any(denom <= 0):
        raise ConfigurationError("profile denominator B + cosh(D x) must stay positive")
    base = A / denom
    if np.any(base < 0):
        raise ConfigurationError("profile base must be nonnegative for the 1/sigma root")
    out = base ** (1.0 / sigma)
    if np.ndim(x) == 0:
        return float(out)
    return out


def _nls_linear_matrix(grid: GridSpec, mu: float, potential=None) -> Array:
    L = mu * np.eye(grid.num_points) - grid.diff_matrix(2)
    if potential is not None:
        L = L + np.diag(potential(grid.nodes))
    return L


def build_nls_power(mu: float, alpha: float, beta: float, m1: float, m2: float,
                    grid: GridSpec) -> Problem:
    """Two-power NLS stationary problem (mu*I - D^2) U = alpha|U|^m1 U + beta|U|^m2 U.

    When (m1, m2) = (sigma, 2*sigma) with alpha, beta > 0 the closed-form
    profile is attached as the exact solution.
    """
    if mu <= 0:
        raise ConfigurationError(f"mu must be positive, got {mu}")
    if m1 == m2:
        raise ConfigurationError("degenerate degrees: m1 and m2 must differ")
    terms = (power_term(alpha, m1), power_term(beta, m2))
    exact = None
    if m2 == 2 * m1 and alpha > 0 and beta > 0:
        exact = exact_profile(grid.nodes, mu, alpha, beta, m1)
    return Problem(
        name="nls-two-power",
        grid=grid,
        num_components=1,
        linear_matrix=_nls_linear_matrix(grid, mu),
        terms=terms,
        exact_solution=exact,
        params={"mu": mu, "alpha": alpha, "beta": beta, "m1": m1, "m2": m2},
    )


def build_gnls_double_well(mu: float, V0: float, x0: float, gamma: float,
                           grid: GridSpec) -> Problem:
    """Cubic-quintic problem with the symmetric double well -V0*(sech^2(x+x0)+sech^2(x-x0)).

    Terms are +|U|^2 U and -gamma*|U|^4 U; gamma = 0 degenerates to the single
    cubic term.
    """
    if mu <= 0 or V0 <= 0:
        raise ConfigurationError("mu and V0 must be positive")
    if gamma < 0:
        raise ConfigurationError(f"gamma must be nonnegative, got {gamma}")
    potential = PotentialSpec(depths=(V0, V0), centers=(-x0, x0))
    terms = [power_term(1.0, 2.0)]
    if gamma > 0:
        terms.append(power_term(-gamma, 4.0))
    return Problem(
        name="gnls-double-well",
        grid=grid,
        num_components=1,
        linear_matrix=_nls_linear_matrix(grid, mu, potential),
        terms=tuple(terms),
        params={"mu": mu, "V0": V0, "x0": x0, "gamma": gamma, "potential": potential},
    )


def build_gnls_three_term(mu: float, kappa: float, grid: GridSpec) -> Problem:
    """Cubic-quintic-septic problem with the asymmetric double well.

    V(x) = -3.5*sech^2(x+1.5) - 3*sech^2(x-1.5); terms +|U|^2 U, -0.2|U|^4 U,
    +kappa|U|^6 U.
    """
    if mu <= 0:
        raise ConfigurationError(f"mu must be positive, got {mu}")
    if kappa <= 0:
        raise ConfigurationError(f"kappa must be positive, got {kappa}")
    potential = PotentialSpec(depths=(3.5, 3.0), centers=(-1.5, 1.5))
    terms = (power_term(1.0, 2.0), power_term(-0.2, 4.0), power_term(kappa, 6.0))
    return Problem(
        name="gnls-three-term",
        grid=grid,
        num_components=1,
        linear_matrix=_nls_linear_matrix(grid, mu, potential),
        terms=terms,
        params={"mu": mu, "kappa": kappa, "potential": potential},
    )


def _boussinesq_terms(coeffs: BoussinesqCoefficients, m: int):
    d4, d5 = coeffs.d4, coeffs.d5
    zero = np.zeros((m, m))

    def eval_quadratic(x: Array) -> Array:
        eta, w = x[:m], x[m:]
        return np.concatenate([d4 * w * eta, 0.5 * d4 * w * w])

    def jac_quadratic(x: Array) -> Array:
        eta, w = x[:m], x[m:]
        return np.block([[np.diag(d4 * w), np.diag(d4 * eta)],
                         [zero, np.diag(d4 * w)]])

    def eval_cubic(x: Array) -> Array:
        eta, w = x[:m], x[m:]
        return np.concatenate([-d5 * w * eta * eta, -d5 * w * w * eta])

    def jac_cubic(x: Array) -> Array:
        eta, w = x[:m], x[m:]
        return np.block([[np.diag(-2.0 * d5 * w * eta), np.diag(-d5 * eta * eta)],
                         [np.diag(-d5 * w * w), np.diag(-2.0 * d5 * w * eta)]])

    return (HomogeneousTerm(2.0, "quadratic coupling", eval_quadratic, jac_quadratic),
            HomogeneousTerm(3.0, "cubic coupling", eval_cubic, jac_cubic))


def build_eboussinesq(r: float, H: float, c_s: float, grid: GridSpec,
                      s: Optional[float] = None) -> Problem:
    """Two-component solitary-wave system for the e-Boussinesq equations.

    State x = (eta, W) stacked.  L = [[c_s I, -(d1 I + d2 D^2)],
    [-(1/d1) I, c_s (I + d3 D^2)]]; the quadratic and cubic coupling terms
    carry the right-hand side's overall sign so that L x = N(x).
    """
    coeffs = BoussinesqCoefficients(r=r, H=H, c_s=c_s, s=s)
    m = grid.num_points
    eye = np.eye(m)
    D2 = grid.diff_matrix(2)
    L = np.block([
        [c_s * eye, -(coeffs.d1 * eye + coeffs.d2 * D2)],
        [-(1.0 / coeffs.d1) * eye, c_s * (eye + coeffs.d3 * D2)],
    ])
    return Problem(
        name="eboussinesq",
        grid=grid,
        num_components=2,
        linear_matrix=L,
        terms=_boussinesq_terms(coeffs, m),
        params={"r": r, "H": H, "c_s": c_s, "s": coeffs.s, "coefficients": coeffs},
    )

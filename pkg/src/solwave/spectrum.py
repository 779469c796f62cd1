"""Iteration matrices S = L^{-1} N'(x) and F'(x), and their leading spectra.

F'(x) is available in four builds: the analytic Jacobian of the extended
step (ground truth at any point), a closed two-term fixed-point formula,
a three-term rank-one form that lacks the leading S-type part (kept as
its own mode precisely so the discrepancy can be quantified), and a
central finite difference of one extended step as an independent oracle.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConfigurationError, DegenerateIterateError
from .grid import Field
from .io_utils import atomic_write_text
from .iteration import extended_step, stabilizing_factor
from .problems import Problem, eval_N, eval_N_jacobian

MODE_ANALYTIC = "analytic-general"
MODE_TWO_TERM = "paper-two-term"
MODE_ITERMAT2 = "paper-itermat2"
MODE_FINITE_DIFF = "finite-difference"
MODES = (MODE_ANALYTIC, MODE_TWO_TERM, MODE_ITERMAT2, MODE_FINITE_DIFF)

FD_STEP_SCALE = 1e-6


def _state(problem: Problem, x) -> np.ndarray:
    x = x.values if isinstance(x, Field) else np.asarray(x, dtype=float)
    if x.shape != (problem.state_dim,):
        raise ConfigurationError(
            f"state shape {x.shape} does not match problem dim {problem.state_dim}")
    return x


def build_S(problem: Problem, x) -> np.ndarray:
    """Classical-iteration matrix L^{-1} N'(x) from the analytic Jacobian."""
    x = _state(problem, x)
    return problem.solve_linear(eval_N_jacobian(problem, x))


def grad_stabilizing_factor(problem: Problem, x) -> np.ndarray:
    """Gradient of m(x) = <L x, x> / <N(x), x> by the quotient rule.

    grad m = [(L + L^T) x * <N, x> - <L x, x> * (N'(x)^T x + N(x))] / <N, x>^2.
    """
    x = _state(problem, x)
    L = problem.linear_matrix
    N = eval_N(problem, x)
    J = eval_N_jacobian(problem, x)
    denom = float(np.dot(N, x))
    if abs(denom) < 1e-300:
        raise DegenerateIterateError("gradient of the stabilizing factor is undefined at x")
    num = float(np.dot(L @ x, x))
    grad_num = L @ x + L.T @ x
    grad_den = J.T @ x + N
    return (grad_num * denom - num * grad_den) / denom ** 2


def _resolve_gammas(problem: Problem, gammas: Sequence) -> tuple:
    gammas = tuple(float(g) for g in gammas)
    if len(gammas) != len(problem.terms):
        raise ConfigurationError(
            f"{len(gammas)} exponents supplied for {len(problem.terms)} terms")
    return gammas


def _factor_powers(m: float, gammas: tuple) -> list:
    if m <= 0 and any(g != int(g) for g in gammas):
        raise ConfigurationError(
            f"stabilizing factor {m:.6e} is not positive; fractional exponents are undefined")
    return [m ** g for g in gammas]


def _analytic_F(problem: Problem, x: np.ndarray, gammas: tuple) -> np.ndarray:
    m = stabilizing_factor(problem, x)
    powers = _factor_powers(m, gammas)
    grad_m = grad_stabilizing_factor(problem, x)
    out = np.zeros((problem.state_dim, problem.state_dim))
    for term, g, mg in zip(problem.terms, gammas, powers):
        out += mg * problem.solve_linear(term.jacobian(x))
        if g != 0.0:
            coeff = g * m ** (g - 1.0)
            out += np.outer(coeff * problem.solve_linear(term.evaluate(x)), grad_m)
    return out


def _two_term_F(problem: Problem, x: np.ndarray, gammas: tuple) -> np.ndarray:
    if len(problem.terms) != 2:
        raise ConfigurationError("the two-term build applies to exactly two terms")
    p1, p2 = (t.degree for t in problem.terms)
    S = build_S(problem, x)
    m = stabilizing_factor(problem, x)
    _factor_powers(m, gammas)
    grad_m = grad_stabilizing_factor(problem, x)
    grad_s1 = gammas[0] * m ** (gammas[0] - 1.0) * grad_m
    grad_s2 = gammas[1] * m ** (gammas[1] - 1.0) * grad_m
    v1 = (p2 * x - S @ x) / (p2 - p1)
    v2 = (p1 * x - S @ x) / (p2 - p1)
    return S + np.outer(v1, grad_s1) - np.outer(v2, grad_s2)


def _itermat2_F(problem: Problem, x: np.ndarray, gammas: tuple) -> np.ndarray:
    S = build_S(problem, x)
    v = np.zeros(problem.state_dim)
    for term, g in zip(problem.terms, gammas):
        Nj = term.evaluate(x)
        denom = float(np.dot(Nj, x))
        if abs(denom) < 1e-300:
            raise DegenerateIterateError(f"<N_j(x), x> vanishes for term {term.label!r}")
        v += (g / denom) * Nj
    return np.outer(v, x) @ (np.eye(problem.state_dim) - S)


def _finite_difference_F(problem: Problem, x: np.ndarray, gammas: tuple) -> np.ndarray:
    step = FD_STEP_SCALE * max(1.0, float(np.linalg.norm(x)))
    n = problem.state_dim
    out = np.empty((n, n))
    for i in range(n):
        xp = x.copy()
        xp[i] += step
        xm = x.copy()
        xm[i] -= step
        out[:, i] = (extended_step(problem, xp, gammas)
                     - extended_step(problem, xm, gammas)) / (2.0 * step)
    return out


def build_F_jacobian(problem: Problem, x, gammas: Sequence,
                     mode: str = MODE_ANALYTIC) -> np.ndarray:
    """Jacobian of the extended step x -> sum_j m(x)^{gamma_j} L^{-1} N_j(x)."""
    x = _state(problem, x)
    gammas = _resolve_gammas(problem, gammas)
    if mode == MODE_ANALYTIC:
        return _analytic_F(problem, x, gammas)
    if mode == MODE_TWO_TERM:
        return _two_term_F(problem, x, gammas)
    if mode == MODE_ITERMAT2:
        return _itermat2_F(problem, x, gammas)
    if mode == MODE_FINITE_DIFF:
        return _finite_difference_F(problem, x, gammas)
    raise ConfigurationError(f"unknown Jacobian mode {mode!r}, expected one of {MODES}")


def top_eigenvalues(matrix: np.ndarray, k: int) -> np.ndarray:
    """k largest-magnitude eigenvalues, ties by descending real then imaginary part."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ConfigurationError(f"square matrix required, got shape {matrix.shape}")
    if k < 1:
        raise ConfigurationError(f"k must be at least 1, got {k}")
    try:
        lam = np.linalg.eigvals(matrix)
    except np.linalg.LinAlgError as exc:
        raise ConfigurationError(f"eigensolver failed to converge: {exc}") from exc
    order = np.lexsort((-lam.imag, -lam.real, -np.abs(lam)))
    return lam[order][: min(k, matrix.shape[0])]


@dataclass(frozen=True)
class SpectrumReport:
    """Top-k eigenvalues of one iteration matrix with build provenance."""

    matrix_kind: str
    point: str
    eigenvalues: tuple
    gammas: Optional[tuple] = None
    problem_name: str = ""

    def __post_init__(self):
        eig = tuple(complex(v) for v in self.eigenvalues)
        mags = [abs(v) for v in eig]
        if any(a < b - 1e-12 * max(1.0, b) for a, b in zip(mags, mags[1:])):
            raise ConfigurationError("eigenvalues must be sorted by nonincreasing magnitude")
        object.__setattr__(self, "eigenvalues", eig)

    def spectral_radius(self, exclude_unit: bool = False, unit_tol: float = 1e-3) -> float:
        """Largest magnitude, optionally skipping one eigenvalue within unit_tol of 1."""
        mags = [abs(v) for v in self.eigenvalues]
        if exclude_unit:
            dist = [abs(v - 1.0) for v in self.eigenvalues]
            i = int(np.argmin(dist))
            if dist[i] < unit_tol:
                mags = mags[:i] + mags[i + 1:]
        if not mags:
            raise ConfigurationError("no eigenvalues left after exclusion")
        return max(mags)

    @staticmethod
    def format_value(v: complex) -> str:
        if v.imag == 0:
            return f"{v.real:.8E}"
        sign = "+" if v.imag >= 0 else "-"
        return f"{v.real:.8E}{sign}{abs(v.imag):.8E}i"

    def to_text(self) -> str:
        header = self.matrix_kind
        if self.gammas is not None:
            header += " gammas=(" + ", ".join(f"{g:g}" for g in self.gammas) + ")"
        lines = [header, f"at {self.point}"]
        lines += [self.format_value(v) for v in self.eigenvalues]
        return "\n".join(lines) + "\n"

    def to_json(self, path=None):
        payload = {
            "problem": self.problem_name,
            "matrix_kind": self.matrix_kind,
            "point": self.point,
            "gammas": None if self.gammas is None else list(self.gammas),
            "eigenvalues": [{"re": v.real, "im": v.imag} for v in self.eigenvalues],
        }
        if path is None:
            return payload
        atomic_write_text(path, json.dumps(payload, indent=2) + "\n")
        return payload


def spectrum_report(problem: Problem, x, kind: str, k: int = 6,
                    gammas: Optional[Sequence] = None,
                    point: str = "final iterate") -> SpectrumReport:
    """Build the requested matrix at x and report its k leading eigenvalues."""
    if kind == "S":
        matrix = build_S(problem, x)
        used = None
    elif kind in MODES:
        if gammas is None:
            raise ConfigurationError(f"matrix kind {kind!r} needs stabilizing exponents")
        matrix = build_F_jacobian(problem, x, gammas, mode=kind)
        used = tuple(float(g) for g in gammas)
    else:
        raise ConfigurationError(
            f"unknown matrix kind {kind!r}, expected 'S' or one of {MODES}")
    eig = top_eigenvalues(matrix, k)
    return SpectrumReport(
        matrix_kind=kind,
        point=point,
        eigenvalues=tuple(eig),
        gammas=used,
        problem_name=problem.name,
    )

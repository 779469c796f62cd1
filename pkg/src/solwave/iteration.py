"""Fixed-point engines for L x = N(x) and their per-iteration diagnostics.

Three schemes share one loop: the classical map x <- L^{-1} N(x), the
single-factor stabilized map x <- m(x)^gamma L^{-1} N(x), and the extended
family x <- sum_j m(x)^{gamma_j} L^{-1} N_j(x) with one exponent per
homogeneous term.  Every run records residuals, stabilizing-factor
discrepancies and (when a reference profile is attached) shift-aligned
errors, and ends with an explicit termination verdict.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np
import scipy.optimize

from .errors import ConfigurationError, DegenerateIterateError, DimensionMismatchError
from .grid import Field
from .io_utils import atomic_write_text
from .problems import Problem, eval_N, _sech

DEGENERATE_DENOM = 1e-300
DIVERGENCE_GROWTH = 1e6
FACTOR_SANITY = 0.1

REASON_CONVERGED = "converged"
REASON_MAX_ITERS = "max_iters"
REASON_DIVERGED = "diverged"
REASON_NON_FINITE = "non-finite"


def default_gammas(problem: Problem) -> tuple:
    """The stabilized-exponent default gamma_j = p_j / (p_j - 1)."""
    return tuple(t.degree / (t.degree - 1.0) for t in problem.terms)


@dataclass(frozen=True)
class FactorStrategy:
    """Which stabilizing factors multiply the update.

    variant "classic" uses none, "single" one exponent shared by all terms,
    "per_term" one exponent per homogeneous term.  Exponents left as None
    default to p_j / (p_j - 1).
    """

    variant: str
    gammas: Optional[tuple] = None

    _VARIANTS = ("classic", "single", "per_term")

    def __post_init__(self):
        if self.variant not in self._VARIANTS:
            raise ConfigurationError(
                f"unknown factor variant {self.variant!r}, expected one of {self._VARIANTS}")
        if self.variant == "classic" and self.gammas is not None:
            raise ConfigurationError("classic variant takes no exponents")
        if self.variant == "single" and self.gammas is not None and len(self.gammas) != 1:
            raise ConfigurationError("single variant takes exactly one exponent")

    @classmethod
    def classic(cls) -> "FactorStrategy":
        return cls("classic")

    @classmethod
    def single(cls, gamma: Optional[float] = None) -> "FactorStrategy":
        return cls("single", None if gamma is None else (float(gamma),))

    @classmethod
    def per_term(cls, gammas: Optional[Sequence] = None) -> "FactorStrategy":
        return cls("per_term", None if gammas is None else tuple(float(g) for g in gammas))

    def resolve(self, problem: Problem) -> tuple:
        """Exponent per term for this problem (zeros for the classic map)."""
        k = len(problem.terms)
        if self.variant == "classic":
            return (0.0,) * k
        if self.variant == "single":
            if self.gammas is not None:
                return (self.gammas[0],) * k
            p = problem.terms[0].degree
            return (p / (p - 1.0),) * k
        if self.gammas is None:
            return default_gammas(problem)
        if len(self.gammas) != k:
            raise ConfigurationError(
                f"{len(self.gammas)} exponents supplied for {k} terms")
        return self.gammas


@dataclass(frozen=True)
class InitialGuess:
    """Starting state descriptor: a named profile shape or explicit values.

    Multi-component problems replicate the shape per component; a scalar
    amplitude alternates sign across components (the second component of a
    solitary pair points the other way), a tuple gives one amplitude each.
    """

    kind: str = "gaussian"
    amplitude: object = 1.5
    width: float = 2.0
    center: float = 0.0
    separation: float = 1.5
    values: Optional[np.ndarray] = field(default=None, repr=False)

    _KINDS = ("gaussian", "sech", "dipole", "field")

    def __post_init__(self):
        if self.kind not in self._KINDS:
            raise ConfigurationError(
                f"unknown initial-guess kind {self.kind!r}, expected one of {self._KINDS}")
        if self.kind == "field" and self.values is None:
            raise ConfigurationError("kind 'field' requires explicit values")
        if self.width <= 0:
            raise ConfigurationError(f"width must be positive, got {self.width}")

    def _amplitudes(self, num_components: int) -> tuple:
        if np.ndim(self.amplitude) == 0:
            a = float(self.amplitude)
            return tuple(a * (-1.0) ** i for i in range(num_components))
        amps = tuple(float(a) for a in np.asarray(self.amplitude).ravel())
        if len(amps) != num_components:
            raise ConfigurationError(
                f"{len(amps)} amplitudes supplied for {num_components} components")
        return amps

    def build(self, problem: Problem) -> np.ndarray:
        if self.kind == "field":
            vals = np.asarray(self.values, dtype=float)
            if vals.shape != (problem.state_dim,):
                raise DimensionMismatchError(
                    f"guess length {vals.shape} does not match state dim {problem.state_dim}")
            return vals.copy()
        x = problem.grid.nodes - self.center
        if self.kind == "gaussian":
            shape = np.exp(-(x / self.width) ** 2)
        elif self.kind == "sech":
            shape = _sech(x / self.width)
        else:
            d = self.separation
            shape = np.exp(-((x - d) / self.width) ** 2) - np.exp(-((x + d) / self.width) ** 2)
        amps = self._amplitudes(problem.num_components)
        return np.concatenate([a * shape for a in amps])


@dataclass(frozen=True)
class IterationConfig:
    max_iters: int = 200
    residual_tol: float = 1e-12
    strategy: FactorStrategy = FactorStrategy.per_term()
    initial_guess: InitialGuess = InitialGuess()
    record_iterates: bool = False

    def __post_init__(self):
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters must be at least 1, got {self.max_iters}")
        if not self.residual_tol > 0:
            raise ConfigurationError(f"residual_tol must be positive, got {self.residual_tol}")


@dataclass
class IterationTrace:
    """Per-state diagnostics of one run; row n = 0 is the initial guess."""

    problem_name: str
    variant: str
    gammas: tuple
    residuals: np.ndarray
    factor_discrepancies: np.ndarray
    exact_errors: Optional[np.ndarray]
    final: np.ndarray
    reason: str
    detail: str = ""
    iterates: Optional[list] = None

    @property
    def iterations(self) -> int:
        """Completed iteration count (recorded states minus the initial one)."""
        return len(self.residuals) - 1

    @property
    def converged(self) -> bool:
        return self.reason == REASON_CONVERGED

    def error_ratios(self) -> np.ndarray:
        """Consecutive quotients e_n / e_{n-1} of the aligned errors."""
        if self.exact_errors is None:
            raise ConfigurationError("run recorded no exact errors")
        e = self.exact_errors
        return e[1:] / e[:-1]

    def summary(self) -> str:
        parts = [
            f"problem={self.problem_name}",
            f"variant={self.variant}",
            f"iterations={self.iterations}",
            f"reason={self.reason}",
            f"residual={self.residuals[-1]:.8e}",
        ]
        if self.exact_errors is not None:
            parts.append(f"exact_error={self.exact_errors[-1]:.8e}")
        if self.detail:
            parts.append(f"detail={self.detail}")
        return " ".join(parts)

    def to_csv(self, path) -> None:
        rows = []
        for n in range(len(self.residuals)):
            er = "" if self.exact_errors is None else f"{self.exact_errors[n]:.8e}"
            rows.append(f"{n},{self.residuals[n]:.8e},{self.factor_discrepancies[n]:.8e},{er}")
        text = "n,residual,factor_discrepancy,exact_error\n" + "\n".join(rows) + "\n"
        atomic_write_text(path, text)

    def to_json(self, path) -> None:
        payload = {
            "problem": self.problem_name,
            "variant": self.variant,
            "gammas": list(self.gammas),
            "reason": self.reason,
            "detail": self.detail,
            "iterations": self.iterations,
            "residuals": [float(v) for v in self.residuals],
            "factor_discrepancies": [float(v) for v in self.factor_discrepancies],
            "exact_errors": None if self.exact_errors is None
            else [float(v) for v in self.exact_errors],
            "final": [float(v) for v in self.final],
        }
        atomic_write_text(path, json.dumps(payload, indent=2) + "\n")


def _state(problem: Problem, x) -> np.ndarray:
    x = x.values if isinstance(x, Field) else np.asarray(x, dtype=float)
    if x.shape != (problem.state_dim,):
        raise DimensionMismatchError(
            f"state shape {x.shape} does not match problem dim {problem.state_dim}")
    return x


def stabilizing_factor(problem: Problem, x) -> float:
    """m(x) = <L x, x> / <N(x), x>; equals 1 at any solution of L x = N(x)."""
    x = _state(problem, x)
    denom = float(np.dot(eval_N(problem, x), x))
    if abs(denom) < DEGENERATE_DENOM:
        raise DegenerateIterateError(
            f"stabilizing factor undefined: <N(x), x> = {denom:.3e}")
    return float(np.dot(problem.apply_linear(x), x)) / denom


def extended_step(problem: Problem, x, gammas: Sequence) -> np.ndarray:
    """One update x -> sum_j m(x)^{gamma_j} L^{-1} N_j(x)."""
    x = _state(problem, x)
    gammas = tuple(gammas)
    if len(gammas) != len(problem.terms):
        raise ConfigurationError(
            f"{len(gammas)} exponents supplied for {len(problem.terms)} terms")
    if all(g == 0.0 for g in gammas):
        return problem.solve_linear(eval_N(problem, x))
    m = stabilizing_factor(problem, x)
    if m <= 0 and any(g != int(g) for g in gammas):
        raise DegenerateIterateError(
            f"stabilizing factor {m:.6e} is not positive; "
            "fractional exponents are undefined")
    pieces = np.column_stack([t.evaluate(x) for t in problem.terms])
    solved = problem.solve_linear(pieces)
    weights = np.array([m ** g for g in gammas])
    return solved @ weights


def residual_error(problem: Problem, x) -> float:
    """||L x - N(x)|| / ||reference||, reference = exact profile if attached else x."""
    x = _state(problem, x)
    num = float(np.linalg.norm(problem.apply_linear(x) - eval_N(problem, x)))
    if problem.exact_solution is not None:
        denom = float(np.linalg.norm(problem.exact_solution))
    else:
        denom = float(np.linalg.norm(x))
    if denom < DEGENERATE_DENOM:
        return 0.0 if num == 0.0 else np.inf
    return num / denom


def align_to_reference(grid, values: np.ndarray, reference: np.ndarray,
                       num_components: int = 1):
    """Best circular alignment of a (possibly stacked) state to a reference.

    Returns (shift, aligned values, relative error).  The shift maximizing
    the cross-correlation over grid translations is located by FFT, then
    refined below grid resolution with a bounded 1-D search over Fourier
    translations; all components share one shift.
    """
    values = np.asarray(values, dtype=float)
    reference = np.asarray(reference, dtype=float)
    m = grid.num_points
    if values.shape != reference.shape or values.shape != (num_components * m,):
        raise DimensionMismatchError("state and reference shapes must match the grid")
    ref_norm = np.linalg.norm(reference)
    if ref_norm == 0:
        raise ConfigurationError("cannot align to a zero reference")
    comps = values.reshape(num_components, m)
    refs = reference.reshape(num_components, m)

    corr = np.zeros(m)
    for c in range(num_components):
        corr += np.real(np.fft.ifft(np.fft.fft(refs[c]) * np.conj(np.fft.fft(comps[c]))))
    best = int(np.argmax(corr))

    def shifted(s: float) -> np.ndarray:
        return np.concatenate([grid.translate(comps[c], s) for c in range(num_components)])

    def err(s: float) -> float:
        return float(np.linalg.norm(shifted(s) - reference)) / ref_norm

    h = grid.spacing
    center = best * h
    # map to the symmetric branch so the refinement stays local
    if center > grid.half_length:
        center -= 2.0 * grid.half_length
    result = scipy.optimize.minimize_scalar(
        err, bounds=(center - h, center + h), method="bounded",
        options={"xatol": 1e-13})
    s0 = float(result.x)
    if err(0.0) <= result.fun:
        s0 = 0.0
    return s0, shifted(s0), err(s0)


def exact_error(problem: Problem, x) -> float:
    """Shift-aligned relative error min_s ||x(. - s) - exact|| / ||exact||."""
    if problem.exact_solution is None:
        raise ConfigurationError(f"problem {problem.name!r} has no exact solution attached")
    x = _state(problem, x)
    _, _, e = align_to_reference(problem.grid, x, np.asarray(problem.exact_solution),
                                 problem.num_components)
    return e


def _factor_discrepancy(problem: Problem, x: np.ndarray) -> float:
    try:
        return abs(stabilizing_factor(problem, x) - 1.0)
    except DegenerateIterateError:
        return np.nan


def _run(problem: Problem, config: IterationConfig) -> IterationTrace:
    gammas = config.strategy.resolve(problem)
    x = config.initial_guess.build(problem)
    has_exact = problem.exact_solution is not None

    residuals = [residual_error(problem, x)]
    discrepancies = [_factor_discrepancy(problem, x)]
    errors = [exact_error(problem, x)] if has_exact else None
    iterates = [x.copy()] if config.record_iterates else None

    def settled(res: float, disc: float) -> bool:
        # a residual below tolerance only counts as convergence while the
        # stabilizing factor stays near 1; a collapse toward the trivial
        # zero solution drives the residual down but m(x) away from 1
        return res < config.residual_tol and disc < FACTOR_SANITY

    reason, detail = REASON_MAX_ITERS, ""
    if settled(residuals[0], discrepancies[0]):
        reason = REASON_CONVERGED
        detail = "initial guess already satisfies the tolerance"
    else:
        min_residual = max(residuals[0], np.finfo(float).tiny)
        for _ in range(config.max_iters):
            try:
                x_new = extended_step(problem, x, gammas)
            except DegenerateIterateError as exc:
                reason, detail = REASON_DIVERGED, f"degenerate iterate: {exc}"
                break
            if not np.all(np.isfinite(x_new)):
                reason, detail = REASON_NON_FINITE, "iterate left the representable range"
                x = x_new
                break
            x = x_new
            if np.linalg.norm(x) <= DEGENERATE_DENOM:
                reason, detail = REASON_DIVERGED, "degenerate zero iterate"
                break
            residuals.append(residual_error(problem, x))
            discrepancies.append(_factor_discrepancy(problem, x))
            if has_exact:
                errors.append(exact_error(problem, x))
            if iterates is not None:
                iterates.append(x.copy())
            if settled(residuals[-1], discrepancies[-1]):
                reason = REASON_CONVERGED
                break
            min_residual = min(min_residual, residuals[-1])
            if residuals[-1] > DIVERGENCE_GROWTH * min_residual:
                reason = REASON_DIVERGED
                detail = (f"residual grew to {residuals[-1]:.3e}, "
                          f"{DIVERGENCE_GROWTH:.0e} times its minimum {min_residual:.3e}")
                break

    finite = np.all(np.isfinite(x))
    return IterationTrace(
        problem_name=problem.name,
        variant=config.strategy.variant,
        gammas=gammas,
        residuals=np.array(residuals),
        factor_discrepancies=np.array(discrepancies),
        exact_errors=None if errors is None else np.array(errors),
        final=x if finite else np.asarray(x),
        reason=reason,
        detail=detail,
        iterates=iterates,
    )


def iterate_classic(problem: Problem, config: IterationConfig) -> IterationTrace:
    """Unstabilized fixed-point run x <- L^{-1} N(x)."""
    cfg = IterationConfig(
        max_iters=config.max_iters,
        residual_tol=config.residual_tol,
        strategy=FactorStrategy.classic(),
        initial_guess=config.initial_guess,
        record_iterates=config.record_iterates,
    )
    return _run(problem, cfg)


def iterate_petviashvili(problem: Problem, config: IterationConfig) -> IterationTrace:
    """Single-factor stabilized run x <- m(x)^gamma L^{-1} N(x)."""
    if config.strategy.variant != "single":
        raise ConfigurationError("this engine requires a single shared exponent")
    return _run(problem, config)


def iterate_extended(problem: Problem, config: IterationConfig) -> IterationTrace:
    """Per-term stabilized run x <- sum_j m(x)^{gamma_j} L^{-1} N_j(x)."""
    if config.strategy.variant not in ("per_term", "single"):
        raise ConfigurationError("this engine requires stabilizing exponents")
    return _run(problem, config)

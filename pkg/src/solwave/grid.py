"""Periodic Fourier collocation grid and pseudospectral operations.

A grid discretizes the symmetric interval (-l, l) with m equispaced nodes
x_j = -l + j*h, h = 2l/m.  Derivatives are computed through the discrete
Fourier transform with integer wavenumbers scaled by pi/l; the Nyquist mode
is zeroed for odd derivative orders so that real input stays real.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import ConfigurationError, DimensionMismatchError

MAX_DIFF_ORDER = 3


@dataclass(frozen=True)
class GridSpec:
    """Equispaced periodic collocation grid on (-l, l).

    Parameters
    ----------
    half_length : float
        Half-width l of the periodic interval.
    num_points : int
        Number of collocation nodes m; must be even and at least 8.
    """

    half_length: float
    num_points: int

    def __post_init__(self):
        l, m = self.half_length, self.num_points
        if not np.isfinite(l) or l <= 0:
            raise ConfigurationError(f"half_length must be positive, got {l}")
        if m % 2 != 0:
            raise ConfigurationError(f"m must be even, got {m}")
        if m < 8:
            raise ConfigurationError(f"m must be at least 8, got {m}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_length / self.num_points

    @cached_property
    def nodes(self) -> np.ndarray:
        x = -self.half_length + self.spacing * np.arange(self.num_points)
        x.setflags(write=False)
        return x

    @cached_property
    def wavenumbers(self) -> np.ndarray:
        """Scaled wavenumbers k*pi/l in FFT layout (0, 1, ..., -m/2, ..., -1)."""
        k = np.fft.fftfreq(self.num_points, d=1.0 / self.num_points)
        k = k * (np.pi / self.half_length)
        k.setflags(write=False)
        return k

    def symbol(self, order: int) -> np.ndarray:
        """Fourier multiplier (i*k*pi/l)**order with the odd-order Nyquist zeroed."""
        if order not in range(1, MAX_DIFF_ORDER + 1):
            raise ConfigurationError(f"derivative order must be in 1..{MAX_DIFF_ORDER}, got {order}")
        sym = (1j * self.wavenumbers) ** order
        if order % 2 == 1:
            sym[self.num_points // 2] = 0.0
        return sym

    def derivative(self, values: np.ndarray, order: int = 1) -> np.ndarray:
        """Spectral derivative of nodal values (real input gives real output)."""
        values = np.asarray(values)
        if values.shape != (self.num_points,):
            raise DimensionMismatchError(
                f"expected {self.num_points} nodal values, got shape {values.shape}")
        out = np.fft.ifft(self.symbol(order) * np.fft.fft(values))
        if np.isrealobj(values):
            return out.real
        return out

    def diff_matrix(self, order: int = 1) -> np.ndarray:
        """Dense differentiation matrix consistent with :meth:`derivative`."""
        m = self.num_points
        eye_hat = np.fft.fft(np.eye(m), axis=0)
        return np.fft.ifft(self.symbol(order)[:, None] * eye_hat, axis=0).real

    def translate(self, values: np.ndarray, shift: float) -> np.ndarray:
        """Periodic translation by an arbitrary (sub-grid) shift via the FFT."""
        values = np.asarray(values)
        if values.shape != (self.num_points,):
            raise DimensionMismatchError(
                f"expected {self.num_points} nodal values, got shape {values.shape}")
        phase = np.exp(-1j * self.wavenumbers * shift)
        # keep the Nyquist coefficient real-compatible for real fields
        phase[self.num_points // 2] = np.cos(self.wavenumbers[self.num_points // 2] * shift)
        out = np.fft.ifft(phase * np.fft.fft(values))
        if np.isrealobj(values):
            return out.real
        return out


def make_grid(half_length: float, num_points: int) -> GridSpec:
    """Build and validate a periodic collocation grid on (-l, l)."""
    return GridSpec(float(half_length), int(num_points))


@dataclass(frozen=True)
class Field:
    """Nodal values attached to the grid they were sampled on.

    Carrying the grid lets operations reject silent mixed-resolution use.
    """

    grid: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.shape != (self.grid.num_points,):
            raise DimensionMismatchError(
                f"field length {vals.shape} does not match grid m={self.grid.num_points}")
        if not np.all(np.isfinite(vals)):
            raise ConfigurationError("field contains non-finite entries")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.values, dtype=dtype)

    def __len__(self):
        return self.grid.num_points

    def with_values(self, values: np.ndarray) -> "Field":
        return Field(self.grid, values)


def _as_values(u) -> np.ndarray:
    return u.values if isinstance(u, Field) else np.asarray(u)


def _check_same_grid(u, v):
    if isinstance(u, Field) and isinstance(v, Field) and u.grid != v.grid:
        raise DimensionMismatchError("fields live on different grids")


def diff_apply(f: Field, order: int = 1) -> Field:
    """Spectral derivative of a field (see :meth:`GridSpec.derivative`)."""
    return f.with_values(f.grid.derivative(f.values, order))


def diff_matrix(grid: GridSpec, order: int = 1) -> np.ndarray:
    """Dense pseudospectral differentiation matrix for the grid."""
    return grid.diff_matrix(order)


def inner(u, v):
    """Euclidean inner product sum_j u_j * conj(v_j); no quadrature weight.

    Real inputs give a plain dot product; complex inputs conjugate the
    second argument.
    """
    _check_same_grid(u, v)
    uv, vv = _as_values(u), _as_values(v)
    if uv.shape != vv.shape:
        raise DimensionMismatchError(f"length mismatch: {uv.shape} vs {vv.shape}")
    out = np.vdot(vv, uv)  # vdot conjugates its first argument
    if np.isrealobj(uv) and np.isrealobj(vv):
        return float(out.real)
    return complex(out)


def hadamard_power_product(u, exponent: float):
    """Elementwise |u_j|**exponent * u_j (exponent 0 returns u unchanged)."""
    if exponent < 0:
        raise ConfigurationError(f"exponent must be nonnegative, got {exponent}")
    vals = _as_values(u)
    if exponent == 0:
        out = vals.copy()
    else:
        out = np.abs(vals) ** exponent * vals
    if isinstance(u, Field):
        return u.with_values(out)
    return out

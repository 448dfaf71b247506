"""Wigner functions on rectangular phase-space grids.

Closed-form evaluators for Gaussian and Fock states, a numerical Wigner
transform of sampled wavefunctions, and the standard diagnostics:
marginals, overlaps, purity integral, bounds and negativity volume.

Conventions: the grid carries an explicit hbar (default 1).  The
covariance machinery is dimensionless (vacuum variance 1 per quadrature),
and the bridge to grid coordinates is |alpha|^2 = (q^2 + p^2) / (2 hbar),
i.e. grid coordinates are sqrt(hbar) times the dimensionless quadratures.
Every Wigner function is normalized to 1 and bounded by 1 / (pi hbar).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import DimensionError, GridAdequacyWarning, QuadratureError
from .states import GaussianState, gaussian_wigner_params

GRID_TOL = 1e-6
IMAG_TOL = 1e-8
N_MAX_LAGUERRE = 200
_BOUNDARY_LEAK = 1e-8


@dataclass(frozen=True)
class PhaseSpaceGrid:
    """Rectangular grid over one phase-space plane (q, p)."""

    q_min: float
    q_max: float
    p_min: float
    p_max: float
    n_q: int
    n_p: int
    hbar: float = 1.0

    def __post_init__(self):
        if self.q_max <= self.q_min or self.p_max <= self.p_min:
            raise ValueError("grid bounds must satisfy q_max > q_min and p_max > p_min")
        if self.n_q < 2 or self.n_p < 2:
            raise ValueError("need at least 2 points per axis")
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")

    @cached_property
    def q(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    @cached_property
    def p(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.n_p)

    @property
    def dq(self) -> float:
        return (self.q_max - self.q_min) / (self.n_q - 1)

    @property
    def dp(self) -> float:
        return (self.p_max - self.p_min) / (self.n_p - 1)

    def matches(self, other: "PhaseSpaceGrid") -> bool:
        return (
            self.n_q == other.n_q
            and self.n_p == other.n_p
            and np.isclose(self.q_min, other.q_min)
            and np.isclose(self.q_max, other.q_max)
            and np.isclose(self.p_min, other.p_min)
            and np.isclose(self.p_max, other.p_max)
            and np.isclose(self.hbar, other.hbar)
        )


def centered_grid(half_width: float, n: int = 201, hbar: float = 1.0) -> PhaseSpaceGrid:
    """Square grid spanning [-half_width, half_width] on both axes."""
    return PhaseSpaceGrid(
        q_min=-half_width,
        q_max=half_width,
        p_min=-half_width,
        p_max=half_width,
        n_q=n,
        n_p=n,
        hbar=hbar,
    )


@dataclass(frozen=True)
class WignerGrid:
    """Sampled real Wigner values, values[i, j] = W(q_i, p_j)."""

    grid: PhaseSpaceGrid
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.shape != (self.grid.n_q, self.grid.n_p):
            raise DimensionError(
                f"values must be {self.grid.n_q}x{self.grid.n_p}, got {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("Wigner values must be finite")
        bound = 1.0 / (np.pi * self.grid.hbar)
        if np.max(np.abs(vals)) > bound + GRID_TOL:
            raise ValueError(
                f"|W| exceeds the bound 1/(pi hbar) = {bound:.6g} beyond tolerance"
            )
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)


def _warn_if_inadequate(values: np.ndarray, grid: PhaseSpaceGrid) -> None:
    peak = np.max(np.abs(values))
    if peak == 0:
        return
    edge = max(
        np.max(np.abs(values[0, :])),
        np.max(np.abs(values[-1, :])),
        np.max(np.abs(values[:, 0])),
        np.max(np.abs(values[:, -1])),
    )
    if edge > _BOUNDARY_LEAK * peak:
        warnings.warn(
            f"grid boundary carries {edge / peak:.2e} of the peak Wigner value; "
            "widen the grid for accurate integrals",
            GridAdequacyWarning,
            stacklevel=3,
        )


def eval_gaussian(state: GaussianState, grid: PhaseSpaceGrid) -> WignerGrid:
    """Samples the closed-form Gaussian Wigner function of a one-mode state.

    W(q, p) = exp(-xi^T sigma^-1 xi) / (pi sqrt(det sigma) hbar) with
    xi = (q/sqrt(hbar) - mean_q, p/sqrt(hbar) - mean_p).
    """
    if state.n_modes != 1:
        raise DimensionError("grid evaluation supports single-mode states only")
    params = gaussian_wigner_params(state)
    root_hbar = np.sqrt(grid.hbar)
    dq = grid.q / root_hbar - state.mean[0]
    dp = grid.p / root_hbar - state.mean[1]
    m = params.cov_inv
    exponent = (
        m[0, 0] * dq[:, None] ** 2
        + m[1, 1] * dp[None, :] ** 2
        + 2.0 * m[0, 1] * dq[:, None] * dp[None, :]
    )
    values = (params.normalization / grid.hbar) * np.exp(-exponent)
    _warn_if_inadequate(values, grid)
    return WignerGrid(grid=grid, values=values)


def eval_fock(n: int, grid: PhaseSpaceGrid) -> WignerGrid:
    """Wigner function of the n-th Fock state.

    W = ((-1)^n / (pi hbar)) e^{-2|alpha|^2} L_n(4 |alpha|^2) with
    |alpha|^2 = (q^2 + p^2) / (2 hbar).  The Laguerre polynomial is
    evaluated through the damped three-term recurrence
    Lt_{k+1} = ((2k+1-x) Lt_k - k Lt_{k-1}) / (k+1) applied directly to
    Lt_k = e^{-x/2} L_k(x), which never overflows.
    """
    if n < 0:
        raise ValueError("n must be a non-negative integer")
    if n > N_MAX_LAGUERRE:
        raise ValueError(f"n = {n} exceeds the stable range (n <= {N_MAX_LAGUERRE})")
    x = 2.0 * (grid.q[:, None] ** 2 + grid.p[None, :] ** 2) / grid.hbar
    damped_prev = np.exp(-0.5 * x)  # e^{-x/2} L_0
    if n == 0:
        lag = damped_prev
    else:
        damped = (1.0 - x) * damped_prev  # e^{-x/2} L_1
        for k in range(1, n):
            damped, damped_prev = (
                ((2 * k + 1 - x) * damped - k * damped_prev) / (k + 1),
                damped,
            )
        lag = damped
    values = ((-1.0) ** n / (np.pi * grid.hbar)) * lag
    _warn_if_inadequate(values, grid)
    return WignerGrid(grid=grid, values=values)


@dataclass(frozen=True)
class SampledWavefunction:
    """Complex wavefunction sampled on a uniform position grid.

    Renormalized to unit L2 norm (trapezoidal rule) on construction;
    ``norm_deviation`` records how far the input was from normalized.
    """

    x_min: float
    x_max: float
    psi: np.ndarray
    norm_deviation: float = 0.0

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=complex).reshape(-1)
        if psi.size < 2:
            raise DimensionError("need at least 2 samples")
        if self.x_max <= self.x_min:
            raise ValueError("x_max must exceed x_min")
        x = np.linspace(self.x_min, self.x_max, psi.size)
        norm_sq = np.trapezoid(np.abs(psi) ** 2, x)
        if norm_sq <= 0:
            raise ValueError("wavefunction has zero norm")
        object.__setattr__(self, "norm_deviation", float(abs(norm_sq - 1.0)))
        psi = psi / np.sqrt(norm_sq)
        psi.setflags(write=False)
        object.__setattr__(self, "psi", psi)

    @property
    def n_x(self) -> int:
        return self.psi.size

    @cached_property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_x)

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / (self.n_x - 1)


def oscillator_eigenfunction(n: int, x: np.ndarray, hbar: float = 1.0) -> np.ndarray:
    """Harmonic-oscillator eigenfunction psi_n(x) at m = omega = 1.

    Uses the normalized recurrence
    phi_{n+1} = sqrt(2/(n+1)) z phi_n - sqrt(n/(n+1)) phi_{n-1},
    z = x / sqrt(hbar), which is stable for the moderate n used here.
    """
    z = np.asarray(x, dtype=float) / np.sqrt(hbar)
    phi_prev = np.pi ** (-0.25) * np.exp(-0.5 * z**2)
    if n == 0:
        return phi_prev / hbar**0.25
    phi = np.sqrt(2.0) * z * phi_prev
    for k in range(1, n):
        phi, phi_prev = (
            np.sqrt(2.0 / (k + 1)) * z * phi - np.sqrt(k / (k + 1.0)) * phi_prev,
            phi,
        )
    return phi / hbar**0.25


def wigner_from_wavefunction(psi: SampledWavefunction, grid: PhaseSpaceGrid) -> WignerGrid:
    """Numerical Wigner transform of a sampled pure-state wavefunction.

    Evaluates W(q, p) = (1/2 pi hbar) int dx e^{-i p x / hbar}
    psi(q + x/2) psi*(q - x/2) by the trapezoidal rule, with linear
    interpolation of psi at the shifted points (zero outside the sampling
    window).  The imaginary residue is checked against IMAG_TOL (relative)
    and discarded.

    The wavefunction should be sampled at least 4x finer than the grid's
    q spacing for the advertised accuracy; a warning is emitted otherwise.
    """
    if grid.q_min < psi.x_min or grid.q_max > psi.x_max:
        raise ValueError("grid q-range must lie inside the wavefunction window")
    if psi.dx > 0.25 * grid.dq:
        warnings.warn(
            f"wavefunction step {psi.dx:.3g} is coarser than a quarter of the grid "
            f"step {grid.dq:.3g}; results may miss the advertised tolerance",
            GridAdequacyWarning,
            stacklevel=2,
        )
    half_span = psi.x_max - psi.x_min
    n_half = int(np.ceil(half_span / psi.dx))
    x_quad = np.arange(-n_half, n_half + 1) * psi.dx

    def interp(points):
        re = np.interp(points, psi.x, psi.psi.real, left=0.0, right=0.0)
        im = np.interp(points, psi.x, psi.psi.imag, left=0.0, right=0.0)
        return re + 1j * im

    plus = interp(grid.q[:, None] + 0.5 * x_quad[None, :])
    minus = np.conj(interp(grid.q[:, None] - 0.5 * x_quad[None, :]))
    correl = plus * minus

    weights = np.full(x_quad.size, psi.dx)
    weights[0] *= 0.5
    weights[-1] *= 0.5
    kernel = weights[:, None] * np.exp(-1j * np.outer(x_quad, grid.p) / grid.hbar)
    w_complex = correl @ kernel / (2.0 * np.pi * grid.hbar)

    scale = np.max(np.abs(w_complex.real))
    residue = np.max(np.abs(w_complex.imag))
    if scale > 0 and residue > IMAG_TOL * scale:
        raise QuadratureError(
            f"imaginary residue {residue:.3e} exceeds {IMAG_TOL:.1e} of the peak {scale:.3e}"
        )
    values = w_complex.real
    _warn_if_inadequate(values, grid)
    return WignerGrid(grid=grid, values=values)


def marginal_q(w: WignerGrid) -> np.ndarray:
    """Position distribution: W integrated over p (trapezoidal)."""
    return np.trapezoid(w.values, w.grid.p, axis=1)


def marginal_p(w: WignerGrid) -> np.ndarray:
    """Momentum distribution: W integrated over q (trapezoidal)."""
    return np.trapezoid(w.values, w.grid.q, axis=0)


def _integrate2d(values: np.ndarray, grid: PhaseSpaceGrid) -> float:
    return float(np.trapezoid(np.trapezoid(values, grid.p, axis=1), grid.q))


def normalization(w: WignerGrid) -> float:
    """Integral of W over the grid; 1 for an adequate grid."""
    return _integrate2d(w.values, w.grid)


def overlap(w1: WignerGrid, w2: WignerGrid) -> float:
    """Tr(rho1 rho2) = 2 pi hbar * double integral of W1 W2.

    Requires both functions sampled on the same grid.
    """
    if not w1.grid.matches(w2.grid):
        raise DimensionError("Wigner grids do not match")
    return 2.0 * np.pi * w1.grid.hbar * _integrate2d(w1.values * w2.values, w1.grid)


@dataclass(frozen=True)
class PurityBounds:
    """Diagnostics: purity integral, extremes, and negativity volume."""

    purity_integral: float
    max_abs: float
    min_value: float
    negativity_volume: float


def purity_and_bounds(w: WignerGrid) -> PurityBounds:
    """2 pi hbar * int W^2 (equals Tr rho^2 <= 1), the extreme values, and
    the integral of the negative part of W."""
    grid = w.grid
    return PurityBounds(
        purity_integral=2.0 * np.pi * grid.hbar * _integrate2d(w.values**2, grid),
        max_abs=float(np.max(np.abs(w.values))),
        min_value=float(np.min(w.values)),
        negativity_volume=_integrate2d(np.maximum(-w.values, 0.0), grid),
    )

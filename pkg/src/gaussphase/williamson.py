"""Symplectic spectrum and constructive symplectic (Williamson) diagonalization.

Any real symmetric positive definite matrix F of even dimension can be
brought to the normal form

    Sigma F Sigma^T = diag(nu_1, nu_1, ..., nu_n, nu_n)

by a symplectic matrix Sigma.  The nu_i (the symplectic spectrum) are the
moduli of the purely imaginary eigenvalues of F Omega^-1.  The diagonalizer
is assembled as Sigma = Fdiag^(1/2) K U^dagger F^(-1/2), where U unitarily
diagonalizes the antisymmetric matrix Y = F^(-1/2) Omega F^(-1/2) and K is
a fixed block unitary mixing each conjugate eigenvector pair into a real
basis.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ConditioningWarning, DiagonalizationError, DimensionError, NoGroundStateError
from .symplectic import (
    DEFAULT_SYMPLECTIC_TOL,
    Ordering,
    SymplecticForm,
    check_symplectic,
    make_symplectic_form,
)

DEFAULT_WILLIAMSON_TOL = 1e-8
DEFAULT_REALNESS_TOL = 1e-8
_COND_FLOOR = 1e-12


def _validate_spd(f: np.ndarray, name: str = "matrix") -> np.ndarray:
    f = np.asarray(f, dtype=float)
    if f.ndim != 2 or f.shape[0] != f.shape[1] or f.shape[0] % 2 != 0:
        raise DimensionError(f"{name} must be square with even dimension, got shape {f.shape}")
    if np.max(np.abs(f - f.T)) > 1e-10 * max(1.0, np.max(np.abs(f))):
        raise ValueError(f"{name} must be symmetric")
    eigs = np.linalg.eigvalsh(f)
    if eigs[0] <= 0:
        raise ValueError(f"{name} must be positive definite (min eigenvalue {eigs[0]:.3e})")
    if eigs[0] <= _COND_FLOOR * eigs[-1]:
        warnings.warn(
            f"{name} is nearly singular (eigenvalue ratio {eigs[0] / eigs[-1]:.3e})",
            ConditioningWarning,
            stacklevel=3,
        )
    return 0.5 * (f + f.T)


def symplectic_spectrum(
    f: np.ndarray,
    form: SymplecticForm | None = None,
    tol: float = DEFAULT_WILLIAMSON_TOL,
) -> np.ndarray:
    """Symplectic eigenvalues of a symmetric positive definite matrix.

    The eigenvalues of F Omega^-1 come in conjugate pairs +/- i*nu_i; the
    returned spectrum is the n moduli sorted ascending.

    Raises:
        ValueError: if ``f`` is not symmetric positive definite, or if the
            eigenvalues of F Omega^-1 have real parts beyond tol * ||f||
            (numerical degeneracy).
    """
    f = _validate_spd(f, "f")
    n = f.shape[0] // 2
    if form is None:
        form = make_symplectic_form(n, Ordering.PAIRWISE)
    if form.n_modes != n:
        raise DimensionError(f"form has {form.n_modes} modes, matrix has {n}")
    vals = np.linalg.eigvals(f @ form.omega_inv)
    scale = np.max(np.abs(f))
    if np.max(np.abs(vals.real)) > tol * scale:
        raise ValueError(
            "eigenvalues of F Omega^-1 are not purely imaginary "
            f"(max |Re| = {np.max(np.abs(vals.real)):.3e}); numerically degenerate input"
        )
    moduli = np.sort(np.abs(vals.imag))
    nu = moduli[0::2]
    if np.max(np.abs(moduli[0::2] - moduli[1::2])) > tol * max(scale, 1.0):
        raise ValueError("eigenvalues of F Omega^-1 do not pair up; numerically degenerate input")
    return nu


@dataclass(frozen=True)
class WilliamsonDecomposition:
    """Result of a symplectic diagonalization.

    Attributes:
        nu: symplectic eigenvalues, sorted ascending, length n.
        sigma: the symplectic matrix Sigma with Sigma F Sigma^T = diag_form.
        diag_form: direct sum of diag(nu_i, nu_i) blocks.
        residual_diag: max-norm of Sigma F Sigma^T - diag_form.
        residual_symplectic: max-norm of Sigma Omega^-1 Sigma^T - Omega^-1.
    """

    nu: np.ndarray
    sigma: np.ndarray
    diag_form: np.ndarray
    residual_diag: float
    residual_symplectic: float


def _inverse_sqrt(f: np.ndarray) -> np.ndarray:
    """F^(-1/2) of an SPD matrix via symmetric eigendecomposition."""
    vals, vecs = np.linalg.eigh(f)
    if vals[0] <= _COND_FLOOR * vals[-1]:
        warnings.warn(
            f"inverse square root of nearly singular matrix (ratio {vals[0] / vals[-1]:.3e})",
            ConditioningWarning,
            stacklevel=3,
        )
    return (vecs / np.sqrt(vals)) @ vecs.T


def _phase_fix(v: np.ndarray) -> np.ndarray:
    """Rotates an eigenvector by a unit phase so that its largest-magnitude
    component is real positive, making the sign convention deterministic."""
    j = int(np.argmax(np.abs(v)))
    phase = v[j] / abs(v[j])
    return v / phase


def williamson_decompose(
    f: np.ndarray,
    form: SymplecticForm | None = None,
    tol: float = DEFAULT_WILLIAMSON_TOL,
    realness_tol: float = DEFAULT_REALNESS_TOL,
) -> WilliamsonDecomposition:
    """Symplectically diagonalizes a symmetric positive definite matrix.

    Implements the constructive algorithm: compute the symplectic spectrum,
    form Y = F^(-1/2) Omega F^(-1/2), diagonalize the Hermitian matrix iY,
    pair each eigenvector with its complex conjugate, and assemble the real
    orthogonal matrix O = K U^dagger, giving Sigma = Fdiag^(1/2) O F^(-1/2).

    Within a degenerate group of symplectic eigenvalues Sigma is not unique;
    the eigensolver output order is kept after a QR re-orthonormalization.

    Raises:
        DiagonalizationError: if O fails to be real within ``realness_tol``.
    """
    f = _validate_spd(f, "f")
    n = f.shape[0] // 2
    if form is None:
        form = make_symplectic_form(n, Ordering.PAIRWISE)
    nu = symplectic_spectrum(f, form, tol)

    f_inv_sqrt = _inverse_sqrt(f)
    y = f_inv_sqrt @ form.omega @ f_inv_sqrt
    y = 0.5 * (y - y.T)  # enforce antisymmetry against roundoff

    # Hermitian iY has eigenvalues -1/nu_k (ascending for nu ascending) in the
    # first n slots returned by eigh; the +1/nu_k partners are the conjugates.
    herm_vals, herm_vecs = np.linalg.eigh(1j * y)
    neg_vals = herm_vals[:n]
    vecs = herm_vecs[:, :n].copy()
    expected = -1.0 / nu
    if np.max(np.abs(neg_vals - expected)) > max(tol, 1e-9) * max(1.0, np.max(1.0 / nu)):
        raise DiagonalizationError(
            "eigenvalues of iY do not match the symplectic spectrum "
            f"(max deviation {np.max(np.abs(neg_vals - expected)):.3e})"
        )

    # QR re-orthonormalization inside degenerate nu groups, then a
    # deterministic phase per eigenvector.
    groups = _degenerate_groups(nu, tol)
    for lo, hi in groups:
        if hi - lo > 1:
            q_block, _ = np.linalg.qr(vecs[:, lo:hi])
            vecs[:, lo:hi] = q_block
    for k in range(n):
        vecs[:, k] = _phase_fix(vecs[:, k])

    u = np.empty((2 * n, 2 * n), dtype=complex)
    u[:, 0::2] = vecs
    u[:, 1::2] = vecs.conj()

    k_mat = np.zeros((2 * n, 2 * n), dtype=complex)
    inv_sqrt2 = 1.0 / np.sqrt(2.0)
    for i in range(n):
        k_mat[2 * i, 2 * i] = 1j * inv_sqrt2
        k_mat[2 * i, 2 * i + 1] = -1j * inv_sqrt2
        k_mat[2 * i + 1, 2 * i] = inv_sqrt2
        k_mat[2 * i + 1, 2 * i + 1] = inv_sqrt2

    o = k_mat @ u.conj().T
    realness = float(np.max(np.abs(o.imag)))
    if realness > realness_tol:
        raise DiagonalizationError(
            f"orthogonal factor has imaginary residue {realness:.3e} > {realness_tol:.1e}"
        )
    o = o.real

    diag_form = np.diag(np.repeat(nu, 2))
    sigma = np.sqrt(np.repeat(nu, 2))[:, None] * o @ f_inv_sqrt

    residual_diag = float(np.max(np.abs(sigma @ f @ sigma.T - diag_form)))
    residual_sympl = check_symplectic(sigma, form, DEFAULT_SYMPLECTIC_TOL).residual
    return WilliamsonDecomposition(
        nu=nu,
        sigma=sigma,
        diag_form=diag_form,
        residual_diag=residual_diag,
        residual_symplectic=residual_sympl,
    )


def _degenerate_groups(nu: np.ndarray, tol: float) -> list[tuple[int, int]]:
    """Half-open index ranges of equal (within tol) symplectic eigenvalues."""
    groups = []
    start = 0
    for k in range(1, len(nu) + 1):
        if k == len(nu) or abs(nu[k] - nu[start]) > tol * max(1.0, nu[start]):
            groups.append((start, k))
            start = k
    return groups


def normal_mode_ground_state(hamiltonian, hbar: float = 1.0):
    """Ground state of a positive definite quadratic Hamiltonian.

    Symplectically diagonalizes the Hamiltonian matrix into decoupled
    normal modes, places each in its ground state, and maps the covariance
    back to the original modes.  The two steps collapse to

        sigma = hbar * Sigma^T Sigma,

    with Sigma the Williamson diagonalizer of the Hamiltonian matrix.

    Args:
        hamiltonian: a ``QuadraticHamiltonian`` (its linear part is ignored;
            a linear term only displaces the ground state's mean).
        hbar: unit scale; keep the default 1 for dimensionless quadratures.

    Returns:
        GaussianState of the ground state (pure, mean zero).

    Raises:
        NoGroundStateError: if the Hamiltonian matrix is not positive
            definite (no normalizable ground state exists).
    """
    from .states import GaussianState

    f_bar = hamiltonian.f_bar
    eigs = np.linalg.eigvalsh(f_bar)
    if eigs[0] <= 0:
        raise NoGroundStateError(
            f"Hamiltonian matrix is not positive definite (min eigenvalue {eigs[0]:.3e})"
        )
    form = make_symplectic_form(hamiltonian.n_modes, hamiltonian.ordering)
    dec = williamson_decompose(f_bar, form)
    cov = hbar * dec.sigma.T @ dec.sigma
    mean = np.zeros(2 * hamiltonian.n_modes)
    return GaussianState(
        n_modes=hamiltonian.n_modes, mean=mean, cov=cov, ordering=hamiltonian.ordering
    )

"""Truncated Fock-space states and operators, used as a brute-force oracle.

Everything here works directly with ladder-operator matrices on a
truncated number basis, independently of the covariance-matrix machinery,
so that every Gaussian-side claim can be cross-checked against explicit
Hilbert-space arithmetic.  Truncation dimensions are caller supplied; the
constructors verify the probability mass lost to the cutoff and fail
loudly instead of silently renormalizing a bad truncation.

Quadratures are dimensionless, q = (a^dag + a)/sqrt(2),
p = i (a^dag - a)/sqrt(2), matching the covariance convention where the
vacuum has unit covariance.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import DimensionError, TruncationError

COHERENT_TAIL_TOL = 1e-12
SQUEEZED_TAIL_TOL = 1e-12
TMSV_TAIL_TOL = 1e-14
_DISPLACEMENT_SELF_CHECK_TOL = 1e-9


@dataclass(frozen=True)
class FockState:
    """Pure state vector on a truncated Fock basis (one or two modes).

    For two modes the amplitudes are stored flattened with the first mode
    as the slow index: amplitudes[i * dim + j] = <i, j | psi>.
    """

    amplitudes: np.ndarray
    dim: int
    n_modes: int = 1
    lost_mass: float = 0.0

    def __post_init__(self):
        amp = np.asarray(self.amplitudes, dtype=complex).reshape(-1)
        expected = self.dim**self.n_modes
        if amp.shape != (expected,):
            raise DimensionError(
                f"expected {expected} amplitudes for dim={self.dim}, "
                f"n_modes={self.n_modes}, got {amp.shape}"
            )
        norm = np.linalg.norm(amp)
        if norm == 0:
            raise ValueError("state vector is zero")
        amp = amp / norm
        amp.setflags(write=False)
        object.__setattr__(self, "amplitudes", amp)


@dataclass(frozen=True)
class FockDensity:
    """Hermitian, unit-trace density matrix on a truncated Fock basis."""

    matrix: np.ndarray
    dim: int

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (self.dim, self.dim):
            raise DimensionError(f"expected {self.dim}x{self.dim} matrix, got {rho.shape}")
        if np.max(np.abs(rho - rho.conj().T)) > 1e-10 * max(1.0, np.max(np.abs(rho))):
            raise ValueError("density matrix must be Hermitian")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > 1e-10:
            raise ValueError(f"density matrix trace {tr} != 1")
        if np.linalg.eigvalsh(rho)[0] < -1e-10:
            raise ValueError("density matrix has a negative eigenvalue beyond tolerance")
        rho = 0.5 * (rho + rho.conj().T)
        rho.setflags(write=False)
        object.__setattr__(self, "matrix", rho)


def ladder(dim: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Annihilation, creation and number matrices on a dim-level truncation.

    a|n> = sqrt(n)|n-1>; the commutator [a, a^dag] equals the identity
    except at the (dim-1, dim-1) entry, the unavoidable truncation artifact.
    """
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    a = np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)
    adag = a.conj().T
    number = np.diag(np.arange(dim, dtype=float)).astype(complex)
    return a, adag, number


def quadratures(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Dimensionless quadrature matrices (q, p) on a dim-level truncation."""
    a, adag, _ = ladder(dim)
    q = (adag + a) / np.sqrt(2.0)
    p = 1j * (adag - a) / np.sqrt(2.0)
    return q, p


def coherent_vector(alpha: complex, dim: int, tail_tol: float = COHERENT_TAIL_TOL) -> FockState:
    """Coherent state |alpha> = e^{-|alpha|^2/2} sum alpha^n/sqrt(n!) |n>.

    Raises:
        TruncationError: if the truncated expansion loses more than
            ``tail_tol`` probability mass.
    """
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    if alpha == 0:
        amp = np.zeros(dim, dtype=complex)
        amp[0] = 1.0
        return FockState(amplitudes=amp, dim=dim, lost_mass=0.0)
    n = np.arange(dim)
    log_mag = n * np.log(np.abs(alpha)) - 0.5 * gammaln(n + 1.0)
    phase = np.exp(1j * n * np.angle(alpha))
    amp = np.exp(log_mag - 0.5 * abs(alpha) ** 2) * phase
    lost = 1.0 - float(np.sum(np.abs(amp) ** 2))
    if lost > tail_tol:
        raise TruncationError(
            f"coherent state with |alpha|={abs(alpha):.3g} loses {lost:.3e} mass at dim={dim}"
        )
    return FockState(amplitudes=amp, dim=dim, lost_mass=max(lost, 0.0))


def displacement_matrix(eta: complex, dim: int) -> np.ndarray:
    """Displacement operator D(eta) on a truncated Fock basis.

    Matrix elements from the closed-form finite sum over ladder monomials
    (for n >= m; the n < m block follows from D(eta)^dag = D(-eta)).  The
    result is cross-checked against expm(eta a^dag - eta* a) on the low
    block (n, m < dim/2), a self-validating construction.
    """
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    d = np.zeros((dim, dim), dtype=complex)
    log_fact = gammaln(np.arange(dim + 1) + 1.0)
    pref = np.exp(-0.5 * abs(eta) ** 2)
    for n in range(dim):
        for m in range(n + 1):
            ell = n - m
            k = np.arange(m + 1)
            log_coef = (
                0.5 * (log_fact[n] + log_fact[m])
                - log_fact[k + ell]
                - log_fact[k]
                - log_fact[m - k]
            )
            terms = (-1.0) ** k * np.exp(log_coef) * eta ** (k + ell) * np.conj(eta) ** k
            d[n, m] = pref * np.sum(terms)
    # n < m block via D(eta)^dag = D(-eta): <n|D|m> = conj(<m|D(-eta)|n>)
    for n in range(dim):
        for m in range(n + 1, dim):
            ell = m - n
            k = np.arange(n + 1)
            log_coef = (
                0.5 * (log_fact[m] + log_fact[n])
                - log_fact[k + ell]
                - log_fact[k]
                - log_fact[n - k]
            )
            terms = (-1.0) ** k * np.exp(log_coef) * (-eta) ** (k + ell) * np.conj(-eta) ** k
            d[n, m] = pref * np.conj(np.sum(terms))
    a, adag, _ = ladder(dim)
    d_exp = expm(eta * adag - np.conj(eta) * a)
    low = dim // 2
    dev = np.max(np.abs(d[:low, :low] - d_exp[:low, :low]))
    if dev > _DISPLACEMENT_SELF_CHECK_TOL and abs(eta) ** 2 < dim / 4:
        raise RuntimeError(
            f"displacement self-check failed: closed form vs expm deviate by {dev:.3e}"
        )
    return d


def squeezed_vacuum_vector(
    r: float, theta: float = 0.0, dim: int = 60, tail_tol: float = SQUEEZED_TAIL_TOL
) -> FockState:
    """Single-mode squeezed vacuum in the Fock basis.

    Only even levels are populated:
    C_{2n} = (1/sqrt(cosh r)) (sqrt((2n)!)/(2^n n!)) (-e^{i theta} tanh r)^n,
    and the odd amplitudes are exactly zero.
    """
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    amp = np.zeros(dim, dtype=complex)
    if r == 0.0:
        amp[0] = 1.0
        return FockState(amplitudes=amp, dim=dim, lost_mass=0.0)
    n_pairs = (dim - 1) // 2
    n = np.arange(n_pairs + 1)
    log_fact = gammaln(n + 1.0)
    log_mag = (
        0.5 * gammaln(2 * n + 1.0)
        - n * np.log(2.0)
        - log_fact
        + n * np.log(np.tanh(abs(r)))
        - 0.5 * np.log(np.cosh(r))
    )
    base = -np.exp(1j * theta) * np.sign(np.tanh(r))  # unit phase of -e^{i theta} tanh r
    amp[2 * n] = np.exp(log_mag) * base**n
    lost = 1.0 - float(np.sum(np.abs(amp) ** 2))
    if lost > tail_tol:
        raise TruncationError(
            f"squeezed vacuum with r={r:.3g} loses {lost:.3e} mass at dim={dim}"
        )
    return FockState(amplitudes=amp, dim=dim, lost_mass=max(lost, 0.0))


def tmsv_vector(
    r: float, theta: float = 0.0, dim: int = 40, tail_tol: float = TMSV_TAIL_TOL
) -> FockState:
    """Two-mode squeezed vacuum: (1/cosh r) sum (-e^{i theta} tanh r)^n |n,n>.

    Excitations happen strictly in pairs, so the state is Schmidt diagonal.
    Note that this expansion carries the squeeze-operator normalization in
    which the reduced thermal occupation is sinh^2(r); the covariance-level
    two-mode squeezed vacuum with the same covariance corresponds to
    ``tmsv_vector(r/2)`` (see README on the factor-of-two convention).

    Raises:
        TruncationError: if tanh(r)^(2 dim) exceeds ``tail_tol``.
    """
    if dim < 2:
        raise DimensionError(f"dim must be >= 2, got {dim}")
    tail = np.tanh(abs(r)) ** (2 * dim)
    if tail > tail_tol:
        raise TruncationError(
            f"tmsv with r={r:.3g} has tail weight {tail:.3e} > {tail_tol:.1e} at dim={dim}"
        )
    n = np.arange(dim)
    coeff = (-np.exp(1j * theta) * np.tanh(r)) ** n / np.cosh(r)
    amp = np.zeros((dim, dim), dtype=complex)
    amp[n, n] = coeff
    lost = 1.0 - float(np.sum(np.abs(coeff) ** 2))
    return FockState(amplitudes=amp.reshape(-1), dim=dim, n_modes=2, lost_mass=max(lost, 0.0))


def thermal_density(nbar: float, dim: int) -> FockDensity:
    """Geometric (thermal) density matrix with mean occupation nbar."""
    if nbar < 0:
        raise ValueError("nbar must be non-negative")
    if nbar == 0:
        p = np.zeros(dim)
        p[0] = 1.0
    else:
        x = nbar / (1.0 + nbar)
        p = (1.0 - x) * x ** np.arange(dim)
        p = p / p.sum()  # renormalize the truncated geometric series
    return FockDensity(matrix=np.diag(p).astype(complex), dim=dim)


def density_from_state(state: FockState) -> FockDensity:
    """|psi><psi| for a single-mode pure state."""
    if state.n_modes != 1:
        raise DimensionError("density_from_state expects a single-mode state")
    v = state.amplitudes
    return FockDensity(matrix=np.outer(v, v.conj()), dim=state.dim)


def reduced_density(state: FockState, keep: int = 0) -> FockDensity:
    """Reduced density matrix of one mode of a two-mode pure state."""
    if state.n_modes != 2:
        raise DimensionError("reduced_density expects a two-mode state")
    if keep not in (0, 1):
        raise IndexError("keep must be 0 or 1")
    psi = state.amplitudes.reshape(state.dim, state.dim)
    rho = psi @ psi.conj().T if keep == 0 else psi.T @ psi.conj()
    rho = rho / np.trace(rho).real
    return FockDensity(matrix=rho, dim=state.dim)


def _expect1(obj: FockState | FockDensity, op: np.ndarray) -> complex:
    if isinstance(obj, FockDensity):
        return complex(np.trace(obj.matrix @ op))
    v = obj.amplitudes
    return complex(v.conj() @ (op @ v))


def _expect2(state: FockState, op1: np.ndarray, op2: np.ndarray) -> complex:
    """<psi| op1 (x) op2 |psi> for a two-mode pure state, without forming
    the dim^2 x dim^2 Kronecker product."""
    psi = state.amplitudes.reshape(state.dim, state.dim)
    return complex(np.sum(psi.conj() * (op1 @ psi @ op2.T)))


def covariance_from_fock(obj: FockState | FockDensity) -> tuple[np.ndarray, np.ndarray]:
    """Mean vector and covariance matrix from Fock-space expectations.

    Uses the dimensionless quadratures and the convention
    sigma_ij = <X_i X_j + X_j X_i> - 2 <X_i><X_j> (vacuum -> identity).
    Two-mode pure states are returned in pairwise ordering.

    Returns:
        (mean, cov) as float arrays of shape (2n,) and (2n, 2n).
    """
    if isinstance(obj, FockDensity) or obj.n_modes == 1:
        dim = obj.dim
        q, p = quadratures(dim)
        ops = [q, p]
        mean = np.array([_expect1(obj, op).real for op in ops])
        cov = np.empty((2, 2))
        for i in range(2):
            for j in range(2):
                sym = _expect1(obj, ops[i] @ ops[j] + ops[j] @ ops[i]).real
                cov[i, j] = sym - 2.0 * mean[i] * mean[j]
        return mean, cov
    if obj.n_modes != 2:
        raise DimensionError("covariance_from_fock supports one or two modes")
    dim = obj.dim
    q, p = quadratures(dim)
    eye = np.eye(dim, dtype=complex)
    # pairwise ordering (q1, p1, q2, p2); each entry is a (mode-1 op, mode-2 op) pair
    ops = [(q, eye), (p, eye), (eye, q), (eye, p)]
    mean = np.array([_expect2(obj, o1, o2).real for o1, o2 in ops])
    cov = np.empty((4, 4))
    for i, (a1, a2) in enumerate(ops):
        for j, (b1, b2) in enumerate(ops):
            sym = (_expect2(obj, a1 @ b1, a2 @ b2) + _expect2(obj, b1 @ a1, b2 @ a2)).real
            cov[i, j] = sym - 2.0 * mean[i] * mean[j]
    return mean, cov


def number_expectation(obj: FockState | FockDensity) -> float:
    """<n> for a single-mode state, or total <n1 + n2> for two modes."""
    if isinstance(obj, FockDensity) or obj.n_modes == 1:
        _, _, num = ladder(obj.dim)
        return _expect1(obj, num).real
    _, _, num = ladder(obj.dim)
    eye = np.eye(obj.dim, dtype=complex)
    return (_expect2(obj, num, eye) + _expect2(obj, eye, num)).real


def fock_entropy(rho: FockDensity) -> float:
    """Von Neumann entropy -sum lambda log lambda (natural log) of a density
    matrix, with 0 log 0 = 0."""
    vals = np.linalg.eigvalsh(rho.matrix)
    if vals[0] < -1e-10:
        raise ValueError(f"density matrix has negative eigenvalue {vals[0]:.3e}")
    vals = np.clip(vals, 0.0, None)
    nz = vals[vals > 0]
    return float(-np.sum(nz * np.log(nz)))

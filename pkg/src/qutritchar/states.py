"""State constructors and physicality checks for qutrit states."""

from __future__ import annotations

import numpy as np

from .errors import InvalidState

HERMITICITY_TOL = 1e-12
TRACE_TOL = 1e-10
EIGVAL_TOL = 1e-10
NORM_TOL = 1e-12


def ket(level: int) -> np.ndarray:
    """Basis state |level> for level in {0, 1, 2}."""
    if level not in (0, 1, 2):
        raise ValueError(f"level must be 0, 1 or 2, got {level}")
    v = np.zeros(3, dtype=np.complex128)
    v[level] = 1.0
    return v


def ground_state() -> np.ndarray:
    return ket(0)


def density_from_ket(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    return np.outer(psi, psi.conj())


def ground_density() -> np.ndarray:
    return density_from_ket(ground_state())


def check_density_matrix(rho: np.ndarray) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return as complex array."""
    rho = np.asarray(rho, dtype=np.complex128)
    if rho.shape != (3, 3):
        raise InvalidState(f"density matrix must be 3x3, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITICITY_TOL:
        raise InvalidState("density matrix is not Hermitian")
    if abs(np.trace(rho).real - 1.0) > TRACE_TOL or abs(np.trace(rho).imag) > TRACE_TOL:
        raise InvalidState(f"density matrix trace is {np.trace(rho)}, expected 1")
    eigvals = np.linalg.eigvalsh(rho)
    if eigvals.min() < -EIGVAL_TOL:
        raise InvalidState(f"density matrix has negative eigenvalue {eigvals.min()}")
    return rho


def check_state_vector(psi: np.ndarray) -> np.ndarray:
    psi = np.asarray(psi, dtype=np.complex128)
    if psi.shape != (3,):
        raise InvalidState(f"state vector must have length 3, got shape {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise InvalidState(f"state vector norm is {np.linalg.norm(psi)}, expected 1")
    return psi

"""Vectorized assembly of batches of 9x9 Liouvillians.

All inputs are angular (rad/µs) or rates (1/µs); unit conversion happens in
:mod:`qutritchar.operators` / :mod:`qutritchar.lindblad` before this layer.
"""

from __future__ import annotations

import numpy as np

from .. import operators as ops

_EYE3 = np.eye(3, dtype=np.complex128)

# Unit-rate dissipators (the decay/dephasing superoperators scale linearly
# with tau1 = 1/T1 and tau2 = 1/T2).
_NSQ = ops.NUMBER @ ops.NUMBER
DECAY_DISSIPATOR = (
    np.kron(ops.LOWERING.conj(), ops.LOWERING)
    - 0.5 * (np.kron(_EYE3, ops.NUMBER) + np.kron(ops.NUMBER.T, _EYE3))
)
DEPHASE_DISSIPATOR = (
    np.kron(ops.NUMBER, ops.NUMBER)
    - 0.5 * (np.kron(_EYE3, _NSQ) + np.kron(_NSQ.T, _EYE3))
)


def _bkron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product over a trailing-batched stack of 3x3 matrices."""
    out = a[..., :, None, :, None] * b[..., None, :, None, :]
    return out.reshape(*out.shape[:-4], 9, 9)


def hamiltonian_batch(delta, chi, p, q) -> np.ndarray:
    """Stack of rotating-frame Hamiltonians from angular scalars, shape (B, 3, 3)."""
    delta = np.asarray(delta, dtype=float)[:, None, None]
    chi = np.asarray(chi, dtype=float)[:, None, None]
    p = np.asarray(p, dtype=float)[:, None, None]
    q = np.asarray(q, dtype=float)[:, None, None]
    return delta * ops.NUMBER - 0.5 * chi * ops.ANHARM + p * ops.DRIVE_X + q * ops.DRIVE_Y


def liouvillian_batch(delta, chi, tau1, tau2, p, q) -> np.ndarray:
    """Stack of Liouvillians, shape (B, 9, 9), column-stacking convention."""
    h = hamiltonian_batch(delta, chi, p, q)
    eye = np.broadcast_to(_EYE3, h.shape)
    out = -1j * (_bkron(eye, h) - _bkron(h.transpose(0, 2, 1), eye))
    out += np.asarray(tau1, dtype=float)[:, None, None] * DECAY_DISSIPATOR
    out += np.asarray(tau2, dtype=float)[:, None, None] * DEPHASE_DISSIPATOR
    return out

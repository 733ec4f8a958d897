"""Qutrit operators, the Hamiltonian builder, and Liouvillian assembly.

This module is the package's single unit-conversion point: configuration
values are ordinary frequencies (GHz for omega/chi/drive, MHz for pulse
amplitudes) and everything returned from here is angular, in rad/µs.  The
conversions are ``GHz -> 2*pi*1e3 rad/µs`` and ``MHz -> 2*pi rad/µs``.
Whether the quoted device frequencies are ordinary or angular is a modeling
choice; this package treats them as ordinary and documents that here.
"""

from __future__ import annotations

import math

import numpy as np

from .params import ControlPulse, PulseSegment, SystemParams

TWO_PI = 2.0 * math.pi
GHZ_TO_RAD_PER_US = TWO_PI * 1.0e3
MHZ_TO_RAD_PER_US = TWO_PI

# Lowering operator: nonzeros (1, sqrt(2)) on the first superdiagonal.
LOWERING = np.array(
    [[0.0, 1.0, 0.0],
     [0.0, 0.0, math.sqrt(2.0)],
     [0.0, 0.0, 0.0]],
    dtype=np.complex128,
)
RAISING = LOWERING.conj().T
NUMBER = RAISING @ LOWERING                      # diag(0, 1, 2)
ANHARM = RAISING @ RAISING @ LOWERING @ LOWERING  # diag(0, 0, 2)
DRIVE_X = LOWERING + RAISING                      # p-quadrature coupling
DRIVE_Y = 1j * (LOWERING - RAISING)               # q-quadrature coupling

IDENTITY = np.eye(3, dtype=np.complex128)

# Projective z-basis measurement operators M_y = |e_y><e_y|.
MEASUREMENT_OPS = tuple(np.outer(IDENTITY[:, y], IDENTITY[:, y].conj()) for y in range(3))


def hamiltonian(delta: float, chi: float, p: float, q: float) -> np.ndarray:
    """Rotating-frame Hamiltonian from angular quantities (rad/µs).

    H = delta * n - (chi/2) * a'a'aa + p (a + a') + i q (a - a').
    """
    return delta * NUMBER - 0.5 * chi * ANHARM + p * DRIVE_X + q * DRIVE_Y


def build_hamiltonian(params: SystemParams, drive_freq: float, segment: PulseSegment) -> np.ndarray:
    """Hamiltonian for one segment, converting config units to rad/µs.

    Parameters
    ----------
    params : SystemParams
        omega/chi in GHz.
    drive_freq : float
        Drive frequency in GHz; the detuning is omega - drive_freq.
    segment : PulseSegment
        Amplitudes in MHz.
    """
    delta = (params.omega - drive_freq) * GHZ_TO_RAD_PER_US
    chi = params.chi * GHZ_TO_RAD_PER_US
    return hamiltonian(delta, chi, segment.p * MHZ_TO_RAD_PER_US, segment.q * MHZ_TO_RAD_PER_US)


def jump_operators(params: SystemParams) -> list[np.ndarray]:
    """Decay and dephasing jump operators; infinite times are omitted exactly."""
    ops = []
    if not math.isinf(params.t1):
        ops.append(LOWERING / math.sqrt(params.t1))
    if not math.isinf(params.t2):
        ops.append(NUMBER / math.sqrt(params.t2))
    return ops


def liouvillian_from_operators(h: np.ndarray, jumps: list[np.ndarray]) -> np.ndarray:
    """Assemble the 9x9 superoperator for d vec(rho)/dt = L vec(rho).

    vec stacks columns, so vec(A X B) = kron(B.T, A) vec(X):

        L = -i (kron(I, H) - kron(H.T, I))
            + sum_k [ kron(conj(L_k), L_k)
                      - 1/2 (kron(I, L_k' L_k) + kron((L_k' L_k).T, I)) ]
    """
    eye = IDENTITY
    out = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for jop in jumps:
        jj = jop.conj().T @ jop
        out += np.kron(jop.conj(), jop) - 0.5 * (np.kron(eye, jj) + np.kron(jj.T, eye))
    return out


def build_liouvillian(params: SystemParams, drive_freq: float, segment: PulseSegment) -> np.ndarray:
    """Liouvillian for one segment in config units (see build_hamiltonian)."""
    return liouvillian_from_operators(
        build_hamiltonian(params, drive_freq, segment), jump_operators(params)
    )


def vec(rho: np.ndarray) -> np.ndarray:
    """Column-stacking vectorization."""
    return np.asarray(rho).T.reshape(-1)


def unvec(v: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vec`."""
    return np.asarray(v).reshape(3, 3).T


def pulse_liouvillians(params: SystemParams, pulse: ControlPulse) -> list[tuple[np.ndarray, float]]:
    """(Liouvillian, duration) per segment, in time order."""
    return [(build_liouvillian(params, pulse.drive_freq, s), s.dt) for s in pulse.segments]

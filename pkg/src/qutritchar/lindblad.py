"""Pulse-driven evolution of the open (Lindblad) and closed (Schroedinger) model.

The open-system propagator is ``unvec( prod_i exp(L(t_i) dt_i) vec(rho0) )``
with segments applied in time order; the heavy exponentials are evaluated by
the active kernel backend.  All public entry points take config units (GHz,
MHz, µs) and convert once via :mod:`qutritchar.operators`.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

from . import kernels
from .errors import InvalidState, MatrixExpFailure
from .operators import (
    GHZ_TO_RAD_PER_US,
    MHZ_TO_RAD_PER_US,
    build_hamiltonian,
    unvec,
    vec,
)
from .params import ControlPulse, PulseSegment, SystemParams
from .states import check_density_matrix, check_state_vector, ground_density

PROB_NEG_TOL = 1e-8
PROB_SUM_TOL = 1e-8


def _pulse_arrays(pulse: ControlPulse) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-segment (p, q, dt) with amplitudes converted to rad/µs."""
    p = np.array([s.p for s in pulse.segments], dtype=float) * MHZ_TO_RAD_PER_US
    q = np.array([s.q for s in pulse.segments], dtype=float) * MHZ_TO_RAD_PER_US
    dt = np.array([s.dt for s in pulse.segments], dtype=float)
    return p, q, dt


def _angular_params(thetas: np.ndarray, drive_freq: float):
    """Angular detuning/anharmonicity and decay rates from (N, 4) config rows."""
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    delta = (thetas[:, 0] - drive_freq) * GHZ_TO_RAD_PER_US
    chi = thetas[:, 1] * GHZ_TO_RAD_PER_US
    with np.errstate(divide="ignore"):
        tau1 = np.where(np.isinf(thetas[:, 2]), 0.0, 1.0 / thetas[:, 2])
        tau2 = np.where(np.isinf(thetas[:, 3]), 0.0, 1.0 / thetas[:, 3])
    return delta, chi, tau1, tau2


def propagator_batch(thetas: np.ndarray, pulse: ControlPulse, threads: int = 0) -> np.ndarray:
    """Total pulse propagator for each parameter row; shape (N, 9, 9)."""
    delta, chi, tau1, tau2 = _angular_params(thetas, pulse.drive_freq)
    p, q, dt = _pulse_arrays(pulse)
    n = delta.shape[0]
    return kernels.segment_propagators(
        delta, chi, tau1, tau2,
        np.broadcast_to(p, (n, p.size)), np.broadcast_to(q, (n, q.size)),
        np.broadcast_to(dt, (n, dt.size)), threads=threads,
    )


def propagator_batch_multi(
    thetas: np.ndarray, pulses: list[ControlPulse], threads: int = 0
) -> np.ndarray:
    """Propagators for every (pulse, parameter-row) pair; shape (P, N, 9, 9).

    All pulses must share a segment count (one optimizer generation does).
    """
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    n = thetas.shape[0]
    n_pulses = len(pulses)
    n_seg = len(pulses[0].segments)
    if any(len(pl.segments) != n_seg for pl in pulses):
        raise ValueError("pulses in one batch must have equal segment counts")

    delta = np.empty(n_pulses * n, dtype=float)
    p = np.empty((n_pulses * n, n_seg), dtype=float)
    q = np.empty_like(p)
    dt = np.empty_like(p)
    chi = np.tile(thetas[:, 1] * GHZ_TO_RAD_PER_US, n_pulses)
    with np.errstate(divide="ignore"):
        tau1 = np.tile(np.where(np.isinf(thetas[:, 2]), 0.0, 1.0 / thetas[:, 2]), n_pulses)
        tau2 = np.tile(np.where(np.isinf(thetas[:, 3]), 0.0, 1.0 / thetas[:, 3]), n_pulses)
    for i, pl in enumerate(pulses):
        sl = slice(i * n, (i + 1) * n)
        delta[sl] = (thetas[:, 0] - pl.drive_freq) * GHZ_TO_RAD_PER_US
        pi, qi, di = _pulse_arrays(pl)
        p[sl] = pi
        q[sl] = qi
        dt[sl] = di
    props = kernels.segment_propagators(delta, chi, tau1, tau2, p, q, dt, threads=threads)
    return props.reshape(n_pulses, n, 9, 9)


def propagate(rho0: np.ndarray, params: SystemParams, pulse: ControlPulse) -> np.ndarray:
    """Evolve a density matrix through the pulse; validates input and output."""
    rho0 = check_density_matrix(rho0)
    prop = propagator_batch(params.as_array()[None, :], pulse)[0]
    if not np.all(np.isfinite(prop)):
        raise MatrixExpFailure("matrix exponential produced non-finite entries")
    return unvec(prop @ vec(rho0))


def propagate_state(psi0: np.ndarray, params: SystemParams, pulse: ControlPulse) -> np.ndarray:
    """Closed-system evolution via per-segment exp(-i H dt)."""
    psi = check_state_vector(psi0)
    for seg in pulse.segments:
        h = build_hamiltonian(params, pulse.drive_freq, seg)
        u = scipy.linalg.expm(-1j * h * seg.dt)
        if not np.all(np.isfinite(u)):
            raise MatrixExpFailure("matrix exponential produced non-finite entries")
        psi = u @ psi
    return psi


def measure_probs(rho: np.ndarray) -> np.ndarray:
    """z-basis outcome probabilities (rho_00, rho_11, rho_22).

    Small negative diagonals and trace drift (within 1e-8) are clamped and
    renormalized; anything larger raises InvalidState so propagator bugs
    surface instead of being silently papered over.
    """
    diag = np.real(np.diagonal(rho))
    if diag.min() < -PROB_NEG_TOL:
        raise InvalidState(f"negative outcome probability {diag.min():.3e}")
    total = diag.sum()
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise InvalidState(f"outcome probabilities sum to {total!r}")
    probs = np.clip(diag, 0.0, 1.0)
    return probs / probs.sum()


_DIAG_IDX = np.array([0, 4, 8])


def probabilities_from_propagators(props: np.ndarray, rho0: np.ndarray | None = None) -> np.ndarray:
    """Outcome probabilities for a stack of propagators applied to rho0."""
    v0 = vec(ground_density() if rho0 is None else np.asarray(rho0, dtype=np.complex128))
    vfinal = props @ v0
    diag = np.real(vfinal[..., _DIAG_IDX])
    if not np.all(np.isfinite(diag)):
        raise MatrixExpFailure("propagation produced non-finite probabilities")
    if diag.min() < -PROB_NEG_TOL:
        raise InvalidState(f"negative outcome probability {diag.min():.3e}")
    sums = diag.sum(axis=-1)
    if np.abs(sums - 1.0).max() > PROB_SUM_TOL:
        raise InvalidState("propagated state lost trace normalization")
    probs = np.clip(diag, 0.0, 1.0)
    return probs / probs.sum(axis=-1, keepdims=True)


def batch_probabilities(
    thetas: np.ndarray, pulse: ControlPulse, rho0: np.ndarray | None = None, threads: int = 0
) -> np.ndarray:
    """P(y | theta_i; pulse) for each parameter row; shape (N, 3)."""
    return probabilities_from_propagators(propagator_batch(thetas, pulse, threads), rho0)


def batch_probabilities_multi(
    thetas: np.ndarray,
    pulses: list[ControlPulse],
    rho0: np.ndarray | None = None,
    threads: int = 0,
) -> np.ndarray:
    """P(y | theta_i; pulse_j) over a pulse batch; shape (P, N, 3)."""
    return probabilities_from_propagators(propagator_batch_multi(thetas, pulses, threads), rho0)


def truncate_pulse(pulse: ControlPulse, t: float) -> ControlPulse | None:
    """Pulse restricted to [0, t]; None for t = 0.  t must not exceed duration."""
    if t < 0 or t > pulse.duration + 1e-12:
        raise ValueError(f"time {t} outside pulse duration {pulse.duration}")
    if t == 0:
        return None
    segs = []
    remaining = t
    for seg in pulse.segments:
        if remaining <= seg.dt + 1e-15:
            segs.append(PulseSegment(seg.p, seg.q, min(remaining, seg.dt)))
            break
        segs.append(seg)
        remaining -= seg.dt
    return ControlPulse(pulse.drive_freq, tuple(segs))


def propagate_until(rho0: np.ndarray, params: SystemParams, pulse: ControlPulse, t: float) -> np.ndarray:
    """State at an intermediate time t of the pulse."""
    truncated = truncate_pulse(pulse, t)
    if truncated is None:
        return check_density_matrix(rho0).copy()
    return propagate(rho0, params, truncated)


def population_trajectory(
    rho0: np.ndarray, params: SystemParams, pulse: ControlPulse, sample_dt: float
) -> tuple[np.ndarray, np.ndarray]:
    """Populations on a time grid with step <= sample_dt and exact segment edges.

    Returns (times, probs) with probs[k] the outcome triple at times[k];
    the grid starts at t = 0.
    """
    if sample_dt <= 0:
        raise ValueError("sample_dt must be positive")
    rho = check_density_matrix(rho0)
    times = [0.0]
    probs = [measure_probs(rho)]
    v = vec(rho)
    t_now = 0.0
    theta = params.as_array()[None, :]
    for seg in pulse.segments:
        n_steps = max(1, math.ceil(seg.dt / sample_dt))
        sub = PulseSegment(seg.p, seg.q, seg.dt / n_steps)
        u = propagator_batch(theta, ControlPulse(pulse.drive_freq, (sub,)))[0]
        if not np.all(np.isfinite(u)):
            raise MatrixExpFailure("matrix exponential produced non-finite entries")
        for _ in range(n_steps):
            v = u @ v
            t_now += sub.dt
            times.append(t_now)
            probs.append(measure_probs(unvec(v)))
    return np.array(times), np.array(probs)

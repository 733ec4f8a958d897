"""Pure-NumPy propagation backend.

Matrix exponentials use scaling-and-squaring with the order-13 Padé
approximant, evaluated batched over a stack of 9x9 Liouvillians so the heavy
lifting happens inside BLAS-backed ``matmul`` / ``solve`` calls.
"""

from __future__ import annotations

import numpy as np

from .assemble import liouvillian_batch

# Order-13 Padé numerator coefficients and the Higham switching norm.
_B13 = np.array(
    [
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0, 129060195264000.0, 10559470521600.0,
        670442572800.0, 33522128640.0, 1323241920.0, 40840800.0,
        960960.0, 16380.0, 182.0, 1.0,
    ]
)
_THETA13 = 5.371920351148152


def expm_batch(a: np.ndarray) -> np.ndarray:
    """exp(a) for a stack (B, n, n) of complex matrices.

    One squaring count is shared by the whole stack (the max over the batch);
    extra squarings of already-converged approximants are harmless.
    """
    a = np.asarray(a, dtype=np.complex128)
    norms = np.abs(a).sum(axis=-2).max(axis=-1)   # 1-norm per matrix
    nmax = float(norms.max()) if norms.size else 0.0
    s = 0 if nmax <= _THETA13 else int(np.ceil(np.log2(nmax / _THETA13)))
    a = a / (2.0**s)

    eye = np.broadcast_to(np.eye(a.shape[-1], dtype=a.dtype), a.shape)
    b = _B13
    a2 = a @ a
    a4 = a2 @ a2
    a6 = a2 @ a4
    u = a @ (a6 @ (b[13] * a6 + b[11] * a4 + b[9] * a2)
             + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye)
    v = (a6 @ (b[12] * a6 + b[10] * a4 + b[8] * a2)
         + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye)
    r = np.linalg.solve(v - u, v + u)
    for _ in range(s):
        r = r @ r
    return r


def segment_propagators(delta, chi, tau1, tau2, p, q, dt) -> np.ndarray:
    """Total propagator exp(L_S dt_S) ... exp(L_1 dt_1) per batch item.

    Parameters
    ----------
    delta, chi, tau1, tau2 : (B,) float arrays
        Detuning and anharmonicity in rad/µs; decay/dephasing rates in 1/µs.
    p, q, dt : (B, S) float arrays
        Per-segment drive quadratures (rad/µs) and durations (µs).

    Returns
    -------
    (B, 9, 9) complex array acting on column-stacked density matrices.
    """
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    dt = np.asarray(dt, dtype=float)
    n_seg = p.shape[1]
    total = None
    for k in range(n_seg):
        lk = liouvillian_batch(delta, chi, tau1, tau2, p[:, k], q[:, k])
        rk = expm_batch(lk * dt[:, k, None, None])
        total = rk if total is None else rk @ total
    return total

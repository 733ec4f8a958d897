"""Propagation kernels: compiled extension with a pure-NumPy fallback.

The compiled backend is used when the extension module built successfully;
set ``QUTRITCHAR_PURE=1`` in the environment to force the fallback.  Both
backends implement the same contract and are cross-checked by the test suite;
``benchmarks/bench_propagation.py`` compares their throughput.
"""

from __future__ import annotations

import os

import numpy as np

from . import pure

_compiled = None
if os.environ.get("QUTRITCHAR_PURE", "").strip().lower() not in ("1", "true", "yes"):
    try:
        from . import _fast as _compiled  # type: ignore[no-redef]
    except ImportError:
        _compiled = None

_CHUNK = 4096


def backend_name() -> str:
    return "pure" if _compiled is None else "compiled"


def segment_propagators(delta, chi, tau1, tau2, p, q, dt, threads: int = 0) -> np.ndarray:
    """Batched total propagators, dispatching to the active backend.

    See :func:`qutritchar.kernels.pure.segment_propagators` for the contract.
    """
    delta = np.ascontiguousarray(delta, dtype=float)
    chi = np.ascontiguousarray(chi, dtype=float)
    tau1 = np.ascontiguousarray(tau1, dtype=float)
    tau2 = np.ascontiguousarray(tau2, dtype=float)
    p = np.ascontiguousarray(p, dtype=float)
    q = np.ascontiguousarray(q, dtype=float)
    dt = np.ascontiguousarray(dt, dtype=float)
    nb = delta.shape[0]
    if p.ndim != 2 or p.shape[0] != nb:
        raise ValueError(f"segment arrays must be (batch, n_seg), got {p.shape}")

    if _compiled is not None:
        return _compiled.segment_propagators(delta, chi, tau1, tau2, p, q, dt, threads)

    if nb <= _CHUNK:
        return pure.segment_propagators(delta, chi, tau1, tau2, p, q, dt)
    out = np.empty((nb, 9, 9), dtype=np.complex128)
    for lo in range(0, nb, _CHUNK):
        hi = min(lo + _CHUNK, nb)
        out[lo:hi] = pure.segment_propagators(
            delta[lo:hi], chi[lo:hi], tau1[lo:hi], tau2[lo:hi],
            p[lo:hi], q[lo:hi], dt[lo:hi],
        )
    return out

"""Domain types: system parameters and piecewise-constant control pulses.

Unit conventions (enforced package-wide, converted in one place by the
Hamiltonian builder in :mod:`qutritchar.operators`):

* transition frequency ``omega`` and anharmonicity ``chi`` in GHz,
* pulse amplitudes ``p``, ``q`` in MHz,
* times and durations in microseconds,
* decay / dephasing times ``t1``, ``t2`` in microseconds; ``math.inf`` is
  the sentinel for a closed system (jump operators exactly omitted).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

PARAM_NAMES = ("omega_ghz", "chi_ghz", "t1_us", "t2_us")


@dataclass(frozen=True)
class SystemParams:
    """Estimand vector: 0-1 transition frequency, anharmonicity, T1, T2."""

    omega: float  # GHz
    chi: float    # GHz
    t1: float     # µs, math.inf for no decay
    t2: float     # µs, math.inf for no dephasing

    def __post_init__(self):
        if not (self.omega > 0 and self.chi > 0):
            raise ValueError(f"omega and chi must be positive, got {self.omega}, {self.chi}")
        if not (self.t1 > 0 and self.t2 > 0):
            raise ValueError(f"t1 and t2 must be positive (or inf), got {self.t1}, {self.t2}")

    @property
    def tau1(self) -> float:
        """Decay rate 1/T1 in 1/µs (0 for the closed-system sentinel)."""
        return 0.0 if math.isinf(self.t1) else 1.0 / self.t1

    @property
    def tau2(self) -> float:
        """Dephasing rate 1/T2 in 1/µs (0 for the closed-system sentinel)."""
        return 0.0 if math.isinf(self.t2) else 1.0 / self.t2

    def closed(self) -> "SystemParams":
        """Copy with decoherence switched off."""
        return SystemParams(self.omega, self.chi, math.inf, math.inf)

    def as_array(self) -> np.ndarray:
        return np.array([self.omega, self.chi, self.t1, self.t2], dtype=float)

    @classmethod
    def from_array(cls, arr) -> "SystemParams":
        return cls(float(arr[0]), float(arr[1]), float(arr[2]), float(arr[3]))


@dataclass(frozen=True)
class PulseSegment:
    """One piecewise-constant segment: in-phase p, quadrature q, duration."""

    p: float   # MHz
    q: float   # MHz
    dt: float  # µs

    def __post_init__(self):
        if not self.dt > 0:
            raise ValueError(f"segment duration must be positive, got {self.dt}")


@dataclass(frozen=True)
class ControlPulse:
    """Drive frequency plus an ordered list of piecewise-constant segments."""

    drive_freq: float  # GHz
    segments: tuple[PulseSegment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if len(self.segments) == 0:
            raise ValueError("a pulse needs at least one segment")

    @property
    def duration(self) -> float:
        """Total duration in µs."""
        return sum(s.dt for s in self.segments)

    def to_dict(self) -> dict:
        return {
            "drive_freq_ghz": self.drive_freq,
            "segments": [{"p_mhz": s.p, "q_mhz": s.q, "dt_us": s.dt} for s in self.segments],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ControlPulse":
        try:
            segs = tuple(
                PulseSegment(float(s["p_mhz"]), float(s["q_mhz"]), float(s["dt_us"]))
                for s in d["segments"]
            )
            return cls(float(d["drive_freq_ghz"]), segs)
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed pulse record: {exc}") from exc


def zero_pulse(duration: float, drive_freq: float = 0.0) -> ControlPulse:
    """Idle pulse of the given duration (p = q = 0)."""
    return ControlPulse(drive_freq, (PulseSegment(0.0, 0.0, duration),))


def save_pulse(path: str | Path, pulse: ControlPulse) -> None:
    Path(path).write_text(json.dumps(pulse.to_dict(), indent=2) + "\n")


def load_pulse(path: str | Path) -> ControlPulse:
    """Parse a pulse file, naming the file and problem on failure."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    try:
        return ControlPulse.from_dict(payload)
    except ValueError as exc:
        raise ValueError(f"{path}: {exc}") from exc

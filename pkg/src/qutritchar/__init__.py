"""Online Bayesian experimental design for qutrit characterization.

Simulates pulse-driven Lindblad dynamics of a three-level transmon, scores
candidate control pulses by expected information gain, optimizes them with
differential evolution, and maintains a particle posterior over transition
frequency, anharmonicity and decoherence times.  A Taylor-series structural
identifiability analyzer reports which parameters a given pulse can pin down.
"""

from .params import ControlPulse, PulseSegment, SystemParams, load_pulse, save_pulse, zero_pulse

__all__ = [
    "ControlPulse",
    "PulseSegment",
    "SystemParams",
    "load_pulse",
    "save_pulse",
    "zero_pulse",
    "__version__",
]

__version__ = "0.1.0"

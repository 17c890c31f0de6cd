"""Exact simulator of a qubit dephasing against an interacting oscillator ring.

Closed-form decoherence dynamics, non-Markovianity diagnostics, and partial
information plots for a two-level system locally coupled to a periodic chain
of harmonic oscillators, plus a brute-force truncated-Fock cross-check.
"""

from darwin_chain.lattice import (
    ModelParams,
    ModeGrid,
    ModeAmplitudes,
    SiteAmplitudes,
    decoherence_exponent,
    decoherence_rate,
    dispersion_relation,
    mode_amplitudes,
    recurrence_guard,
    site_amplitudes,
    snapshot_time,
    uniform_times,
)
from darwin_chain.infoflow import (
    EntropyTriple,
    FragmentSpec,
    PipCurve,
    PipSurface,
    amplitude_profile,
    binary_entropy,
    binary_mixture_eigenvalues,
    fragment_overlap,
    mutual_information,
    pip_curve,
    pip_surface,
    subsystem_entropies,
)
from darwin_chain.nonmarkov import (
    BackflowReport,
    BoundaryScan,
    RateProfile,
    blp_measure,
    negativity_threshold,
    phase_boundary_scan,
    rate_sign_profile,
    scan_window,
)

__version__ = "0.1.0"

__all__ = [
    "ModelParams",
    "ModeGrid",
    "ModeAmplitudes",
    "SiteAmplitudes",
    "decoherence_exponent",
    "decoherence_rate",
    "dispersion_relation",
    "mode_amplitudes",
    "recurrence_guard",
    "site_amplitudes",
    "snapshot_time",
    "uniform_times",
    "EntropyTriple",
    "FragmentSpec",
    "PipCurve",
    "PipSurface",
    "amplitude_profile",
    "binary_entropy",
    "binary_mixture_eigenvalues",
    "fragment_overlap",
    "mutual_information",
    "pip_curve",
    "pip_surface",
    "subsystem_entropies",
    "BackflowReport",
    "BoundaryScan",
    "RateProfile",
    "blp_measure",
    "negativity_threshold",
    "phase_boundary_scan",
    "rate_sign_profile",
    "scan_window",
    "__version__",
]

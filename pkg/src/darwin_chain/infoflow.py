"""Entropies, mutual information, and partial information plots.

Because the qubit conditionally displaces every oscillator, the joint state
at any time is a two-branch superposition

    c0 |0> (x) prod_j |-alpha_j>   +   c1 |1> (x) prod_j |+alpha_j>,

so every reduced state of interest has rank <= 2 and its spectrum follows
from a single overlap number:

  * tracing out everything but a site subset F leaves a mixture of the two
    coherent products restricted to F, whose branch overlap is
    s_F = exp(-2 sum_{j in F} |alpha_j|^2);
  * tracing out everything but the qubit leaves a 2x2 state whose
    off-diagonal is suppressed by exp(-Gamma), Gamma = 2 sum_j |alpha_j|^2.

A rank-2 mixture p|u><u| + (1-p)|v><v| with ||<u|v>|| = s has eigenvalues
(1 +/- sqrt(1 - 4 p (1-p) (1 - s^2)))/2, so all entropies are closed form
and each fragment costs O(f) work.  Entropies are in bits (base-2 logs):
the fully dephased balanced qubit then carries exactly 1 bit and the whole
environment 2 bits, which is the normalization used throughout.

Fragments F are contiguous site blocks centred on the coupled site j = 0
(even sizes place the extra site at positive j); R denotes the complement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from darwin_chain.lattice import (
    ModelParams,
    SiteAmplitudes,
    decoherence_exponent,
    dispersion_relation,
    mode_amplitudes,
    site_amplitudes,
)

# Mutual-information estimates may poke past their exact bounds by roundoff;
# anything worse than this indicates a bug upstream.
_MI_SLACK = 1e-9


@dataclass(frozen=True)
class FragmentSpec:
    """Contiguous block of ``size_f`` sites centred at ``center_offset``.

    For odd sizes the block is symmetric about the offset; for even sizes
    the extra site sits on the positive-j side.
    """

    n_sites: int
    size_f: int
    center_offset: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.size_f <= self.n_sites:
            raise ValueError(f"size_f must lie in [0, {self.n_sites}], got {self.size_f}")
        half = (self.n_sites - 1) // 2
        if self.size_f > 0:
            lo, hi = self._span()
            if lo < -half or hi > half:
                raise ValueError(
                    f"fragment of size {self.size_f} at offset {self.center_offset} "
                    f"leaves the chain [-{half}, {half}]"
                )

    def _span(self) -> tuple[int, int]:
        lo = self.center_offset - (self.size_f - 1) // 2
        hi = self.center_offset + self.size_f // 2
        return lo, hi

    @property
    def site_list(self) -> np.ndarray:
        """Fragment site labels, ascending; empty for size_f = 0."""
        if self.size_f == 0:
            return np.arange(0)
        lo, hi = self._span()
        return np.arange(lo, hi + 1)

    @property
    def remainder_list(self) -> np.ndarray:
        """Complement R of the fragment within the chain, ascending."""
        half = (self.n_sites - 1) // 2
        chain = np.arange(-half, half + 1)
        return np.setdiff1d(chain, self.site_list)


@dataclass(frozen=True)
class EntropyTriple:
    """Von Neumann entropies (bits) of the qubit, a fragment, and its complement."""

    s_system: float
    s_fragment: float
    s_remainder: float


@dataclass(frozen=True, eq=False)
class PipCurve:
    """Mutual information I(S:F) against fragment size at a fixed time."""

    time: float
    sizes: np.ndarray
    mi: np.ndarray


@dataclass(frozen=True, eq=False)
class PipSurface:
    """I(S:F) on a (time, fragment size) grid; ``mi[i, j]`` is times[i], sizes[j]."""

    times: np.ndarray
    sizes: np.ndarray
    mi: np.ndarray


def fragment_overlap(sites: SiteAmplitudes, frag: FragmentSpec) -> float:
    """Branch overlap s_F = exp(-2 sum_{j in F} |alpha_j|^2) in (0, 1]."""
    if frag.size_f == 0:
        return 1.0
    half = (frag.n_sites - 1) // 2
    idx = frag.site_list + half
    weight = float(np.sum(np.abs(sites.alpha[idx]) ** 2))
    return float(np.exp(-2.0 * weight))


def binary_mixture_eigenvalues(p: float, s: float) -> tuple[float, float]:
    """Eigenvalues of p|u><u| + (1-p)|v><v| for pure states with ||<u|v>|| = s.

    Returns (larger, smaller); they sum to 1.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if not 0.0 <= s <= 1.0:
        raise ValueError(f"s must lie in [0, 1], got {s}")
    disc = 1.0 - 4.0 * p * (1.0 - p) * (1.0 - s * s)
    root = np.sqrt(max(disc, 0.0))
    return 0.5 * (1.0 + root), 0.5 * (1.0 - root)


def binary_entropy(x: float) -> float:
    """H(x) = -x log2 x - (1-x) log2 (1-x), with H(0) = H(1) = 0."""
    if x <= 0.0 or x >= 1.0:
        return 0.0
    return float(-x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x))


def subsystem_entropies(
    params: ModelParams,
    sites: SiteAmplitudes,
    frag: FragmentSpec,
    gamma_exponent: float,
) -> EntropyTriple:
    """Closed-form entropies of the qubit, fragment F, and complement R.

    ``gamma_exponent`` is Gamma(t) at the same time as ``sites``; the qubit
    entropy uses the overlap exp(-Gamma) while F and R use their own branch
    overlaps s_F and s_R.
    """
    p = abs(params.c0) ** 2
    s_f = fragment_overlap(sites, frag)
    half = (frag.n_sites - 1) // 2
    idx = frag.remainder_list + half
    weight = float(np.sum(np.abs(sites.alpha[idx]) ** 2))
    s_r = float(np.exp(-2.0 * weight))
    s_system = binary_entropy(binary_mixture_eigenvalues(p, float(np.exp(-gamma_exponent)))[0])
    s_fragment = binary_entropy(binary_mixture_eigenvalues(p, s_f)[0])
    s_remainder = binary_entropy(binary_mixture_eigenvalues(p, s_r)[0])
    return EntropyTriple(s_system=s_system, s_fragment=s_fragment, s_remainder=s_remainder)


def mutual_information(triple: EntropyTriple) -> float:
    """I(S:F) = S_S + S_F - S_R in bits, clipped to [0, 2 S_S] within roundoff.

    The global state is pure, so S(rho_SF) = S(rho_R) and the bounds
    0 <= I <= 2 S_S are exact; violations beyond roundoff slack mean the
    triple is inconsistent and raise.
    """
    value = triple.s_system + triple.s_fragment - triple.s_remainder
    upper = 2.0 * triple.s_system
    if value < -_MI_SLACK or value > upper + _MI_SLACK:
        raise RuntimeError(
            f"mutual information {value!r} outside [0, {upper!r}] beyond tolerance"
        )
    return float(min(max(value, 0.0), upper))


def _centered_fragment_weights(alpha: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    """sum_{j in F} |alpha_j|^2 for every centred fragment size requested."""
    n = alpha.size
    half = (n - 1) // 2
    density = np.abs(alpha) ** 2
    weights = np.empty(sizes.size)
    for i, f in enumerate(sizes):
        if f == 0:
            weights[i] = 0.0
            continue
        lo = -((f - 1) // 2) + half
        hi = f // 2 + half
        weights[i] = density[lo : hi + 1].sum()
    return weights


def _pip_row(params: ModelParams, t: float, sizes: np.ndarray) -> np.ndarray:
    grid = dispersion_relation(params)
    sites = site_amplitudes(mode_amplitudes(params, grid, t))
    gamma_exponent = decoherence_exponent(params, grid, t)
    p = abs(params.c0) ** 2
    weights = _centered_fragment_weights(sites.alpha, sizes)
    total = np.abs(sites.alpha) ** 2
    total = float(total.sum())
    s_sys = binary_entropy(binary_mixture_eigenvalues(p, float(np.exp(-gamma_exponent)))[0])
    mi = np.empty(sizes.size)
    for i in range(sizes.size):
        s_f = float(np.exp(-2.0 * weights[i]))
        # the remainder weight can round a hair negative when F is the
        # whole chain; clamp so s_r never exceeds 1
        s_r = float(np.exp(-2.0 * max(total - weights[i], 0.0)))
        triple = EntropyTriple(
            s_system=s_sys,
            s_fragment=binary_entropy(binary_mixture_eigenvalues(p, s_f)[0]),
            s_remainder=binary_entropy(binary_mixture_eigenvalues(p, s_r)[0]),
        )
        mi[i] = mutual_information(triple)
    return mi


def _validated_sizes(params: ModelParams, sizes) -> np.ndarray:
    arr = np.asarray(sizes, dtype=int)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("sizes must be a non-empty 1-d sequence")
    if np.any(np.diff(arr) < 0):
        raise ValueError("sizes must be sorted ascending")
    if arr[0] < 0 or arr[-1] > params.n_sites:
        raise ValueError(f"sizes must lie within [0, {params.n_sites}]")
    return arr


def pip_curve(params: ModelParams, t: float, sizes) -> PipCurve:
    """Partial information plot: I(S:F) over centred fragment sizes at time t."""
    arr = _validated_sizes(params, sizes)
    return PipCurve(time=float(t), sizes=arr, mi=_pip_row(params, t, arr))


def pip_surface(params: ModelParams, times, sizes) -> PipSurface:
    """I(S:F) over a (time, size) grid; one PIP row per requested time."""
    arr = _validated_sizes(params, sizes)
    t_arr = np.asarray(times, dtype=float)
    mi = np.empty((t_arr.size, arr.size))
    for i, t in enumerate(t_arr):
        mi[i] = _pip_row(params, float(t), arr)
    return PipSurface(times=t_arr, sizes=arr, mi=mi)


def amplitude_profile(params: ModelParams, t: float) -> np.ndarray:
    """Perturbation magnitudes |alpha_j(t)| over ascending site label j."""
    grid = dispersion_relation(params)
    sites = site_amplitudes(mode_amplitudes(params, grid, t))
    return np.abs(sites.alpha)

"""Dephasing-rate landscape: where the dynamics turns non-Markovian.

Plots gamma(t) for frequencies below, near, and above the band edge
omega = 2J, plus a sign map of gamma over the (omega, t) plane.  Negative
rate (information back-flow) appears only for omega > 2J, and the boundary
scan brackets the transition.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from darwin_chain import ModelParams, phase_boundary_scan, rate_sign_profile

OUT = pathlib.Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)


def main() -> None:
    fig, (top, bottom) = plt.subplots(2, 1, figsize=(7, 7), layout="constrained")

    for omega, color in [(0.5, "tab:blue"), (1.9, "tab:green"), (2.25, "tab:red"), (3.0, "tab:purple")]:
        p = ModelParams(n_sites=201, omega=omega, coupling_g=0.5)
        profile = rate_sign_profile(p, t_max=30.0, dt=0.02)
        top.plot(profile.times, profile.gamma, color=color, label=f"$\\omega/J = {omega}$")
        for lo, hi in profile.negative_intervals:
            top.axvspan(lo, hi, color=color, alpha=0.08)
    top.axhline(0.0, color="k", lw=0.5)
    top.set_xlabel("t [1/J]")
    top.set_ylabel(r"$\gamma(t)$ [J]")
    top.set_title("Instantaneous dephasing rate; shaded spans are back-flow windows")
    top.legend()

    omegas = np.linspace(0.1, 3.0, 59)
    times = np.linspace(0.01, 30.0, 240)
    sign = np.empty((omegas.size, times.size))
    for i, omega in enumerate(omegas):
        p = ModelParams(n_sites=201, omega=float(omega), coupling_g=0.5)
        profile = rate_sign_profile(p, t_max=30.0, dt=30.0 / 240)
        sign[i] = np.sign(profile.gamma[1 : times.size + 1])
    mesh = bottom.pcolormesh(times, omegas, sign, cmap="RdBu", vmin=-1, vmax=1)
    bottom.axhline(2.0, color="k", ls="--", lw=1)
    bottom.set_xlabel("t [1/J]")
    bottom.set_ylabel(r"$\omega/J$")
    bottom.set_title(r"sign of $\gamma$: back-flow (red) exists only above $\omega = 2J$")
    fig.colorbar(mesh, ax=bottom, label=r"sign $\gamma$")

    target = OUT / "rate_map.png"
    fig.savefig(target, dpi=120)

    scan = phase_boundary_scan(
        ModelParams(n_sites=201, omega=1.0, coupling_g=0.5),
        np.round(np.arange(1.5, 2.5001, 0.05), 10),
    )
    print(f"wrote {target}")
    print(f"scan brackets the Markovian/non-Markovian boundary at omega = {scan.boundary} J")


if __name__ == "__main__":
    main()

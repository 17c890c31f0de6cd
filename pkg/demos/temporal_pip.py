"""Temporal partial information plot: the plateau builds up in time.

A heatmap of I(S:F) over (fragment size, time) in the redundant regime.
The one-bit plateau widens as the perturbation front sweeps outward, until
most centered fragments of modest size carry the full pointer information.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from darwin_chain import ModelParams, pip_surface

OUT = pathlib.Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)


def main() -> None:
    p = ModelParams(n_sites=201, omega=0.5, coupling_g=0.5)
    times = np.linspace(0.5, 45.0, 90)
    sizes = np.arange(0, 202, 2)
    surface = pip_surface(p, times, sizes)
    fig, ax = plt.subplots(figsize=(7, 4.6), layout="constrained")
    mesh = ax.pcolormesh(surface.sizes, surface.times, surface.mi, cmap="viridis",
                         shading="auto")
    ax.set_xlabel("fragment size f (centered)")
    ax.set_ylabel("t [1/J]")
    ax.set_title("I(S:F): the 1-bit plateau (mid-tone band) widens with time")
    fig.colorbar(mesh, ax=ax, label="I(S:F) [bits]")
    target = OUT / "temporal_pip.png"
    fig.savefig(target, dpi=120)
    plateau_share = np.mean(np.abs(surface.mi[-1][1:-1] - 1.0) < 0.05)
    print(f"at t = 45, {plateau_share:.0%} of interior fragment sizes sit within "
          f"0.05 bits of the plateau")
    print(f"wrote {target}")


if __name__ == "__main__":
    main()

"""Partial information plots above the band edge: objectivity is lost.

For omega > 2J the chain cannot radiate the qubit's imprint efficiently;
the mutual information climbs gradually over the whole fragment range with
no flat plateau, so no small fragment carries the full pointer information.
"""

import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from darwin_chain import ModelParams, pip_curve

OUT = pathlib.Path(__file__).resolve().parent / "output"
OUT.mkdir(exist_ok=True)


def main() -> None:
    sizes = list(range(0, 202))
    fig, ax = plt.subplots(figsize=(7, 4.2), layout="constrained")
    for omega in (2.25, 2.5, 3.0):
        p = ModelParams(n_sites=201, omega=omega, coupling_g=0.5)
        curve = pip_curve(p, 45.0, sizes)
        ax.plot(sizes, curve.mi, label=f"$\\omega/J = {omega}$")
        inner = curve.mi[21:182]
        print(
            f"omega/J = {omega}: I spans [{inner.min():.3f}, {inner.max():.3f}] "
            f"bits over f in [21, 181] (no plateau)"
        )
    ax.set_xlabel("fragment size f (centered)")
    ax.set_ylabel("I(S:F) [bits]")
    ax.set_title("Above the band edge the redundancy plateau disappears")
    ax.legend()
    target = OUT / "plateau_loss.png"
    fig.savefig(target, dpi=120)
    print(f"wrote {target}")


if __name__ == "__main__":
    main()

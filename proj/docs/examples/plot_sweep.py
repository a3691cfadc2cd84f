"""Plot oat-sweep CSV output.

    oat-sweep dynamics --n 2000 --out dyn.csv
    python plot_sweep.py dyn.csv dyn.png

Needs pandas and matplotlib; the C++ tools do not depend on this script.
"""

import sys

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main(path, out):
    rows = pd.read_csv(path, comment="#")
    fig, (ax_xi, ax_chi) = plt.subplots(1, 2, figsize=(10, 4))
    for (gamma, engine), g in rows.groupby(["gamma", "engine"]):
        n = g["f_max"].iloc[0]  # a CSS at tau = 0 has f_max = N
        label = f"gamma={gamma:g} ({engine})"
        x = g["tau"] * np.sqrt(n)
        ax_xi.plot(x, g["xi_k2"], label=label)
        ax_chi.plot(x, g["chi2"], label=label)
    for ax, name in ((ax_xi, "xi_K^2"), (ax_chi, "chi^2")):
        ax.set_xlabel("kappa t sqrt(N)")
        ax.set_ylabel(name)
        ax.set_yscale("log")
        ax.legend()
    fig.tight_layout()
    fig.savefig(out, dpi=150)


if __name__ == "__main__":
    main(sys.argv[1], sys.argv[2] if len(sys.argv) > 2 else "sweep.png")

#!/usr/bin/env python3
"""Render contour plots of the measure triangle from a `ghzent contour` CSV.

Sample usage:

    ghzent contour -n 4 -k 2 3 4 --resolution 80 -o grid.csv
    python docs/plot_contours.py grid.csv triangle.png
"""

import sys

import matplotlib.pyplot as plt
import numpy as np
import pandas as pd


def main():
    if len(sys.argv) != 3:
        print(__doc__)
        return 2
    df = pd.read_csv(sys.argv[1])
    classes = sorted(df["k"].unique())
    fig, axes = plt.subplots(1, len(classes), figsize=(4.2 * len(classes), 4), squeeze=False)
    for ax, k in zip(axes[0], classes):
        sub = df[df["k"] == k]
        tri = ax.tricontourf(sub["f_plus"], sub["f_minus"], sub["value"], levels=20)
        zero = sub[sub["value"] == 0.0]
        ax.plot(zero["f_plus"], zero["f_minus"], ".", color="white", markersize=2)
        ax.set_title(f"$E^{{({k})}}$")
        ax.set_xlabel("$f^+$")
        ax.set_ylabel("$f^-$")
        ax.set_aspect("equal")
        fig.colorbar(tri, ax=ax)
    fig.tight_layout()
    fig.savefig(sys.argv[2], dpi=160)
    print(f"wrote {sys.argv[2]}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

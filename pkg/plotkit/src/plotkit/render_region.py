"""Render the (Gamma, gamma_plus) region map from a region CSV.

The plot shades each grid cell by its divisibility class and overlays the two
analytic boundary curves: the line 2*Gamma = gamma_plus separating the CP
region from the rest, and gamma_minus^2 = 4*Gamma*(gamma_plus - Gamma)
bounding P-divisibility inside the 2*Gamma <= gamma_plus half-plane.
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.colors import ListedColormap
from matplotlib.patches import Patch

from .schemas import REGION_LABELS, RegionData, read_region_csv

CLASS_COLORS = {
    "CP": "#c0392b",
    "P_only": "#f1948a",
    "BLP_only": "#bdbdbd",
    "none": "#aed6f1",
}


def boundary_curves(data: RegionData):
    """Analytic boundary curves clipped to the plotted window.

    Returns a list of (Gamma, gamma_plus) coordinate pairs, one per curve.
    """
    G_lo, G_hi = float(data.Gamma[0]), float(data.Gamma[-1])
    gp_lo, gp_hi = float(data.gamma_plus[0]), float(data.gamma_plus[-1])
    curves = []

    G_line = np.linspace(G_lo, G_hi, 400)
    curves.append((G_line, 2.0 * G_line))

    gm = data.gamma_minus
    if gm != 0.0:
        # gamma_plus = Gamma + gm^2 / (4 Gamma), defined for Gamma > 0
        G_curve = np.linspace(max(G_lo, 1e-6), G_hi, 400)
        curves.append((G_curve, G_curve + gm * gm / (4.0 * G_curve)))

    clipped = []
    for G_c, gp_c in curves:
        keep = (gp_c >= gp_lo) & (gp_c <= gp_hi)
        clipped.append((G_c[keep], gp_c[keep]))
    return clipped


def render_region(in_path, out_path) -> RegionData:
    data = read_region_csv(in_path)

    cmap = ListedColormap([CLASS_COLORS[name] for name in REGION_LABELS])
    fig, ax = plt.subplots(figsize=(6.0, 5.0))
    ax.pcolormesh(
        data.Gamma,
        data.gamma_plus,
        data.classes.T,
        cmap=cmap,
        vmin=-0.5,
        vmax=len(REGION_LABELS) - 0.5,
        shading="nearest",
        rasterized=True,
    )
    for G_c, gp_c in boundary_curves(data):
        ax.plot(G_c, gp_c, color="black", linewidth=1.2)

    present = sorted(set(data.classes.ravel().tolist()))
    handles = [
        Patch(facecolor=CLASS_COLORS[REGION_LABELS[i]], label=REGION_LABELS[i])
        for i in present
    ]
    ax.legend(handles=handles, loc="upper left", fontsize=8)
    ax.set_xlabel("Gamma")
    ax.set_ylabel("gamma_plus")
    ax.set_title(f"divisibility regions, gamma_minus = {data.gamma_minus:g}")
    fig.savefig(out_path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return data


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotkit-region", description="Render a region-map CSV as an image"
    )
    parser.add_argument("--in", dest="in_path", required=True, help="region CSV path")
    parser.add_argument("--out", dest="out_path", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render_region(args.in_path, args.out_path)
    except (ValueError, OSError) as exc:
        print(f"plotkit-region: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

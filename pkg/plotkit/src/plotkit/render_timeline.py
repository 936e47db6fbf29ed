"""Render a timeline CSV as a stacked figure.

Panels, top to bottom: relaxation-rate traces, 0/1 step plots of the cp/p/blp
flags, and the frequency shift omega(t). Divergent rows appear as gaps in
every trace.
"""

from __future__ import annotations

import argparse
import sys

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .schemas import TimelineData, read_timeline_csv


def render_timeline(in_path, out_path) -> TimelineData:
    data = read_timeline_csv(in_path)

    fig, (ax_rates, ax_flags, ax_omega) = plt.subplots(
        3, 1, figsize=(7.0, 7.5), sharex=True,
        gridspec_kw={"height_ratios": [2.0, 1.2, 1.0]},
    )

    ax_rates.plot(data.t, data.gamma_plus, label="gamma_plus")
    ax_rates.plot(data.t, data.gamma_minus, label="gamma_minus")
    ax_rates.plot(data.t, data.Gamma, label="Gamma")
    ax_rates.axhline(0.0, color="black", linewidth=0.6)
    ax_rates.set_ylabel("rates")
    ax_rates.legend(loc="upper right", fontsize=8)

    # flags stacked with small vertical offsets so overlapping steps stay visible
    for offset, (name, values) in enumerate(
        [("cp", data.cp), ("p", data.p), ("blp", data.blp)]
    ):
        ax_flags.step(
            data.t, values + 1.25 * offset, where="post", label=name
        )
    ax_flags.set_yticks([0.0, 1.0, 1.25, 2.25, 2.5, 3.5])
    ax_flags.set_yticklabels(["0", "1", "0", "1", "0", "1"], fontsize=7)
    ax_flags.set_ylabel("cp / p / blp")
    ax_flags.legend(loc="upper right", fontsize=8)

    ax_omega.plot(data.t, data.omega, color="tab:purple")
    ax_omega.set_ylabel("omega")
    ax_omega.set_xlabel(f"t [{data.time_unit}]")

    fig.savefig(out_path, dpi=150, metadata={"Software": None})
    plt.close(fig)
    return data


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="plotkit-timeline", description="Render a timeline CSV as an image"
    )
    parser.add_argument("--in", dest="in_path", required=True, help="timeline CSV path")
    parser.add_argument("--out", dest="out_path", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render_timeline(args.in_path, args.out_path)
    except (ValueError, OSError) as exc:
        print(f"plotkit-timeline: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())

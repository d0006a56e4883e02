#!/usr/bin/env python3
"""Render a sweep CSV: negativities on top, interference phase below.

Usage: python3 scripts/plot_sweep.py <sweep.csv> [out.png]
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np


def main(argv: list[str]) -> int:
    if not 2 <= len(argv) <= 3:
        print(__doc__.strip(), file=sys.stderr)
        return 1
    csv_path = Path(argv[1])
    out_path = Path(argv[2]) if len(argv) == 3 else csv_path.with_suffix(".png")

    data = np.genfromtxt(csv_path, delimiter=",", names=True, dtype=None,
                         encoding="utf-8")
    x = data["sweep_value"]
    xlabel = "delta_t" if np.ptp(data["d"]) == 0 else "d"

    fig, (ax_n, ax_c) = plt.subplots(
        2, 1, sharex=True, figsize=(7, 6), height_ratios=[2, 1]
    )
    ax_n.plot(x, data["N"], "k-", label="N")
    ax_n.plot(x, data["N_plus"], "C0--", label="N+")
    ax_n.plot(x, data["N_minus"], "C3:", label="N-")
    ax_n.set_ylabel("negativity (per lambda^2)")
    ax_n.legend(frameon=False)

    ax_c.plot(x, data["cos_dgamma"], "C2-")
    ax_c.axhline(0.0, color="0.7", lw=0.8)
    ax_c.set_ylim(-1.05, 1.05)
    ax_c.set_ylabel("cos dgamma")
    ax_c.set_xlabel(xlabel)

    bad = data["status"] != "ok"
    if np.any(bad):
        for axis in (ax_n, ax_c):
            for xv in x[bad]:
                axis.axvline(xv, color="r", alpha=0.2)
        print(f"warning: {int(bad.sum())} rows with status != ok", file=sys.stderr)

    fig.tight_layout()
    fig.savefig(out_path, dpi=150)
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv))

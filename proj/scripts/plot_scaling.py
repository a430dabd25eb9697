#!/usr/bin/env python3
"""Plot CSV output of `thermo scaling` / `thermo robustness`.

Usage:
    thermo scaling --bath bath.json --mode two_level --out scaling.csv
    python3 scripts/plot_scaling.py scaling.csv [out.png]

Comment lines starting with '#' carry run metadata and fit diagnostics and are
skipped here.
"""

import csv
import sys


def load(path):
    rows = []
    with open(path) as fh:
        header = None
        for line in fh:
            if line.startswith("#") or not line.strip():
                continue
            if header is None:
                header = line.strip().split(",")
                continue
            rows.append(dict(zip(header, line.strip().split(","))))
    return rows


def main():
    if len(sys.argv) < 2:
        sys.exit(__doc__)
    rows = load(sys.argv[1])
    if not rows:
        sys.exit("no data rows found")

    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, ax = plt.subplots(figsize=(5, 3.4))
    if "N" in rows[0]:  # scaling output
        xs = [int(r["N"]) for r in rows]
        ys = [float(r["fi_rate"]) for r in rows]
        ax.plot(xs, ys, "o-")
        ax.set_xscale("log", base=2)
        ax.set_xlabel("N")
        ax.set_ylabel("optimal FI rate")
    else:  # robustness output
        xs = [float(r["sigma"]) for r in rows]
        ys = [float(r["mean_per_level"]) for r in rows]
        es = [float(r["std_per_level"]) for r in rows]
        ax.errorbar(xs, ys, yerr=es, fmt="o-")
        ax.set_xlabel("sigma")
        ax.set_ylabel("mean FI rate per level")
    fig.tight_layout()
    out = sys.argv[2] if len(sys.argv) > 2 else "plot.png"
    fig.savefig(out, dpi=160)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()

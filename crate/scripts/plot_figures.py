#!/usr/bin/env python3
"""Render the CSV datasets emitted by `trapfluct figure` as PNG plots.

Usage:
    trapfluct figure 1  --out figures
    trapfluct figure 3a --out figures
    python3 scripts/plot_figures.py --data-dir figures --out-dir figures

Filenames follow `figure<ID>_<kind>_N<N>_<stats>.csv` with kind one of
`mce` (solid), `ce` (dashed) or `symbols` (markers), and stats one of
`bose`, `fermi` or `g<p>-<q>`.
"""

import argparse
import csv
import re
import sys
from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

FILENAME = re.compile(
    r"figure(?P<fig>[0-9]+[ab]?)_(?P<kind>mce|ce|symbols)_N(?P<N>[0-9]+)_(?P<stats>[^.]+)\.csv$"
)

COLORS = {"fermi": "tab:red", "bose": "tab:blue"}
FALLBACK_COLORS = ["tab:orange", "tab:green", "tab:purple", "tab:brown"]
MARKERS = ["o", "s", "^", "v"]


def stats_label(token: str) -> str:
    if token in ("bose", "fermi"):
        return token
    match = re.fullmatch(r"g([0-9]+)-([0-9]+)", token)
    if match:
        return f"g={match.group(1)}/{match.group(2)}"
    return token


def read_rows(path: Path):
    with path.open() as handle:
        rows = [r for r in csv.reader(handle) if r and not r[0].startswith("#")]
    header, data = rows[0], rows[1:]
    return header, [(int(r[0]), float(r[1])) for r in data]


def color_for(token: str, palette: dict) -> str:
    if token not in palette:
        fixed = COLORS.get(token)
        palette[token] = fixed or FALLBACK_COLORS[len(palette) % len(FALLBACK_COLORS)]
    return palette[token]


def plot_figure(fig_id: str, files, out_dir: Path) -> Path:
    fig, ax = plt.subplots(figsize=(7, 5))
    palette: dict = {}
    marker_count = 0
    big_n = "?"
    for path, kind, n_value, token in sorted(files, key=lambda f: (f[1], f[3])):
        big_n = n_value
        _, data = read_rows(path)
        xs = [n for n, _ in data]
        ys = [v for _, v in data]
        color = color_for(token, palette)
        label = stats_label(token)
        if kind == "mce":
            ax.plot(xs, ys, color=color, lw=1.5, label=f"{label} (MCE)")
        elif kind == "ce":
            ax.plot(xs, ys, color=color, lw=1.5, ls="--", label=f"{label} (CE)")
        else:
            marker = MARKERS[marker_count % len(MARKERS)]
            marker_count += 1
            ax.plot(
                xs,
                ys,
                color=color,
                marker=marker,
                ls="none",
                mfc="none",
                ms=6,
                label=f"{label} (enumerated)",
            )
    ax.set_xlabel(r"excitation quanta $n$  ($\hbar\omega$)")
    ax.set_ylabel(r"ground-state number fluctuation  $\delta N_0$")
    ax.set_title(f"figure {fig_id}  (N = {big_n})")
    ax.legend(frameon=False, fontsize=9)
    ax.set_xlim(left=0)
    ax.set_ylim(bottom=0)
    fig.tight_layout()
    target = out_dir / f"figure{fig_id}.png"
    fig.savefig(target, dpi=160)
    plt.close(fig)
    return target


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data-dir", type=Path, default=Path("figures"))
    parser.add_argument("--out-dir", type=Path, default=None)
    args = parser.parse_args()
    out_dir = args.out_dir or args.data_dir
    out_dir.mkdir(parents=True, exist_ok=True)

    grouped = defaultdict(list)
    for path in sorted(args.data_dir.glob("figure*.csv")):
        match = FILENAME.search(path.name)
        if match:
            grouped[match["fig"]].append((path, match["kind"], match["N"], match["stats"]))

    if not grouped:
        print(f"no figure CSVs found under {args.data_dir}", file=sys.stderr)
        return 1
    for fig_id, files in sorted(grouped.items()):
        target = plot_figure(fig_id, files, out_dir)
        print(f"wrote {target}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

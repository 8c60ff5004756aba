"""Figure + delimited output for the CLI report paths.

Every rendered figure is accompanied by a CSV with the same stem so the
numbers behind the picture stay machine readable.
"""

from __future__ import annotations

import csv
import os
from fractions import Fraction

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _ensure_dir(path: str):
    os.makedirs(path, exist_ok=True)


def write_sequence_csv(path: str, rows, header):
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


def render_sequences(plot_dir: str, stem: str, sequences: dict[str, list]) -> list[str]:
    """Bar charts of labeled coefficient sequences, plus one CSV."""
    _ensure_dir(plot_dir)
    written = []
    csv_path = os.path.join(plot_dir, f"{stem}.csv")
    rows = []
    for label, seq in sequences.items():
        for k, v in enumerate(seq):
            rows.append([label, k, str(v)])
    write_sequence_csv(csv_path, rows, ["sequence", "index", "value"])
    written.append(csv_path)

    fig, axes = plt.subplots(
        1, len(sequences), figsize=(4.2 * len(sequences), 3.2), squeeze=False
    )
    for ax, (label, seq) in zip(axes[0], sequences.items()):
        values = [float(Fraction(v)) for v in seq]
        ax.bar(range(len(values)), values, color="#35618f")
        ax.set_title(label, fontsize=9)
        ax.set_xlabel("k")
    fig.tight_layout()
    png_path = os.path.join(plot_dir, f"{stem}.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    written.append(png_path)
    return written


def render_histogram(plot_dir: str, stem: str, hist: dict[int, int], title: str) -> list[str]:
    _ensure_dir(plot_dir)
    written = []
    csv_path = os.path.join(plot_dir, f"{stem}.csv")
    write_sequence_csv(
        csv_path,
        [[k, v] for k, v in sorted(hist.items())],
        ["rank", "count"],
    )
    written.append(csv_path)
    fig, ax = plt.subplots(figsize=(4.2, 3.2))
    keys = sorted(hist)
    ax.bar(keys, [hist[k] for k in keys], color="#8f4d35")
    ax.set_title(title, fontsize=9)
    ax.set_xticks(keys)
    fig.tight_layout()
    png_path = os.path.join(plot_dir, f"{stem}.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    written.append(png_path)
    return written


def render_verdicts(plot_dir: str, stem: str, verdicts: dict[str, bool]) -> list[str]:
    _ensure_dir(plot_dir)
    written = []
    csv_path = os.path.join(plot_dir, f"{stem}.csv")
    write_sequence_csv(
        csv_path,
        [[k, "pass" if v else "FAIL"] for k, v in sorted(verdicts.items())],
        ["check", "verdict"],
    )
    written.append(csv_path)
    fig, ax = plt.subplots(figsize=(5.2, 0.42 * max(len(verdicts), 2) + 1.2))
    names = sorted(verdicts)
    colors = ["#2d7a2d" if verdicts[k] else "#a02020" for k in names]
    ax.barh(range(len(names)), [1] * len(names), color=colors)
    ax.set_yticks(range(len(names)))
    ax.set_yticklabels(names, fontsize=7)
    ax.set_xticks([])
    ax.set_title(f"{sum(verdicts.values())}/{len(verdicts)} checks pass", fontsize=9)
    fig.tight_layout()
    png_path = os.path.join(plot_dir, f"{stem}.png")
    fig.savefig(png_path, dpi=150)
    plt.close(fig)
    written.append(png_path)
    return written

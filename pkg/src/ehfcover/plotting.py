"""Sweep report figures (matplotlib, Agg backend)."""

from __future__ import annotations

from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .corpus import COVER_STATUSES, CorpusRecord  # noqa: E402


def plot_status_by_n(records: list[CorpusRecord], path: Path) -> None:
    ns = sorted({r.n for r in records})
    counts = Counter((r.n, r.cover_status) for r in records)
    fig, ax = plt.subplots(figsize=(6, 4))
    bottom = [0] * len(ns)
    for status in COVER_STATUSES:
        vals = [counts.get((n, status), 0) for n in ns]
        if any(vals):
            ax.bar(ns, vals, bottom=bottom, label=status)
            bottom = [b + v for b, v in zip(bottom, vals)]
    ax.set_yscale("log")
    ax.set_xlabel("n")
    ax.set_ylabel("graphs")
    ax.set_title("Cover status by order")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_steps(summary: dict, path: Path) -> None:
    steps = summary.get("steps", {})
    fig, ax = plt.subplots(figsize=(6, 4))
    names = list(steps)
    ax.barh(names, [steps[k] for k in names])
    ax.set_xscale("log")
    ax.set_xlabel("trace records")
    ax.set_title("Engine steps")
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def plot_audits(summary: dict, path: Path) -> None:
    audits = summary.get("audits", {})
    names = [k for k, v in audits.items() if v["graphs"]]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.barh(names, [max(audits[k]["checked"], 1) for k in names], label="checked")
    ax.barh(names, [audits[k]["violations"] for k in names], label="violations", color="tab:red")
    ax.set_xscale("log")
    ax.set_title("Audit instances")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path)
    plt.close(fig)


def write_sweep_plots(records: list[CorpusRecord], summary: dict, out_dir: str | Path) -> list[Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = [out / "cover_status.png", out / "engine_steps.png", out / "audits.png"]
    plot_status_by_n(records, paths[0])
    plot_steps(summary, paths[1])
    plot_audits(summary, paths[2])
    return paths

"""Output files and figures for the CLI report paths.

Every JSON/CSV artifact embeds the resolved run configuration and a
content-derived build identifier so reruns are attributable and
bit-reproducible (no timestamps).  Figures are rendered to PNG next to the
delimited output with a non-interactive backend.
"""

from __future__ import annotations

import csv
import hashlib
import json
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from . import __version__  # noqa: E402


def build_id(config: dict) -> str:
    """12-hex identifier derived from the package version and config."""
    blob = json.dumps({"version": __version__, "config": config},
                      sort_keys=True, default=str)
    return hashlib.sha1(blob.encode()).hexdigest()[:12]


def write_json(path: Path, payload: dict, config: dict) -> Path:
    doc = {"build_id": build_id(config), "version": __version__,
           "config": config, **payload}
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2, default=str)
    return path


def write_csv(path: Path, fieldnames: Sequence[str], rows: Sequence[dict],
              config: dict) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        fh.write(f"# build_id: {build_id(config)}  version: {__version__}\n")
        fh.write(f"# config: {json.dumps(config, sort_keys=True, default=str)}\n")
        w = csv.DictWriter(fh, fieldnames=list(fieldnames))
        w.writeheader()
        for row in rows:
            w.writerow(row)
    return path


def _save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def fig_coefficients(g_floats: Sequence[float], sigma: Sequence[float],
                     path: Path) -> Path:
    """Coefficient magnitudes and the factorial-growth ratio estimates."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    n = range(1, len(g_floats))
    ax1.semilogy(list(n), [abs(c) for c in g_floats[1:]], "o-", ms=3.5)
    ax1.set_xlabel("order n in g")
    ax1.set_ylabel("|coefficient|")
    ax1.set_title("g-series magnitude")
    ax2.plot(range(1, len(sigma) + 1), sigma, "s-", ms=3.5, color="#b5651d")
    ax2.set_xlabel("n")
    ax2.set_ylabel(r"$|c_{n+1}| / ((n{+}1)\,|c_n|)$")
    ax2.set_title("growth-rate estimate")
    return _save(fig, path)


def fig_resonances(rows: Sequence[dict], path: Path) -> Path:
    """Re and Im of the located resonance across the coupling grid."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    betas = [row["beta_abs"] for row in rows]
    ax1.plot(betas, [row["re_E"] for row in rows], "o-", ms=4)
    ax1.set_xlabel(r"$|\beta|$")
    ax1.set_ylabel("Re E")
    ax1.set_title("resonance location")
    ax2.plot(betas, [row["im_E"] for row in rows], "o-", ms=4, color="#8b0000")
    ax2.set_xlabel(r"$|\beta|$")
    ax2.set_ylabel("Im E")
    ax2.set_title("resonance width part")
    return _save(fig, path)


def fig_continuation(rows: Sequence[tuple[float, float, float, float]],
                     path: Path) -> Path:
    """Eigenvalue track in the complex plane, coloured by arg(beta)."""
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    s = [r[0] for r in rows]
    sc = ax.scatter([r[2] for r in rows], [r[3] for r in rows], c=s,
                    cmap="viridis", s=14)
    fig.colorbar(sc, ax=ax, label=r"$\arg\beta$")
    ax.set_xlabel("Re E")
    ax.set_ylabel("Im E")
    ax.set_title("argument continuation track")
    return _save(fig, path)


def fig_resummation(rows: Sequence[dict], path: Path) -> Path:
    """Distributional sum across the grid plus the discontinuity size."""
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 3.6))
    betas = [row["beta"] for row in rows]
    ax1.plot(betas, [row["f"] for row in rows], "o-", ms=4)
    ax1.set_xlabel(r"$\beta$")
    ax1.set_ylabel("f")
    ax1.set_title("distributional sum")
    d = [row["abs_d"] for row in rows]
    if any(v > 0 for v in d):
        ax2.semilogy(betas, d, "o-", ms=4, color="#8b0000")
    else:
        ax2.plot(betas, d, "o-", ms=4, color="#8b0000")
    ax2.set_xlabel(r"$\beta$")
    ax2.set_ylabel("|d|")
    ax2.set_title("discontinuity")
    return _save(fig, path)


def fig_borel_poles(pole_report: Sequence[dict], path: Path) -> Path:
    """Pade pole scatter in the Borel plane."""
    fig, ax = plt.subplots(figsize=(5.2, 4.2))
    ax.scatter([p["re"] for p in pole_report], [p["im"] for p in pole_report],
               marker="x", color="#8b0000")
    ax.axhline(0.0, color="0.6", lw=0.8)
    ax.axvline(0.0, color="0.6", lw=0.8)
    ax.set_xlabel("Re t")
    ax.set_ylabel("Im t")
    ax.set_title("Borel-plane poles of the continuation")
    return _save(fig, path)

"""Figure builders for the two output families.

Spectrum: solid estimated curve over trial energies, dashed vertical lines
at the exact eigenenergies (filtered by overlap), and an inset showing the
absolute deviation from the exact curve with its maximum annotated.

Scaling: infidelity against the maximal evolution time, dots (with error
bars when a repetition-spread column is present), the exact-filter series,
and the dashed theoretical bound.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import matplotlib
matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


class SchemaError(ValueError):
    """An expected CSV column is missing; the message names it."""


_PNG_METADATA = {"Software": "plotkit"}


def read_csv(path, required=()):
    """Read a qcool CSV: '#'-prefixed config lines, one header row, floats.

    Returns a dict column -> ndarray (non-numeric cells become NaN).
    """
    if not os.path.exists(path):
        raise SchemaError(f"{path}: file not found")
    header = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                header = line.split(",")
                continue
            rows.append(line.split(","))
    if header is None:
        raise SchemaError(f"{path}: no header row found")
    for column in required:
        if column not in header:
            raise SchemaError(f"{path}: missing required column {column!r}")

    def to_float(cell):
        try:
            return float(cell)
        except ValueError:
            return float("nan")

    table = {}
    for k, name in enumerate(header):
        table[name] = np.array([to_float(r[k]) if k < len(r) else float("nan") for r in rows])
    return table


@dataclass
class FigureSpec:
    in_dir: str
    out_path: str
    kind: str = "spectrum"          # spectrum | scaling
    log_x: bool = False
    min_overlap: float = 0.01       # eigenvalue lines shown above this weight
    spectrum_name: str = "spectrum.csv"
    oracle_name: str = "oracle.csv"
    eigen_name: str = "eigenvalues.csv"
    scaling_name: str = "cooling.csv"


def plot_spectrum(spec: FigureSpec) -> dict:
    spectrum = read_csv(os.path.join(spec.in_dir, spec.spectrum_name),
                        required=("E_original_frame", "D_hat"))
    oracle = read_csv(os.path.join(spec.in_dir, spec.oracle_name),
                      required=("E_original_frame", "D_exact"))
    eigen = read_csv(os.path.join(spec.in_dir, spec.eigen_name),
                     required=("E_original_frame", "overlap"))
    energies = spectrum["E_original_frame"]
    if len(energies) != len(oracle["E_original_frame"]) or np.max(
            np.abs(energies - oracle["E_original_frame"])) > 1e-9:
        raise SchemaError("spectrum and oracle files use different energy grids")

    deviation = np.abs(spectrum["D_hat"] - oracle["D_exact"])
    max_error = float(deviation.max()) if len(deviation) else 0.0

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    lines = eigen["E_original_frame"][eigen["overlap"] >= spec.min_overlap]
    for k, e in enumerate(lines):
        ax.axvline(e, color="0.45", linestyle="--", linewidth=0.9,
                   label="exact eigenenergies" if k == 0 else None)
    ax.plot(energies, spectrum["D_hat"], color="tab:blue", linewidth=1.4,
            label="estimated normalization")
    ax.set_xlabel("trial energy")
    ax.set_ylabel("normalization factor")
    if len(lines):
        ax.legend(loc="upper right", fontsize=8)

    inset = ax.inset_axes([0.58, 0.45, 0.38, 0.3])
    inset.plot(energies, deviation, color="tab:red", linewidth=0.8)
    inset.set_yscale("log" if max_error > 0 else "linear")
    inset.set_title(f"max deviation {max_error:.2e}", fontsize=7)
    inset.tick_params(labelsize=6)

    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)
    return {"out_path": spec.out_path, "max_error": max_error,
            "eigenvalue_lines": len(lines)}


def plot_scaling(spec: FigureSpec) -> dict:
    table = read_csv(os.path.join(spec.in_dir, spec.scaling_name),
                     required=("t_m", "infidelity_estimated",
                               "infidelity_oracle", "theoretical_bound"))
    t_m = table["t_m"]
    estimated = table["infidelity_estimated"]
    oracle = table["infidelity_oracle"]
    bound = table["theoretical_bound"]
    spread = table.get("infidelity_std")

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    positive = estimated > 0
    if spread is not None:
        ax.errorbar(t_m[positive], estimated[positive], yerr=spread[positive],
                    fmt="o", markersize=4, capsize=2.5, color="tab:blue",
                    label="sampled infidelity")
    else:
        ax.plot(t_m[positive], estimated[positive], "o", markersize=4,
                color="tab:blue", label="sampled infidelity")
    ax.plot(t_m, oracle, "-", color="tab:green", linewidth=1.1,
            label="exact filtering")
    ax.plot(t_m, bound, "--", color="0.35", linewidth=1.2,
            label="theoretical bound")
    ax.set_yscale("log")
    if spec.log_x:
        ax.set_xscale("log")
    ax.set_xlabel("maximal evolution time")
    ax.set_ylabel("infidelity")
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(spec.out_path, dpi=150, metadata=_PNG_METADATA)
    plt.close(fig)
    return {"out_path": spec.out_path, "points": int(positive.sum()),
            "has_error_bars": spread is not None}

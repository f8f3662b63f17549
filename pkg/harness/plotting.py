"""
Force envelope and run telemetry charts
"""

import os
import math
import logging
from typing import Dict, List, Optional

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import pandas as pd

from sim.force_model import envelope_frame
from sim.models import MassGeometry

logger = logging.getLogger(__name__)

DEFAULT_BETAS_DEG = [10.0, 30.0, 60.0, 80.0, 90.0]
ENVELOPE_POINTS = 400
Y_LIMIT_FACTOR = 5.0  # panels are clipped at this multiple of G_t

# Fixed ids and no timestamp keep the SVG byte-stable across runs
matplotlib.rcParams["svg.hashsalt"] = "uam-sim"
_SVG_METADATA = {"Date": None}


def envelope_frames(betas_deg: List[float], mg: MassGeometry,
                    n_points: int = ENVELOPE_POINTS) -> Dict[float, pd.DataFrame]:
    """One envelope table per surface inclination, keyed by beta0 in degrees"""
    return {beta: envelope_frame(math.radians(beta), mg, n_points) for beta in betas_deg}


def plot_envelope(frames: Dict[float, pd.DataFrame], G_t: float, path: str) -> str:
    """Three panels (f_E, f_E_Z, T_sum against phi0) with one series per beta0"""
    fig, axes = plt.subplots(1, 3, figsize=(15.0, 4.6), constrained_layout=True)
    panels = [
        ("f_E_N", "f_E (N)", "Contact force"),
        ("f_E_Z_N", "f_E_Z (N)", "Vertical part of the contact force"),
        ("T_sum_N", "T_sum (N)", "Total thrust"),
    ]

    for ax, (column, label, title) in zip(axes, panels):
        for beta, frame in frames.items():
            ax.plot(frame["phi0_deg"], frame[column], label=f"beta0 = {beta:g} deg")
        ax.set_xlabel("phi0 (deg)")
        ax.set_ylabel(label)
        ax.set_title(title)
        ax.set_ylim(0.0, Y_LIMIT_FACTOR * G_t)
        ax.grid(True, ls=":")
    axes[0].legend(loc="upper left", fontsize=8)

    _save(fig, path)
    logger.info(f"Envelope chart with {len(frames)} series written to {path}")
    return path


def write_envelope(betas_deg: List[float], mg: MassGeometry, out_dir: str,
                   n_points: int = ENVELOPE_POINTS) -> List[str]:
    """
    CSV per beta0 plus the three-panel SVG

    Returns:
        written paths, CSVs first, SVG last
    """
    os.makedirs(out_dir, exist_ok=True)
    frames = envelope_frames(betas_deg, mg, n_points)

    paths = []
    for beta, frame in frames.items():
        csv_path = os.path.join(out_dir, f"envelope_beta{beta:g}.csv")
        frame.to_csv(csv_path, index=False, float_format="%.9g")
        paths.append(csv_path)

    paths.append(plot_envelope(frames, mg.G_t, os.path.join(out_dir, "envelope.svg")))
    return paths


def plot_telemetry(telemetry: pd.DataFrame, path: str, f_E_d: Optional[float] = None,
                   T_sum_d: Optional[float] = None, title: str = "") -> str:
    """Force, thrust and roll against time for one run"""
    fig, axes = plt.subplots(3, 1, figsize=(9.0, 8.0), sharex=True, constrained_layout=True)
    t = telemetry["t"]

    axes[0].plot(t, telemetry["f_E_est"], label="estimated")
    axes[0].plot(t, telemetry["f_E_true"], label="contact", alpha=0.6)
    if f_E_d is not None:
        axes[0].axhline(f_E_d, color="k", ls="--", lw=1.0, label="desired")
    axes[0].set_ylabel("f_E (N)")

    axes[1].plot(t, telemetry["T_sum_cmd"], label="commanded")
    axes[1].plot(t, telemetry["T_sum_ach"], label="achieved", alpha=0.8)
    if T_sum_d is not None:
        axes[1].axhline(T_sum_d, color="k", ls="--", lw=1.0, label="desired")
    axes[1].set_ylabel("T_sum (N)")

    axes[2].plot(t, telemetry["phi_deg"], label="roll")
    axes[2].step(t, telemetry["mode"] * telemetry["phi_deg"].abs().max(), where="post",
                 color="grey", alpha=0.4, label="interaction mode")
    axes[2].set_ylabel("phi (deg)")
    axes[2].set_xlabel("t (s)")

    for ax in axes:
        ax.grid(True, ls=":")
        ax.legend(loc="best", fontsize=8)
    if title:
        axes[0].set_title(title)

    _save(fig, path)
    logger.info(f"Telemetry chart written to {path}")
    return path


def plot_comparison(telemetry: Dict[str, pd.DataFrame], path: str, title: str = "") -> str:
    """Estimated force and achieved thrust of several runs on shared axes"""
    if not telemetry:
        raise ValueError("nothing to compare")
    fig, axes = plt.subplots(2, 1, figsize=(9.0, 6.0), sharex=True, constrained_layout=True)

    for name, frame in telemetry.items():
        axes[0].plot(frame["t"], frame["f_E_est"], label=name)
        axes[1].plot(frame["t"], frame["T_sum_ach"], label=name)
    axes[0].set_ylabel("f_E (N)")
    axes[1].set_ylabel("T_sum (N)")
    axes[1].set_xlabel("t (s)")

    for ax in axes:
        ax.grid(True, ls=":")
    axes[0].legend(loc="best", fontsize=8)
    if title:
        axes[0].set_title(title)

    _save(fig, path)
    logger.info(f"Comparison chart of {len(telemetry)} runs written to {path}")
    return path


def _save(fig, path: str):
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    try:
        fig.savefig(path, format="svg", metadata=_SVG_METADATA)
    finally:
        plt.close(fig)

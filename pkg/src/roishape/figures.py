"""Regenerate the CSV data behind the rate-loss, weight-histogram,
run-length, BER/FER and link-budget figures."""

from __future__ import annotations

from dataclasses import replace
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import io as rio
from .analysis import encode_frames, link_budget, max_run_length, omega_histogram, random_messages
from .combinatorics import rate_loss_csv, rate_loss_table
from .polar import FrozenMode, construct
from .simulation import SystemConfig, fer_sweep, low_rate_ber_sweep

FIGURES = ("fig2", "fig3", "fig4", "fig5", "table1")

FIG2_LENGTHS = (20, 50, 100, 200, 500)
FIG2_PHI = tuple(round(0.01 * i, 2) for i in range(1, 100))

SD_SNR = tuple(np.arange(3.0, 6.01, 0.5))
HD_SNR = tuple(np.arange(5.0, 8.51, 0.5))
LOW_RATE_SNR = (-10.0, -8.0, -6.0, -4.0, -2.0)

# flicker limit on the brightness change period
MFTP_S = 0.005
# maximum run length reported alongside Table I of the letter
REPORTED_GAMMA = 63


def runlength_reports(config: SystemConfig, frames: int, seed: int | None = None) -> dict:
    """Matched run-length statistics for all-zero and RLA frozen values.

    Both modes encode the same shaped words; ``v`` is drawn per frame.
    """
    rng = np.random.default_rng(config.master_seed if seed is None else seed)
    cb = config.codebook
    v = rng.integers(0, 2, size=frames, dtype=np.uint8)
    msgs = random_messages(rng, frames, cb.k)
    out = {}
    for mode in (FrozenMode.ALL_ZERO, FrozenMode.RLA):
        spec = construct(config.l, config.n, config.design_snr_db, mode)
        out[mode.value] = max_run_length(encode_frames(cb, spec, v, msgs), concatenate=True)
    return out


def regenerate_figures(which: str, config: SystemConfig, out_dir, frames: int = 100_000,
                       snr_list=None) -> list[Path]:
    """Write the CSV files for one figure id (or ``"all"``) and return their paths."""
    if which == "all":
        return [p for w in FIGURES for p in regenerate_figures(w, config, out_dir, frames, snr_list)]
    if which not in FIGURES:
        raise ValueError(f"unknown figure id {which!r}; choose from {', '.join(FIGURES)}")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    def emit(name, text):
        path = out_dir / name
        path.write_text(text)
        written.append(path)

    if which == "fig2":
        emit("fig2_rate_loss.csv", rate_loss_csv(rate_loss_table(FIG2_LENGTHS, FIG2_PHI)))
    elif which == "fig3":
        cb = config.codebook
        for encoder, tag in (("systematic", "spe"), ("nonsystematic", "nspe")):
            h = [omega_histogram(cb, config.code, encoder, v, frames, config.master_seed) for v in (0, 1)]
            emit(f"fig3_omega_{tag}.csv", rio.histogram_csv(*h))
    elif which == "fig4":
        emit("fig4_runlength.csv", rio.runlength_csv(runlength_reports(config, frames)))
    elif which == "fig5":
        for dec in ("sd", "hd"):
            default = SD_SNR if dec == "sd" else HD_SNR
            recs = fer_sweep(replace(config, decoder=dec), snr_list or default, frames)
            emit(f"fig5_fer_{dec}.csv", rio.sweep_csv(recs))
        recs = low_rate_ber_sweep(config, snr_list or LOW_RATE_SNR, frames)
        emit("fig5_low_rate.csv", rio.sweep_csv(recs, stream="low"))
    elif which == "table1":
        cb = config.codebook
        measured = runlength_reports(config, frames)[config.frozen_mode].gamma
        rows = {
            "reported": link_budget(REPORTED_GAMMA, MFTP_S, cb.k, cb.n, config.l, 12_600),
        }
        clock = Fraction(measured) / Fraction(str(MFTP_S))
        rows["measured"] = link_budget(measured, MFTP_S, cb.k, cb.n, config.l, clock)
        emit("table1_link_budget.csv", rio.link_budget_csv(rows))
    return written

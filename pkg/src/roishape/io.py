"""Flat-file formats: frame files, the code-spec JSON file and CSV tables."""

from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .analysis import LinkBudget, OmegaHistogram, RunLengthReport
from .polar import FrozenMode, PolarCodeSpec
from .simulation import SweepRecord


class FrameFileError(ValueError):
    def __init__(self, path, line_no: int, reason: str):
        super().__init__(f"{path}:{line_no}: {reason}")
        self.line_no = line_no


def parse_frames(text: str, length: int, source: str = "<frames>") -> np.ndarray:
    """Parse one ``length``-character binary frame per line."""
    rows = []
    for no, line in enumerate(text.splitlines(), start=1):
        if len(line) != length:
            raise FrameFileError(source, no, f"expected {length} bits, got {len(line)}")
        if set(line) - {"0", "1"}:
            raise FrameFileError(source, no, "non-binary character")
        rows.append(np.frombuffer(line.encode("ascii"), dtype=np.uint8) - ord("0"))
    return np.array(rows, dtype=np.uint8).reshape(len(rows), length)


def read_frames(path, length: int) -> np.ndarray:
    return parse_frames(Path(path).read_text(), length, str(path))


def format_frames(frames) -> str:
    return "".join("".join("1" if b else "0" for b in row) + "\n" for row in frames)


def write_frames(path, frames) -> None:
    Path(path).write_text(format_frames(frames))


# --- code spec ----------------------------------------------------------------

def code_spec_to_dict(spec: PolarCodeSpec) -> dict:
    return {
        "l": spec.l,
        "n_info": spec.n_info,
        "design_snr_db": spec.design_snr_db,
        "frozen_mode": spec.frozen_mode.value,
        "index_order": "natural",
        "info_set": spec.info_set.tolist(),
        "frozen_set": spec.frozen_set.tolist(),
        "frozen_values": spec.frozen_values.tolist(),
        "metrics": spec.metrics.tolist(),
    }


def code_spec_from_dict(d: dict) -> PolarCodeSpec:
    return PolarCodeSpec(
        l=int(d["l"]),
        n_info=int(d["n_info"]),
        info_set=np.array(d["info_set"], dtype=np.int64),
        frozen_set=np.array(d["frozen_set"], dtype=np.int64),
        frozen_values=np.array(d["frozen_values"], dtype=np.uint8),
        metrics=np.array(d["metrics"], dtype=float),
        design_snr_db=float(d["design_snr_db"]),
        frozen_mode=FrozenMode(d["frozen_mode"]),
    )


def save_code_spec(path, spec: PolarCodeSpec) -> None:
    Path(path).write_text(json.dumps(code_spec_to_dict(spec), indent=1) + "\n")


def load_code_spec(path) -> PolarCodeSpec:
    return code_spec_from_dict(json.loads(Path(path).read_text()))


# --- CSV tables ---------------------------------------------------------------

def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _g(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.6g}"


def histogram_csv(hist0: OmegaHistogram, hist1: OmegaHistogram) -> str:
    return _csv(
        ["ones_count", "count_v0", "count_v1"],
        ([w, int(a), int(b)] for w, (a, b) in enumerate(zip(hist0.bins, hist1.bins))),
    )


def runlength_csv(reports: dict[str, RunLengthReport]) -> str:
    return _csv(
        ["mode", "frames", "gamma", "per_frame_p50", "per_frame_max", "stream_max"],
        ([mode, r.frames_observed, r.gamma, _g(r.per_frame_p50), int(r.per_frame_max.max()), r.stream_max]
         for mode, r in reports.items()),
    )


def sweep_csv(records: list[SweepRecord], stream: str = "high") -> str:
    """Sweep table. ``stream="low"`` reports the low-rate bit, one per frame."""
    rows = []
    for r in records:
        if stream == "high":
            errs = (r.bit_errors, r.frame_errors, _g(r.ber), _g(r.fer))
        else:
            errs = (r.low_rate_errors, r.low_rate_errors, _g(r.low_rate_ber), _g(r.low_rate_ber))
        rows.append([f"{r.snr_db:.4g}", f"{r.ebn0_db:.4f}", r.frames, *errs])
    return _csv(["snr_db", "ebn0_db", "frames", "bit_errors", "frame_errors", "ber", "fer"], rows)


def link_budget_csv(rows: dict[str, LinkBudget]) -> str:
    return _csv(
        ["source", "gamma", "mftp_s", "min_clock_hz", "spectral_efficiency",
         "spectral_efficiency_fec", "clock_hz", "bit_rate_bps"],
        ([src, b.gamma, _g(float(b.mftp_s)), _g(float(b.min_clock_hz)), _g(float(b.spectral_efficiency)),
          _g(float(b.spectral_efficiency_fec)), _g(float(b.clock_hz)), _g(float(b.bit_rate_bps))]
         for src, b in rows.items()),
    )

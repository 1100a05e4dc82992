"""Run-length statistics, codeword weight histograms, low-rate detection
and the flicker / throughput arithmetic of the link budget."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.stats import binom

from .channel import hard_decision
from .polar import PolarCodeSpec, nonsystematic_encode, systematic_encode
from .shaping import ShapingCodebook, fdc_encode_batch


@dataclass(frozen=True)
class RunLengthReport:
    gamma: int
    per_frame_max: np.ndarray
    stream_max: int
    frames_observed: int

    @property
    def per_frame_p50(self) -> float:
        return float(np.median(self.per_frame_max))


def _row_max_runs(frames: np.ndarray) -> np.ndarray:
    b, l = frames.shape
    change = np.ones((b, l), dtype=bool)
    change[:, 1:] = frames[:, 1:] != frames[:, :-1]
    run_id = np.cumsum(change, axis=1) - 1  # per-row run index, < l
    lengths = np.bincount((np.arange(b)[:, None] * l + run_id).ravel(), minlength=b * l)
    return lengths.reshape(b, l).max(axis=1)


def max_run_length(frames, concatenate: bool = True) -> RunLengthReport:
    """Longest run of identical bits, per frame and over the frames sent back to back.

    ``gamma`` is the per-frame maximum; ``stream_max`` lets runs cross frame
    boundaries in the given order (only computed when ``concatenate``).
    """
    if isinstance(frames, np.ndarray) and frames.ndim == 1:
        frames = frames[None]
    if isinstance(frames, np.ndarray) and frames.ndim == 2:
        rows = frames.astype(np.uint8)
        per_frame = _row_max_runs(rows) if rows.size else np.zeros(0, int)
        flat = rows.ravel()
    else:
        rows = [np.asarray(f, dtype=np.uint8).ravel() for f in frames]
        per_frame = np.array([_row_max_runs(r[None])[0] for r in rows if len(r)])
        flat = np.concatenate(rows) if rows else np.zeros(0, np.uint8)
    if len(per_frame) == 0 or len(per_frame) != len(rows):
        raise ValueError("max_run_length needs at least one frame, all nonempty")
    stream = int(_row_max_runs(flat[None])[0]) if concatenate else int(per_frame.max())
    return RunLengthReport(int(per_frame.max()), per_frame, stream, len(per_frame))


@dataclass(frozen=True)
class OmegaHistogram:
    bins: np.ndarray  # bins[w] = frames with w ones, w = 0..l
    total: int
    range_label: str

    @property
    def l(self) -> int:
        return len(self.bins) - 1

    def support(self) -> tuple[int, int]:
        nz = np.flatnonzero(self.bins)
        return int(nz[0]), int(nz[-1])

    def mean_omega(self) -> float:
        return float(np.arange(len(self.bins)) @ self.bins / (self.total * self.l))


def random_messages(rng: np.random.Generator, count: int, k: int) -> np.ndarray:
    return rng.integers(0, 2, size=(count, k), dtype=np.uint8)


def encode_frames(cb: ShapingCodebook, spec: PolarCodeSpec, v, msgs: np.ndarray, encoder: str = "systematic") -> np.ndarray:
    """FDC followed by the chosen polar encoder, one codeword per message row."""
    if spec.n_info != cb.n:
        raise ValueError(f"code carries {spec.n_info} info bits but shaped words have {cb.n}")
    u = fdc_encode_batch(cb, v, msgs)
    if encoder == "systematic":
        return systematic_encode(spec, u)
    if encoder == "nonsystematic":
        return nonsystematic_encode(spec, u)
    raise ValueError(f"unknown encoder {encoder!r}")


def omega_histogram(
    cb: ShapingCodebook,
    spec: PolarCodeSpec,
    encoder: str,
    v: int,
    samples: int,
    seed: int,
    batch: int = 10_000,
) -> OmegaHistogram:
    """Histogram of codeword ones-counts for uniformly random messages."""
    rng = np.random.default_rng(seed)
    bins = np.zeros(spec.l + 1, dtype=np.int64)
    done = 0
    while done < samples:
        count = min(batch, samples - done)
        x = encode_frames(cb, spec, v, random_messages(rng, count, cb.k), encoder)
        bins += np.bincount(x.sum(axis=1), minlength=spec.l + 1)
        done += count
    return OmegaHistogram(bins, samples, f"logic-{v}")


def detect_low_rate(received: np.ndarray, l: int | None = None, method: str = "count") -> np.ndarray | int:
    """Decide the low-rate bit from one received frame (or a batch of rows).

    ``count`` thresholds the fraction of hard-detected ones at one half (a
    tie decides 1); ``mean`` thresholds the mean amplitude at zero.
    """
    y = np.asarray(received, dtype=float)
    if l is not None and y.shape[-1] != l:
        raise ValueError(f"frame length {y.shape[-1]} != l={l}")
    if method == "count":
        v = 2 * hard_decision(y).sum(axis=-1) >= y.shape[-1]
    elif method == "mean":
        v = y.mean(axis=-1) >= 0
    else:
        raise ValueError(f"unknown detection method {method!r}")
    v = np.asarray(v, dtype=np.uint8)
    return int(v) if v.ndim == 0 else v


def low_rate_error_probability(ones_count: int, l: int, p: float, v: int) -> float:
    """Probability that count-based detection misreads ``v`` when each hard
    decision flips independently with probability ``p``."""
    keep = binom.pmf(np.arange(ones_count + 1), ones_count, 1 - p)
    gain = binom.pmf(np.arange(l - ones_count + 1), l - ones_count, p)
    received = np.convolve(keep, gain)  # pmf of received ones-count
    p_one = received[(l + 1) // 2:].sum()
    return float(p_one if v == 0 else 1 - p_one)


def low_rate_ber_oracle(hist0: OmegaHistogram, hist1: OmegaHistogram, p: float) -> float:
    """Semi-analytic low-rate BER for equiprobable ``v`` from noiseless weight histograms."""
    total = 0.0
    for v, h in ((0, hist0), (1, hist1)):
        for w in np.flatnonzero(h.bins):
            total += h.bins[w] / h.total * low_rate_error_probability(int(w), h.l, p, v)
    return total / 2


@dataclass(frozen=True)
class LinkBudget:
    gamma: int
    mftp_s: Fraction
    min_clock_hz: Fraction
    spectral_efficiency: Fraction
    spectral_efficiency_fec: Fraction
    clock_hz: Fraction
    bit_rate_bps: Fraction


def link_budget(gamma: int, mftp_s, k: int, n: int, l: int, clock_hz) -> LinkBudget:
    """Flicker-free minimum clock and throughput of the shaped link.

    ``mftp_s`` and ``clock_hz`` are converted with ``Fraction(str(x))`` so
    decimal inputs such as ``0.005`` stay exact.
    """
    if min(gamma, k, n, l) <= 0:
        raise ValueError("link budget inputs must be positive")
    mftp = Fraction(str(mftp_s))
    clock = Fraction(str(clock_hz))
    if mftp <= 0 or clock <= 0:
        raise ValueError("link budget inputs must be positive")
    se = Fraction(k, n)
    return LinkBudget(
        gamma=gamma,
        mftp_s=mftp,
        min_clock_hz=gamma / mftp,
        spectral_efficiency=se,
        spectral_efficiency_fec=Fraction(k, l),
        clock_hz=clock,
        bit_rate_bps=clock * se,
    )

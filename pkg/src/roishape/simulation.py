"""End-to-end pipeline and Monte-Carlo sweeps.

Trials are grouped into fixed blocks of ``BLOCK`` consecutive trials. Block
``b`` of SNR point ``p`` draws everything (low-rate bits, messages, noise)
from ``SeedSequence([master_seed, p, b])``, so a sweep is bit-exact for any
worker count and a longer run extends a shorter one.
"""

from __future__ import annotations

import math
import os
import time
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from . import channel
from .analysis import detect_low_rate
from .polar import FrozenMode, PolarCodeSpec, construct, sc_decode, systematic_encode
from .shaping import FrameError, ShapingCodebook, build_codebook, fdc_decode, fdc_encode_batch

BLOCK = 1000
THREADS_ENV = "ROISHAPE_THREADS"


@dataclass(frozen=True)
class SystemConfig:
    n: int = 100
    upsilon0: float = 0.36
    l: int = 128
    design_snr_db: float = 0.0
    frozen_mode: str = "rla"
    decoder: str = "sd"
    f_function: str = "minsum"
    master_seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if self.l & (self.l - 1) or self.l < self.n:
            raise ValueError(f"l must be a power of 2 >= n, got l={self.l}, n={self.n}")
        if self.decoder not in ("sd", "hd"):
            raise ValueError(f"decoder must be 'sd' or 'hd', got {self.decoder!r}")
        if self.f_function not in ("minsum", "exact"):
            raise ValueError(f"f_function must be 'minsum' or 'exact', got {self.f_function!r}")
        FrozenMode(self.frozen_mode)

    @property
    def n_info(self) -> int:
        return self.n

    @property
    def codebook(self) -> ShapingCodebook:
        return _codebook(self.n, self.upsilon0)

    @property
    def code(self) -> PolarCodeSpec:
        return _code(self.l, self.n, self.design_snr_db, self.frozen_mode)

    @property
    def k(self) -> int:
        return self.codebook.k

    def ebn0_db(self, snr_db: float) -> float:
        return channel.ebn0_db(snr_db, self.k, self.l)


@lru_cache(maxsize=None)
def _codebook(n, upsilon0):
    return build_codebook(n, upsilon0)


@lru_cache(maxsize=None)
def _code(l, n_info, design_snr_db, mode):
    return construct(l, n_info, design_snr_db, mode)


def resolve_threads(threads: int | None) -> int:
    if threads is None:
        threads = int(os.environ.get(THREADS_ENV, "1"))
    return max(1, threads)


@dataclass(frozen=True)
class SweepRecord:
    snr_db: float
    ebn0_db: float
    frames: int
    bit_errors: int
    frame_errors: int
    low_rate_errors: int
    elapsed_s: float
    k: int
    decoded: bool = True
    low_rate_ties: int = 0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.k) if self.decoded else math.nan

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.decoded else math.nan

    @property
    def low_rate_ber(self) -> float:
        return self.low_rate_errors / self.frames


def _llr(config: SystemConfig, received, params):
    fn = channel.llr_soft if config.decoder == "sd" else channel.llr_hard
    return fn(received, params)


@dataclass
class BatchResult:
    v_hat: np.ndarray
    msg_hat: np.ndarray
    decoded: np.ndarray
    bit_errors: np.ndarray
    frame_errors: np.ndarray
    low_rate_ties: int


def _roundtrip(config: SystemConfig, v, msgs, params: channel.ChannelParams, noise, decode: bool = True):
    cb, spec = config.codebook, config.code
    x = systematic_encode(spec, fdc_encode_batch(cb, v, msgs))
    y = channel.modulate(x)
    if noise is not None:
        y = y + params.sigma * noise
    v_hat = detect_low_rate(y)
    ties = int(np.count_nonzero(2 * channel.hard_decision(y).sum(axis=1) == spec.l))
    count = len(msgs)
    msg_hat = np.zeros_like(msgs)
    ok = np.zeros(count, dtype=bool)
    bit_errors = np.zeros(count, dtype=np.int64)
    frame_errors = np.zeros(count, dtype=bool)
    if decode:
        _, data = sc_decode(spec, _llr(config, y, params), config.f_function)
        for i in range(count):
            try:
                v_dec, msg_hat[i] = fdc_decode(cb, data[i])
                ok[i] = True
            except FrameError:
                v_dec = None  # undecodable shaped word: message estimate stays all-zero
            bit_errors[i] = np.count_nonzero(msg_hat[i] != msgs[i])
            frame_errors[i] = bool(bit_errors[i]) or v_dec != v[i]
    return BatchResult(v_hat, msg_hat, ok, bit_errors, frame_errors, ties)


def pipeline_batch(config: SystemConfig, v, msgs, snr_db: float | None = None, rng=None) -> BatchResult:
    """Send a batch of frames through shaping, polar coding, the channel and back.

    ``v`` holds one low-rate bit per row of ``msgs`` (or a scalar).
    ``snr_db=None`` skips the noise.
    """
    msgs = np.atleast_2d(np.asarray(msgs, dtype=np.uint8))
    v = np.broadcast_to(np.asarray(v, dtype=np.uint8), (len(msgs),))
    if snr_db is None:
        return _roundtrip(config, v, msgs, channel.ChannelParams(math.inf), None)
    rng = rng if rng is not None else np.random.default_rng()
    noise = rng.standard_normal((len(msgs), config.l))
    return _roundtrip(config, v, msgs, channel.ChannelParams(snr_db), noise)


def pipeline_roundtrip(config: SystemConfig, v: int, msg, snr_db: float | None = None, rng=None):
    """One frame end to end.

    Returns ``(v_hat, msg_hat, frame_error)``; ``v_hat`` comes from the
    low-rate detector and ``msg_hat`` is None when the shaped word fails to
    decode.
    """
    r = pipeline_batch(config, v, msg, snr_db, rng)
    return int(r.v_hat[0]), (r.msg_hat[0] if r.decoded[0] else None), bool(r.frame_errors[0])


def block_rng(master_seed: int, point_index: int, block_index: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([master_seed, point_index, block_index]))


def _run_block(config: SystemConfig, snr_db: float, point_index: int, block_index: int, count: int, decode: bool):
    rng = block_rng(config.master_seed, point_index, block_index)
    v = rng.integers(0, 2, size=count, dtype=np.uint8)
    msgs = rng.integers(0, 2, size=(count, config.k), dtype=np.uint8)
    noise = rng.standard_normal((count, config.l))
    r = _roundtrip(config, v, msgs, channel.ChannelParams(snr_db), noise, decode)
    low_errors = int(np.count_nonzero(r.v_hat != v))
    return count, int(r.bit_errors.sum()), int(r.frame_errors.sum()), low_errors, r.low_rate_ties


def run_point(config: SystemConfig, snr_db: float, frames: int, point_index: int = 0, decode: bool = True) -> SweepRecord:
    if frames <= 0:
        raise ValueError(f"frames per point must be positive, got {frames}")
    t0 = time.perf_counter()
    counts = [min(BLOCK, frames - s) for s in range(0, frames, BLOCK)]
    jobs = [(config, snr_db, point_index, b, c, decode) for b, c in enumerate(counts)]
    threads = resolve_threads(config.threads)
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_block, *zip(*jobs)))
    else:
        results = [_run_block(*j) for j in jobs]
    total = np.sum(results, axis=0)
    return SweepRecord(
        snr_db=snr_db,
        ebn0_db=config.ebn0_db(snr_db),
        frames=int(total[0]),
        bit_errors=int(total[1]),
        frame_errors=int(total[2]),
        low_rate_errors=int(total[3]),
        low_rate_ties=int(total[4]),
        elapsed_s=time.perf_counter() - t0,
        k=config.k,
        decoded=decode,
    )


def fer_sweep(config: SystemConfig, snr_list, frames: int) -> list[SweepRecord]:
    """High-rate BER/FER (and low-rate BER from the same transmissions) per SNR."""
    return [run_point(config, float(s), frames, i) for i, s in enumerate(snr_list)]


def low_rate_ber_sweep(config: SystemConfig, snr_list, frames: int, seed: int | None = None,
                       target_ber: float | None = None) -> list[SweepRecord]:
    """Uncoded low-rate BER per SNR; the polar decoder is not run."""
    if target_ber is not None and frames < 10 / target_ber:
        warnings.warn(f"{frames} frames per point is too few to resolve BER {target_ber:g}")
    if seed is not None:
        config = replace(config, master_seed=seed)
    return [run_point(config, float(s), frames, i, decode=False) for i, s in enumerate(snr_list)]


def snr_at_fer(records: list[SweepRecord], target: float) -> float:
    """SNR where FER crosses ``target``, interpolating ``log10(FER)`` linearly.

    Returns NaN when the sweep does not bracket the target.
    """
    pts = [(r.snr_db, r.fer) for r in sorted(records, key=lambda r: r.snr_db)]
    for (s0, f0), (s1, f1) in zip(pts, pts[1:]):
        if f0 >= target >= f1 and f1 > 0:
            if f0 == f1:
                return s0
            t = (math.log10(f0) - math.log10(target)) / (math.log10(f0) - math.log10(f1))
            return s0 + t * (s1 - s0)
    return math.nan

"""Antipodal OOK abstraction over a real AWGN channel.

Bit 1 (LED on) maps to +1 and bit 0 to -1. SNR is Es/N0 in dB with unit
symbol energy, so the per-sample noise variance is ``1 / (2 Es/N0)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr

P_FLOOR = 1e-12
# keeps LLRs finite in the noiseless limit (snr_db = inf)
SIGMA2_FLOOR = 1e-12


@dataclass(frozen=True)
class ChannelParams:
    snr_db: float

    @property
    def sigma2(self) -> float:
        return max(1.0 / (2.0 * 10 ** (self.snr_db / 10)), SIGMA2_FLOOR)

    @property
    def sigma(self) -> float:
        return math.sqrt(self.sigma2)

    @property
    def crossover(self) -> float:
        """Hard-decision flip probability ``Q(1/sigma)``, clamped to ``[1e-12, 0.5]``."""
        return min(max(q_function(1.0 / self.sigma), P_FLOOR), 0.5)


def q_function(x):
    """Gaussian tail probability ``P(N(0,1) > x)``."""
    return ndtr(-np.asarray(x, dtype=float)) if np.ndim(x) else float(ndtr(-x))


def ebn0_db(esn0_db: float, k: int, l: int) -> float:
    """Eb/N0 for ``k`` information bits carried by ``l`` channel symbols."""
    return esn0_db - 10 * math.log10(k / l)


def modulate(bits: np.ndarray) -> np.ndarray:
    return 2.0 * np.asarray(bits, dtype=float) - 1.0


def add_awgn(signal: np.ndarray, params: ChannelParams, rng: np.random.Generator) -> np.ndarray:
    signal = np.asarray(signal, dtype=float)
    return signal + params.sigma * rng.standard_normal(signal.shape)


def hard_decision(received: np.ndarray) -> np.ndarray:
    return (np.asarray(received) > 0).astype(np.uint8)


def llr_soft(received: np.ndarray, params: ChannelParams) -> np.ndarray:
    return -2.0 * np.asarray(received, dtype=float) / params.sigma2


def llr_hard(received: np.ndarray, params: ChannelParams) -> np.ndarray:
    """Fixed-magnitude LLRs ``+-log((1-p)/p)`` from hard decisions."""
    p = params.crossover
    mag = math.log((1 - p) / p)
    return np.where(hard_decision(received) == 1, -mag, mag)

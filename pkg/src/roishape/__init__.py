"""Probabilistic shaping for optical region-of-interest signaling.

A flexible distribution controller maps uniform message bits to words whose
ones-ratio sits in one of two dimming ranges chosen by a low-rate bit; a
systematic polar code with run-length-aware frozen values protects them
without a run-length-limited line code.
"""

from .analysis import detect_low_rate, link_budget, max_run_length, omega_histogram
from .channel import ChannelParams, add_awgn, llr_hard, llr_soft, modulate
from .combinatorics import (
    DomainError,
    binomial,
    fdc_codebook_size,
    rate_loss_dc,
    rate_loss_fdc,
    rate_loss_table,
    weight_class_ratio,
)
from .polar import (
    FrozenMode,
    PolarCodeSpec,
    bhattacharyya_construct,
    construct,
    nonsystematic_encode,
    polar_transform,
    sc_decode,
    select_and_freeze,
    systematic_encode,
)
from .shaping import (
    InvalidWeight,
    ShapingCodebook,
    UnusedCodeword,
    build_codebook,
    dc_decode,
    dc_encode,
    fdc_decode,
    fdc_encode,
    rank_constant_weight,
    unrank_constant_weight,
)
from .simulation import SystemConfig, fer_sweep, low_rate_ber_sweep, pipeline_roundtrip

__version__ = "0.1.0"

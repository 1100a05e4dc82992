"""
Error rates of the two streams
==============================

The high-rate stream is polar decoded from soft or hard channel outputs.
The low-rate stream (the dimming flag) is read from the received ones count
without decoding and is checked against a semi-analytic prediction.
"""

from dataclasses import replace

from roishape.analysis import low_rate_ber_oracle, omega_histogram
from roishape.channel import ChannelParams
from roishape.simulation import SystemConfig, fer_sweep, low_rate_ber_sweep

config = SystemConfig(master_seed=11)
frames = 5_000

for decoder, snrs in (("sd", (3.0, 4.0, 5.0)), ("hd", (5.0, 6.0, 7.0))):
    for r in fer_sweep(replace(config, decoder=decoder), snrs, frames):
        print(f"{decoder} Es/N0={r.snr_db:4.1f} dB  Eb/N0={r.ebn0_db:5.2f} dB  BER={r.ber:.2e}  FER={r.fer:.2e}")

hist = [omega_histogram(config.codebook, config.code, "systematic", v, 50_000, seed=12) for v in (0, 1)]
for r in low_rate_ber_sweep(config, (-10.0, -6.0, -2.0), frames):
    ref = low_rate_ber_oracle(*hist, ChannelParams(r.snr_db).crossover)
    print(f"low-rate Es/N0={r.snr_db:5.1f} dB  simulated={r.low_rate_ber:.3e}  predicted={ref:.3e}")

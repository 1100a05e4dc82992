"""
Shaping a message into a dimmed word
====================================

Messages are ranked into constant-weight classes; the dimming flag v
flips the whole word so the same codebook serves dark and bright targets.
"""

import numpy as np

from roishape.shaping import bits_to_str, build_codebook, fdc_decode, fdc_encode

cb = build_codebook(16, 0.3)
print(f"n={cb.n}, weights 1..{cb.w_max}, k={cb.k} message bits")

rng = np.random.default_rng(1)
msg = rng.integers(0, 2, cb.k, dtype=np.uint8)
for v in (0, 1):
    word = fdc_encode(cb, v, msg)
    v_back, msg_back = fdc_decode(cb, word)
    print(f"v={v}: {bits_to_str(word)}  ones={int(word.sum()):>2}  recovered={np.array_equal(msg_back, msg) and v_back == v}")

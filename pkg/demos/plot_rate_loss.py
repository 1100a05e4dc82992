"""
Rate loss of dimming by weight ranges
=====================================

Fixing the Hamming weight of every shaped word (DC) wastes more of the
message space than allowing every weight up to a ceiling (FDC).
"""

from roishape.combinatorics import rate_loss_dc, rate_loss_fdc, rate_loss_table

# The default link shapes 100-bit words with at most 36 ones.
fdc = rate_loss_fdc(100, 0.36)
dc = rate_loss_dc(100, 36)
print(f"FDC carries k={fdc.k} bits (loss {fdc.delta}), DC carries k={dc.k} bits (loss {dc.delta})")

# Sweep the dimming target for a few word lengths.
for row in rate_loss_table((20, 100, 500), (0.05, 0.1, 0.2, 0.3, 0.4, 0.5)):
    print(f"n={row.n:<4} phi={row.phi:.2f}  dc={row.delta_dc:.4f}  fdc={row.delta_fdc:.4f}")

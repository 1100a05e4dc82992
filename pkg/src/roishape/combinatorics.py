"""Exact binomial arithmetic and rate-loss formulas for shaping codebooks.

Everything here works on Python integers, so codebook sizes are exact for
any supported length. ``floor(log2(x))`` is always taken as
``x.bit_length() - 1``.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

MAX_N = 512


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


@dataclass(frozen=True)
class RateLossReport:
    n: int
    k: int

    @property
    def delta(self) -> Fraction:
        """Rate loss ``1 - k/n`` as an exact fraction."""
        return 1 - Fraction(self.k, self.n)


def _check_n(n: int) -> None:
    if not 0 <= n <= MAX_N:
        raise DomainError(f"n must lie in [0, {MAX_N}], got {n}")


def floor_log2(x: int) -> int:
    if x < 1:
        raise DomainError(f"floor_log2 needs x >= 1, got {x}")
    return x.bit_length() - 1


@lru_cache(maxsize=None)
def pascal_row(n: int) -> tuple[int, ...]:
    """Row ``n`` of Pascal's triangle, ``(C(n,0), ..., C(n,n))``."""
    _check_n(n)
    return tuple(math.comb(n, m) for m in range(n + 1))


def binomial(n: int, m: int) -> int:
    _check_n(n)
    if not 0 <= m <= n:
        raise DomainError(f"need 0 <= m <= n, got n={n}, m={m}")
    return pascal_row(n)[m]


def weight_class_ratio(n: int, m: int) -> Fraction:
    """Growth factor ``C(n,m) / C(n,m-1) = (n-m+1)/m`` for ``1 <= m < n/2``."""
    _check_n(n)
    if not (1 <= m and 2 * m < n):
        raise DomainError(f"need 1 <= m < n/2, got n={n}, m={m}")
    return Fraction(n - m + 1, m)


def fdc_codebook_size(n: int, w_lo: int, w_hi: int) -> int:
    """Number of ``n``-bit words whose weight lies in ``[w_lo, w_hi]``."""
    _check_n(n)
    if not 1 <= w_lo <= w_hi <= n - 1:
        raise DomainError(f"need 1 <= w_lo <= w_hi <= n-1, got n={n}, [{w_lo}, {w_hi}]")
    return sum(pascal_row(n)[w_lo:w_hi + 1])


def rate_loss_dc(n: int, m: int) -> RateLossReport:
    """Rate loss of the fixed-weight distribution controller."""
    _check_n(n)
    if not 1 <= m <= n - 1:
        raise DomainError(f"need 1 <= m <= n-1, got n={n}, m={m}")
    return RateLossReport(n, floor_log2(binomial(n, m)))


def scaled_weight(fraction: float, n: int, rounding: str = "floor") -> int:
    """``fraction * n`` rounded to an integer weight.

    The product is rounded to 9 decimals first so that e.g. ``0.64 * 100``
    does not ceil to 65.
    """
    x = round(fraction * n, 9)
    return math.floor(x) if rounding == "floor" else math.ceil(x)


def rate_loss_fdc(n: int, upsilon0: float) -> RateLossReport:
    """Rate loss of the flexible controller over the logic-0 range ``(0, upsilon0]``."""
    if not 0 < upsilon0 <= 0.5:
        raise DomainError(f"upsilon0 must lie in (0, 0.5], got {upsilon0}")
    w = scaled_weight(upsilon0, n)
    if w < 1:
        raise DomainError(f"weight range empty for n={n}, upsilon0={upsilon0}")
    return RateLossReport(n, floor_log2(fdc_codebook_size(n, 1, w)))


def rate_loss_fdc_upper(n: int, upsilon1: float) -> RateLossReport:
    """Rate loss over the logic-1 range ``[upsilon1, 1)``, summed directly."""
    if not 0.5 <= upsilon1 < 1:
        raise DomainError(f"upsilon1 must lie in [0.5, 1), got {upsilon1}")
    w = scaled_weight(upsilon1, n, "ceil")
    if w > n - 1:
        raise DomainError(f"weight range empty for n={n}, upsilon1={upsilon1}")
    return RateLossReport(n, floor_log2(fdc_codebook_size(n, w, n - 1)))


@dataclass(frozen=True)
class RateLossRow:
    n: int
    phi: float
    delta_dc: float
    delta_fdc: float


def rate_loss_table(n_list: Iterable[int], phi_grid: Sequence[float]) -> list[RateLossRow]:
    """DC and FDC rate loss for every ``(n, phi)`` pair.

    The FDC column uses the range ``(0, phi]`` for ``phi <= 0.5`` and
    ``[phi, 1)`` above. Points where a range is empty are reported as NaN.
    """
    rows = []
    for n in n_list:
        _check_n(n)
        for phi in phi_grid:
            if not 0 < phi < 1:
                raise DomainError(f"phi must lie in (0, 1), got {phi}")
            m = scaled_weight(phi, n)
            dc = float(rate_loss_dc(n, m).delta) if 1 <= m <= n - 1 else math.nan
            try:
                if phi <= 0.5:
                    fdc = float(rate_loss_fdc(n, phi).delta)
                else:
                    fdc = float(rate_loss_fdc_upper(n, phi).delta)
            except DomainError:
                fdc = math.nan
            rows.append(RateLossRow(n, phi, dc, fdc))
    return rows


def rate_loss_csv(rows: Iterable[RateLossRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["n", "phi", "delta_dc", "delta_fdc"])
    for r in rows:
        w.writerow([r.n, f"{r.phi:.4f}", _fmt(r.delta_dc), _fmt(r.delta_fdc)])
    return buf.getvalue()


def _fmt(x: float) -> str:
    return "nan" if math.isnan(x) else f"{x:.6g}"

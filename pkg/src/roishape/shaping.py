"""Flexible distribution controller (FDC) and fixed-weight DC.

Messages map to shaped codewords through the combinatorial number system:
within a weight class words are ranked in ascending lexicographic order
(leftmost bit most significant), and weight classes are stacked from
weight 1 upwards. The logic-1 range is the bitwise complement of the
logic-0 range.

Bit frames are 1-D ``uint8`` numpy arrays; batches are 2-D with one frame
per row.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

import numpy as np

from .combinatorics import (
    DomainError,
    binomial,
    floor_log2,
    pascal_row,
    scaled_weight,
)


class FrameError(ValueError):
    """A received shaped word that does not decode to any message."""


class InvalidWeight(FrameError):
    pass


class UnusedCodeword(FrameError):
    pass


# --- bit frame helpers ------------------------------------------------------

def bits_from_str(s: str) -> np.ndarray:
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a binary string: {s!r}")
    return np.frombuffer(s.encode("ascii"), dtype=np.uint8) - ord("0")


def bits_to_str(bits) -> str:
    return "".join("1" if b else "0" for b in np.asarray(bits).ravel())


def bits_to_int(bits) -> int:
    """Integer value of a bit frame, leftmost bit most significant."""
    return int(bits_to_str(bits), 2) if len(bits) else 0


def int_to_bits(value: int, length: int) -> np.ndarray:
    if value < 0 or value >> length:
        raise DomainError(f"{value} does not fit in {length} bits")
    if length == 0:
        return np.zeros(0, dtype=np.uint8)
    return bits_from_str(format(value, f"0{length}b"))


def weight(bits) -> int:
    return int(np.count_nonzero(bits))


# --- constant-weight enumeration -------------------------------------------

def _comb(r: int, m: int) -> int:
    return pascal_row(r)[m] if m <= r else 0


def unrank_constant_weight(n: int, m: int, index: int) -> np.ndarray:
    """The ``index``-th ``n``-bit word of weight ``m`` in lexicographic order."""
    total = binomial(n, m)
    if not 0 <= index < total:
        raise DomainError(f"index {index} outside [0, {total}) for n={n}, m={m}")
    out = np.zeros(n, dtype=np.uint8)
    ones = m
    for pos in range(n):
        if ones == 0:
            break
        # words with a 0 here: place all remaining ones in the n-pos-1 tail
        zeros_first = _comb(n - pos - 1, ones)
        if index >= zeros_first:
            out[pos] = 1
            index -= zeros_first
            ones -= 1
    return out


def rank_constant_weight(word, m: int) -> int:
    word = np.asarray(word)
    n = len(word)
    if weight(word) != m:
        raise DomainError(f"word has weight {weight(word)}, expected {m}")
    rank = 0
    ones = m
    for pos in np.flatnonzero(word):
        rank += _comb(n - pos - 1, ones)
        ones -= 1
    return rank


# --- codebooks --------------------------------------------------------------

@dataclass(frozen=True)
class ShapingCodebook:
    """Sizes of the logic-0 codebook: all ``n``-bit words of weight ``1..w_max``.

    ``cumulative[m-1]`` holds ``S_m``, the number of words with weight at
    most ``m`` (weight 0 excluded).
    """

    n: int
    w_max: int
    k: int
    Z: int
    cumulative: tuple[int, ...]

    @property
    def upsilon0(self) -> float:
        return self.w_max / self.n

    @property
    def upsilon1(self) -> float:
        return 1 - self.w_max / self.n


def build_codebook(n: int, upsilon0: float) -> ShapingCodebook:
    w_max = scaled_weight(upsilon0, n)
    if not (1 <= w_max and 2 * w_max < n):
        raise DomainError(f"need 1 <= floor(upsilon0*n) < n/2, got {w_max} for n={n}")
    row = pascal_row(n)
    cumulative = []
    s = 0
    for m in range(1, w_max + 1):
        s += row[m]
        cumulative.append(s)
    Z = cumulative[-1]
    return ShapingCodebook(n=n, w_max=w_max, k=floor_log2(Z), Z=Z, cumulative=tuple(cumulative))


def _encode_index(cb: ShapingCodebook, index: int) -> np.ndarray:
    m = bisect.bisect_right(cb.cumulative, index) + 1
    below = cb.cumulative[m - 2] if m > 1 else 0
    return unrank_constant_weight(cb.n, m, index - below)


def fdc_encode(cb: ShapingCodebook, v: int, msg) -> np.ndarray:
    """Shape a ``k``-bit message into an ``n``-bit word in the range selected by ``v``."""
    if v not in (0, 1):
        raise DomainError(f"low-rate bit must be 0 or 1, got {v}")
    if len(msg) != cb.k:
        raise DomainError(f"message length {len(msg)} != k={cb.k}")
    u = _encode_index(cb, bits_to_int(msg))
    return u ^ 1 if v else u


def fdc_decode(cb: ShapingCodebook, word) -> tuple[int, np.ndarray]:
    """Recover ``(v, message)`` from a shaped word.

    Raises
    ------
    InvalidWeight
        The weight lies in neither range.
    UnusedCodeword
        The word is a valid range member but indexes past ``2**k``.
    """
    word = np.asarray(word, dtype=np.uint8)
    if len(word) != cb.n:
        raise DomainError(f"word length {len(word)} != n={cb.n}")
    w = weight(word)
    v = 0
    if 2 * w > cb.n:
        v, word, w = 1, word ^ 1, cb.n - w
    if not 1 <= w <= cb.w_max:
        raise InvalidWeight(f"weight {w if v == 0 else cb.n - w} is outside both ranges")
    index = (cb.cumulative[w - 2] if w > 1 else 0) + rank_constant_weight(word, w)
    if index >> cb.k:
        raise UnusedCodeword(f"codeword index {index} >= 2**{cb.k}")
    return v, int_to_bits(index, cb.k)


def fdc_encode_batch(cb: ShapingCodebook, v, msgs: np.ndarray) -> np.ndarray:
    """Row-wise :func:`fdc_encode`; ``v`` is a scalar or one bit per row."""
    msgs = np.asarray(msgs, dtype=np.uint8)
    v = np.broadcast_to(np.asarray(v, dtype=np.uint8), (len(msgs),))
    out = np.empty((len(msgs), cb.n), dtype=np.uint8)
    for i, row in enumerate(msgs):
        out[i] = _encode_index(cb, bits_to_int(row))
    return out ^ v[:, None]


# --- fixed-weight DC (baseline) ---------------------------------------------

def dc_message_length(n: int, m: int) -> int:
    return floor_log2(binomial(n, m))


def dc_encode(n: int, m: int, msg) -> np.ndarray:
    k = dc_message_length(n, m)
    if len(msg) != k:
        raise DomainError(f"message length {len(msg)} != k={k}")
    return unrank_constant_weight(n, m, bits_to_int(msg))


def dc_decode(n: int, m: int, word) -> np.ndarray:
    word = np.asarray(word, dtype=np.uint8)
    if len(word) != n:
        raise DomainError(f"word length {len(word)} != n={n}")
    if weight(word) != m:
        raise InvalidWeight(f"weight {weight(word)} != {m}")
    k = dc_message_length(n, m)
    index = rank_constant_weight(word, m)
    if index >> k:
        raise UnusedCodeword(f"codeword index {index} >= 2**{k}")
    return int_to_bits(index, k)

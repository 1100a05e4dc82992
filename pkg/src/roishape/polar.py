"""Polar code construction, encoding and successive-cancellation decoding.

Conventions: natural index order (no bit reversal), kernel
``[[1, 0], [1, 1]]`` and row-vector encoding ``x = u G``. LLRs are
positive when bit 0 is more likely.

Encoders and the decoder accept a single frame (1-D) or a batch (2-D,
one frame per row).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np


class FrozenMode(str, Enum):
    ALL_ZERO = "all_zero"
    RLA = "rla"


class ConstructionError(RuntimeError):
    pass


def _check_length(l: int, lo: int = 2, hi: int = 4096) -> None:
    if not (lo <= l <= hi) or l & (l - 1):
        raise ValueError(f"code length must be a power of 2 in [{lo}, {hi}], got {l}")


def bhattacharyya_construct(l: int, design_snr_db: float = 0.0, z0: float | None = None) -> np.ndarray:
    """Bhattacharyya bound of every bit channel.

    Each stage replaces ``z`` by the pair ``(2z - z**2, z**2)``, the worse
    child at the lower index. ``z0`` defaults to ``exp(-Es/N0)`` at the
    design SNR.
    """
    _check_length(l)
    if z0 is None:
        z0 = float(np.exp(-(10 ** (design_snr_db / 10))))
    z = np.array([z0])
    while len(z) < l:
        z = np.stack([2 * z - z * z, z * z], axis=1).ravel()
    return z


@dataclass(frozen=True, eq=False)
class PolarCodeSpec:
    l: int
    n_info: int
    info_set: np.ndarray
    frozen_set: np.ndarray
    frozen_values: np.ndarray
    metrics: np.ndarray
    design_snr_db: float = 0.0
    frozen_mode: FrozenMode = FrozenMode.RLA
    frozen_word: np.ndarray = field(init=False, repr=False, compare=False)
    frozen_mask: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        mask = np.zeros(self.l, dtype=bool)
        mask[self.frozen_set] = True
        if mask[self.info_set].any() or mask.sum() + len(self.info_set) != self.l:
            raise ValueError("info set and frozen set must partition range(l)")
        u0 = np.zeros(self.l, dtype=np.uint8)
        u0[self.frozen_set] = self.frozen_values
        object.__setattr__(self, "frozen_word", u0)
        object.__setattr__(self, "frozen_mask", mask)

    @property
    def rate(self) -> float:
        return self.n_info / self.l

    def __eq__(self, other):
        if not isinstance(other, PolarCodeSpec):
            return NotImplemented
        return (
            self.l == other.l
            and self.n_info == other.n_info
            and self.frozen_mode == other.frozen_mode
            and self.design_snr_db == other.design_snr_db
            and np.array_equal(self.info_set, other.info_set)
            and np.array_equal(self.frozen_values, other.frozen_values)
            and np.array_equal(self.metrics, other.metrics)
        )


def rla_frozen_values(count: int) -> np.ndarray:
    """Alternating ``1, 0, 1, 0, ...`` for the frozen indices in ascending order."""
    return (np.arange(count) % 2 == 0).astype(np.uint8)


def select_and_freeze(
    z: np.ndarray,
    n_info: int,
    mode: FrozenMode | str = FrozenMode.RLA,
    design_snr_db: float = 0.0,
) -> PolarCodeSpec:
    """Pick the ``n_info`` smallest metrics as information bits and set frozen values.

    Ties go to the lower index. In RLA mode the frozen bits, walked in
    ascending index order, get ``1, 0, 1, 0, ...``.
    """
    z = np.asarray(z, dtype=float)
    l = len(z)
    if not 0 < n_info < l:
        raise ValueError(f"need 0 < n_info < l, got n_info={n_info}, l={l}")
    mode = FrozenMode(mode)
    order = np.lexsort((np.arange(l), z))  # by metric, then index
    info = np.sort(order[:n_info])
    frozen = np.sort(order[n_info:])
    if mode is FrozenMode.RLA:
        values = rla_frozen_values(len(frozen))
    else:
        values = np.zeros(len(frozen), dtype=np.uint8)
    return PolarCodeSpec(
        l=l,
        n_info=n_info,
        info_set=info,
        frozen_set=frozen,
        frozen_values=values,
        metrics=z,
        design_snr_db=design_snr_db,
        frozen_mode=mode,
    )


def construct(l: int, n_info: int, design_snr_db: float = 0.0, mode: FrozenMode | str = FrozenMode.RLA) -> PolarCodeSpec:
    return select_and_freeze(bhattacharyya_construct(l, design_snr_db), n_info, mode, design_snr_db)


def polar_transform(word: np.ndarray) -> np.ndarray:
    """Apply ``G = [[1,0],[1,1]]^{(x) log2 l}`` over GF(2). The map is an involution."""
    x = np.array(word, dtype=np.uint8, copy=True)
    single = x.ndim == 1
    x = np.atleast_2d(x)
    b, l = x.shape
    _check_length(l, lo=1, hi=1 << 20)
    h = 1
    while h < l:
        v = x.reshape(b, l // (2 * h), 2, h)
        v[:, :, 0, :] ^= v[:, :, 1, :]
        h *= 2
    return x[0] if single else x


def nonsystematic_encode(spec: PolarCodeSpec, data: np.ndarray) -> np.ndarray:
    data = np.asarray(data, dtype=np.uint8)
    if data.shape[-1] != spec.n_info:
        raise ValueError(f"data length {data.shape[-1]} != n_info={spec.n_info}")
    u = np.broadcast_to(spec.frozen_word, data.shape[:-1] + (spec.l,)).copy()
    u[..., spec.info_set] = data
    return polar_transform(u)


def systematic_encode(spec: PolarCodeSpec, data: np.ndarray) -> np.ndarray:
    """Codeword carrying ``data`` verbatim on the information set.

    The frozen values enter as a coset shift ``c0 = transform(frozen word)``;
    the remaining zero-frozen problem is solved by transforming twice with
    the frozen positions cleared in between.
    """
    data = np.asarray(data, dtype=np.uint8)
    if data.shape[-1] != spec.n_info:
        raise ValueError(f"data length {data.shape[-1]} != n_info={spec.n_info}")
    c0 = polar_transform(spec.frozen_word)
    y = np.zeros(data.shape[:-1] + (spec.l,), dtype=np.uint8)
    y[..., spec.info_set] = data ^ c0[spec.info_set]
    u1 = polar_transform(y)
    u1[..., spec.frozen_mask] = 0
    x = polar_transform(u1) ^ c0
    if not np.array_equal(x[..., spec.info_set], data):
        raise ConstructionError("systematic encoding failed; information set is not domination contiguous")
    return x


def systematic_extract(spec: PolarCodeSpec, codeword: np.ndarray) -> np.ndarray:
    return np.asarray(codeword)[..., spec.info_set]


# --- successive cancellation -----------------------------------------------

def f_minsum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.sign(a) * np.sign(b) * np.minimum(np.abs(a), np.abs(b))


def f_exact(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    t = np.tanh(np.clip(a, -40, 40) / 2) * np.tanh(np.clip(b, -40, 40) / 2)
    return 2 * np.arctanh(np.clip(t, -1 + 1e-15, 1 - 1e-15))


def g_update(a: np.ndarray, b: np.ndarray, u: np.ndarray) -> np.ndarray:
    return b + (1 - 2 * u.astype(a.dtype)) * a


def _sc(llr, lo, frozen_mask, frozen_word, u_hat, f):
    """Decode the subtree covering input indices ``[lo, lo+N)``; return its partial sums."""
    n = llr.shape[1]
    if n == 1:
        i = lo
        if frozen_mask[i]:
            bit = np.full((llr.shape[0], 1), frozen_word[i], dtype=np.uint8)
        else:
            bit = (llr < 0).astype(np.uint8)
        u_hat[:, i] = bit[:, 0]
        return bit
    h = n // 2
    a, b = llr[:, :h], llr[:, h:]
    if frozen_mask[lo:lo + h].all():
        # all-frozen left subtree: partial sums are known
        beta_l = np.broadcast_to(polar_transform(frozen_word[lo:lo + h]), (llr.shape[0], h))
        u_hat[:, lo:lo + h] = frozen_word[lo:lo + h]
    else:
        beta_l = _sc(f(a, b), lo, frozen_mask, frozen_word, u_hat, f)
    beta_r = _sc(g_update(a, b, beta_l), lo + h, frozen_mask, frozen_word, u_hat, f)
    return np.concatenate([beta_l ^ beta_r, beta_r], axis=1)


def sc_decode(spec: PolarCodeSpec, llr: np.ndarray, f_function: str = "minsum"):
    """Successive-cancellation decoding.

    Parameters
    ----------
    spec : PolarCodeSpec
    llr : ndarray
        Channel LLRs, shape ``(l,)`` or ``(batch, l)``.
    f_function : {"minsum", "exact"}
        Check-node rule.

    Returns
    -------
    codeword : ndarray of uint8
        Re-encoded estimate ``transform(u_hat)``.
    data : ndarray of uint8
        ``codeword`` restricted to the information set.
    """
    f = {"minsum": f_minsum, "exact": f_exact}[f_function]
    llr = np.asarray(llr, dtype=float)
    single = llr.ndim == 1
    llr = np.atleast_2d(llr)
    if llr.shape[1] != spec.l:
        raise ValueError(f"LLR length {llr.shape[1]} != l={spec.l}")
    u_hat = np.zeros(llr.shape, dtype=np.uint8)
    codeword = _sc(llr, 0, spec.frozen_mask, spec.frozen_word, u_hat, f)
    codeword = np.ascontiguousarray(codeword, dtype=np.uint8)
    data = codeword[:, spec.info_set]
    if single:
        return codeword[0], data[0]
    return codeword, data

import itertools

import numpy as np
import pytest

from roishape.polar import (
    ConstructionError,
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

from oracles import bec_sc_erasure, polar_matrix, sc_by_marginalization


def l2_spec(frozen=1):
    return PolarCodeSpec(
        l=2, n_info=1, info_set=np.array([1]), frozen_set=np.array([0]),
        frozen_values=np.array([frozen], dtype=np.uint8), metrics=np.array([0.75, 0.25]),
    )


@pytest.fixture(scope="module")
def code128():
    return construct(128, 100, 0.0, "rla")


def test_bhattacharyya_examples():
    np.testing.assert_allclose(bhattacharyya_construct(2, z0=0.5), [0.75, 0.25])
    np.testing.assert_allclose(bhattacharyya_construct(4, z0=0.5), [0.9375, 0.5625, 0.4375, 0.0625])
    z = bhattacharyya_construct(128, 0.0)
    assert z[0] == pytest.approx(1 - (1 - np.exp(-1)) ** 128)
    assert ((z >= 0) & (z <= 1)).all()
    with pytest.raises(ValueError):
        bhattacharyya_construct(96, 0.0)


def test_bhattacharyya_sum_identity():
    z = bhattacharyya_construct(64, z0=0.3)
    parent = bhattacharyya_construct(32, z0=0.3)
    np.testing.assert_allclose(z[0::2] + z[1::2], 2 * parent)


@pytest.mark.parametrize("l", [2, 4, 8])
def test_bhattacharyya_is_exact_sc_erasure_on_bec(l):
    # on the erasure channel the bound is the exact SC erasure probability
    np.testing.assert_allclose(bhattacharyya_construct(l, z0=0.4), bec_sc_erasure(l, 0.4), atol=1e-12)


def test_select_and_freeze_example():
    z = bhattacharyya_construct(4, z0=0.5)
    spec = select_and_freeze(z, 2, "rla")
    assert spec.info_set.tolist() == [2, 3]
    assert spec.frozen_set.tolist() == [0, 1]
    assert spec.frozen_values.tolist() == [1, 0]
    assert select_and_freeze(z, 2, "all_zero").frozen_values.tolist() == [0, 0]


def test_select_and_freeze_ties_go_to_lower_index():
    spec = select_and_freeze(np.array([0.5, 0.2, 0.5, 0.5]), 2)
    assert spec.info_set.tolist() == [0, 1]


def test_code128_structure(code128):
    spec = code128
    assert len(spec.info_set) + len(spec.frozen_set) == 128
    assert set(spec.info_set.tolist()).isdisjoint(spec.frozen_set.tolist())
    assert spec.metrics[spec.info_set].max() <= spec.metrics[spec.frozen_set].min()
    assert spec.frozen_values.tolist() == [1, 0] * 14
    assert construct(128, 100, 0.0, FrozenMode.ALL_ZERO).frozen_values.sum() == 0


def test_polar_transform_examples():
    assert polar_transform(np.zeros(8, np.uint8)).sum() == 0
    assert polar_transform(np.array([1, 0])).tolist() == [1, 0]
    assert polar_transform(np.array([0, 1])).tolist() == [1, 1]


def test_polar_transform_matches_kronecker_and_is_involution():
    g = polar_matrix(8)
    words = np.array(list(itertools.product((0, 1), repeat=8)), dtype=np.uint8)
    x = polar_transform(words)
    np.testing.assert_array_equal(x, words @ g % 2)
    np.testing.assert_array_equal(polar_transform(x), words)
    rng = np.random.default_rng(0)
    w = rng.integers(0, 2, (1000, 128), dtype=np.uint8)
    np.testing.assert_array_equal(polar_transform(polar_transform(w)), w)


def test_nonsystematic_examples():
    spec = l2_spec()
    assert nonsystematic_encode(spec, np.array([0])).tolist() == [1, 0]
    assert nonsystematic_encode(spec, np.array([1])).tolist() == [0, 1]
    zero = construct(128, 100, 0.0, "all_zero")
    assert nonsystematic_encode(zero, np.zeros(100, np.uint8)).sum() == 0


def test_systematic_examples():
    spec = l2_spec()
    assert systematic_encode(spec, np.array([0])).tolist() == [1, 0]
    assert systematic_encode(spec, np.array([1])).tolist() == [0, 1]


@pytest.mark.parametrize("mode", ["rla", "all_zero"])
def test_systematic_exhaustive_l8(mode):
    spec = construct(8, 4, 0.0, mode)
    data = np.array(list(itertools.product((0, 1), repeat=4)), dtype=np.uint8)
    x = systematic_encode(spec, data)
    np.testing.assert_array_equal(x[:, spec.info_set], data)
    u = polar_transform(x)
    assert (u[:, spec.frozen_set] == spec.frozen_values).all()


@pytest.mark.parametrize("mode", ["rla", "all_zero"])
def test_systematic_random_128(code128, mode):
    spec = code128 if mode == "rla" else construct(128, 100, 0.0, mode)
    rng = np.random.default_rng(1)
    d = rng.integers(0, 2, (10_000, 100), dtype=np.uint8)
    x = systematic_encode(spec, d)
    np.testing.assert_array_equal(x[:, spec.info_set], d)
    assert (polar_transform(x)[:, spec.frozen_set] == spec.frozen_values).all()


def test_systematic_affine_linearity(code128):
    rng = np.random.default_rng(2)
    d1, d2 = rng.integers(0, 2, (2, 500, 100), dtype=np.uint8)
    enc = lambda d: systematic_encode(code128, d)
    zero = enc(np.zeros((1, 100), np.uint8))
    np.testing.assert_array_equal(enc(d1) ^ enc(d2) ^ zero, enc(d1 ^ d2))


def test_systematic_rejects_bad_info_set():
    # {0, 1, 3} is not domination contiguous: index 2 lies between 0 and 3
    spec = PolarCodeSpec(l=4, n_info=3, info_set=np.array([0, 1, 3]), frozen_set=np.array([2]),
                         frozen_values=np.zeros(1, np.uint8), metrics=np.zeros(4))
    data = np.array(list(itertools.product((0, 1), repeat=3)), dtype=np.uint8)
    with pytest.raises(ConstructionError):
        systematic_encode(spec, data)


def test_spec_partition_enforced():
    with pytest.raises(ValueError):
        PolarCodeSpec(l=4, n_info=2, info_set=np.array([0, 1]), frozen_set=np.array([1, 2]),
                      frozen_values=np.zeros(2, np.uint8), metrics=np.zeros(4))


def test_sc_l2_worked_case():
    codeword, data = sc_decode(l2_spec(), np.array([5.0, 5.0]))
    assert codeword.tolist() == [1, 0] and data.tolist() == [0]


@pytest.mark.parametrize("mode", ["rla", "all_zero"])
@pytest.mark.parametrize("f", ["minsum", "exact"])
def test_sc_noiseless_recovery(mode, f):
    spec = construct(128, 100, 0.0, mode)
    rng = np.random.default_rng(3)
    d = rng.integers(0, 2, (10_000, 100), dtype=np.uint8)
    x = systematic_encode(spec, d)
    codeword, data = sc_decode(spec, 20.0 * (1.0 - 2.0 * x), f)
    np.testing.assert_array_equal(codeword, x)
    np.testing.assert_array_equal(data, d)


def test_sc_output_respects_frozen_values(code128):
    rng = np.random.default_rng(4)
    llr = rng.normal(0, 3, (2000, 128))
    codeword, data = sc_decode(code128, llr)
    assert (polar_transform(codeword)[:, code128.frozen_set] == code128.frozen_values).all()
    np.testing.assert_array_equal(data, codeword[:, code128.info_set])
    flipped, _ = sc_decode(code128, -llr)
    assert (polar_transform(flipped)[:, code128.frozen_set] == code128.frozen_values).all()


@pytest.mark.parametrize("mode", ["rla", "all_zero"])
def test_sc_exact_matches_marginalization_oracle(mode):
    spec = construct(8, 4, 0.0, mode)
    g = polar_matrix(8)
    rng = np.random.default_rng(5)
    for _ in range(200):
        llr = rng.normal(1.0, 2.0, 8) * rng.choice([-1, 1], 8)
        u_ref = sc_by_marginalization(g, spec.frozen_mask, spec.frozen_word, llr)
        codeword, _ = sc_decode(spec, llr, "exact")
        np.testing.assert_array_equal(codeword, u_ref @ g % 2)


def test_sc_single_and_batch_agree(code128):
    rng = np.random.default_rng(6)
    llr = rng.normal(2, 2, (5, 128))
    cw, d = sc_decode(code128, llr)
    for i in range(5):
        cwi, di = sc_decode(code128, llr[i])
        np.testing.assert_array_equal(cwi, cw[i])
        np.testing.assert_array_equal(di, d[i])

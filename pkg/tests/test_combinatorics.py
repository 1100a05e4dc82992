import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from roishape.combinatorics import (
    DomainError,
    binomial,
    fdc_codebook_size,
    floor_log2,
    rate_loss_csv,
    rate_loss_dc,
    rate_loss_fdc,
    rate_loss_fdc_upper,
    rate_loss_table,
    weight_class_ratio,
)

from oracles import count_words, pascal_triangle, words_of_weight

PASCAL = pascal_triangle(128)


def test_binomial_small_cases():
    assert binomial(5, 2) == 10
    assert binomial(100, 0) == 1


def test_binomial_against_pascal_triangle():
    assert binomial(100, 36) == PASCAL[100][36]
    assert binomial(100, 36) == 1977204582144932989443770175


@pytest.mark.parametrize("n,m", [(3, 4), (513, 1), (-1, 0), (5, -1)])
def test_binomial_domain(n, m):
    with pytest.raises(DomainError):
        binomial(n, m)


@given(st.integers(1, 128).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n))))
def test_pascal_identity(nm):
    n, m = nm
    assert binomial(n, m) == binomial(n - 1, m - 1) + (binomial(n - 1, m) if m <= n - 1 else 0)


def test_weight_class_ratio():
    assert weight_class_ratio(100, 1) == Fraction(100, 1)
    assert weight_class_ratio(100, 2) == Fraction(99, 2)
    assert weight_class_ratio(8, 2) * binomial(8, 1) == 28 == binomial(8, 2)
    for m in (0, 50, 60):
        with pytest.raises(DomainError):
            weight_class_ratio(100, m)


def test_fdc_codebook_size_examples():
    assert fdc_codebook_size(8, 1, 2) == count_words(8, 1, 2) == 36
    for n in (2, 5, 17, 100):
        assert fdc_codebook_size(n, 1, n - 1) == 2**n - 2
    assert fdc_codebook_size(100, 1, 36) == fdc_codebook_size(100, 64, 99)
    with pytest.raises(DomainError):
        fdc_codebook_size(8, 3, 2)
    with pytest.raises(DomainError):
        fdc_codebook_size(8, 0, 2)


def test_codebook_size_from_ratios():
    # Z = C(n,1) * (1 + C_2 + C_2 C_3 + ...): the stacked-ratio form of the sum
    n, w = 100, 36
    term, total = Fraction(n), Fraction(n)
    for m in range(2, w + 1):
        term *= weight_class_ratio(n, m)
        total += term
    assert total == fdc_codebook_size(n, 1, w)


def test_rate_loss_dc():
    r = rate_loss_dc(100, 36)
    assert (r.k, r.delta) == (90, Fraction(1, 10))
    r = rate_loss_dc(4, 2)
    assert len(words_of_weight(4, 2)) == 6
    assert (r.k, r.delta) == (2, Fraction(1, 2))
    for n, m in [(100, 36), (50, 7), (17, 3)]:
        assert rate_loss_dc(n, m) == rate_loss_dc(n, n - m)


def test_rate_loss_fdc():
    r = rate_loss_fdc(100, 0.36)
    assert (r.k, r.delta) == (91, Fraction(9, 100))
    r = rate_loss_fdc(8, 0.25)
    assert (r.k, r.delta) == (5, Fraction(3, 8))
    assert rate_loss_fdc_upper(100, 0.64) == rate_loss_fdc(100, 0.36)
    with pytest.raises(DomainError):
        rate_loss_fdc(10, 0.05)
    with pytest.raises(DomainError):
        rate_loss_fdc(10, 0.6)


@given(st.integers(1, 2**200))
def test_floor_log2_exact(x):
    k = floor_log2(x)
    assert 2**k <= x < 2 ** (k + 1)


@given(st.integers(4, 200).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, n - 2))))
def test_codebook_size_monotone(nw):
    n, w = nw
    assert fdc_codebook_size(n, 1, w + 1) > fdc_codebook_size(n, 1, w)


def test_rate_loss_table():
    rows = rate_loss_table([100, 200], [0.2, 0.36, 0.5, 0.64])
    by = {(r.n, r.phi): r for r in rows}
    assert by[100, 0.36].delta_dc == 0.10
    assert by[100, 0.36].delta_fdc == 0.09
    assert by[100, 0.64].delta_fdc == by[100, 0.36].delta_fdc
    assert by[200, 0.36].delta_dc <= by[100, 0.36].delta_dc
    assert by[200, 0.36].delta_fdc <= by[100, 0.36].delta_fdc


def test_dc_curve_minimum_at_half():
    grid = [i / 100 for i in range(1, 100)]
    rows = rate_loss_table([100], grid)
    best = min(rows, key=lambda r: r.delta_dc)
    assert best.delta_dc == rows[49].delta_dc and rows[49].phi == 0.5


def test_rate_loss_table_empty_ranges_are_nan():
    (row,) = rate_loss_table([20], [0.01])
    assert math.isnan(row.delta_dc) and math.isnan(row.delta_fdc)


def test_rate_loss_csv():
    text = rate_loss_csv(rate_loss_table([100], [0.36]))
    assert text.splitlines() == ["n,phi,delta_dc,delta_fdc", "100,0.3600,0.1,0.09"]

import math

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from fairrank.quota import ceil_quota, ceil_quotas, floor_quota, floor_quotas


def test_exact_integers_pass_through():
    assert floor_quota(3.0) == 3
    assert ceil_quota(3.0) == 3
    assert floor_quota(0.0) == 0
    assert ceil_quota(0.0) == 0


def test_plain_fractions():
    assert floor_quota(2.5) == 2
    assert ceil_quota(2.5) == 3
    assert floor_quota(0.9999) == 0
    assert ceil_quota(0.0001) == 1


def test_snap_fixes_product_artifacts():
    # raw floor/ceil round these one off: the products land an ulp away from
    # the integer that exact arithmetic would produce
    assert 90 * 0.7 < 63
    assert math.floor(90 * 0.7) == 62
    assert floor_quota(90 * 0.7) == 63

    assert 55 * (3 / 11) < 15
    assert math.floor(55 * (3 / 11)) == 14
    assert floor_quota(55 * (3 / 11)) == 15

    assert 77 * (9 / 11) > 63
    assert math.ceil(77 * (9 / 11)) == 64
    assert ceil_quota(77 * (9 / 11)) == 63

    assert 108 * (7 / 12) > 63
    assert math.ceil(108 * (7 / 12)) == 64
    assert ceil_quota(108 * (7 / 12)) == 63


def test_vectorized_matches_scalar():
    ks = np.arange(1, 200, dtype=np.float64)
    ps = np.array([0.7, 3 / 11, 9 / 11, 7 / 12, 0.5, 0.1])
    products = np.outer(ks, ps)
    floors = floor_quotas(products)
    ceils = ceil_quotas(products)
    assert floors.dtype == np.int64 and ceils.dtype == np.int64
    for i in range(products.shape[0]):
        for j in range(products.shape[1]):
            assert floors[i, j] == floor_quota(products[i, j])
            assert ceils[i, j] == ceil_quota(products[i, j])


@given(st.integers(1, 1000), st.floats(1e-3, 1.0))
def test_floor_ceil_bracket(k, p):
    x = k * p
    lo, hi = floor_quota(x), ceil_quota(x)
    assert lo <= hi <= lo + 1
    assert abs(lo - x) < 1 + 1e-9
    assert abs(hi - x) < 1 + 1e-9

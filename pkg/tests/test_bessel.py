import numpy as np
import pytest
import scipy.special
from hypothesis import given, strategies as st

from xychain.bessel import bessel_j, bessel_row, bessel_signed_row
from xychain.errors import OutOfRangeError


@given(st.integers(min_value=0, max_value=120),
       st.floats(min_value=0.0, max_value=200.0))
def test_matches_scipy(n, x):
    ref = scipy.special.jv(n, x)
    assert np.isclose(bessel_j(n, x), ref, rtol=1e-12, atol=1e-14)


def test_row_matches_scipy():
    x = 37.5
    row = bessel_row(60, x)
    ref = scipy.special.jv(np.arange(61), x)
    assert np.allclose(row, ref, rtol=1e-12, atol=1e-14)


def test_negative_order_parity():
    for n in range(1, 8):
        assert np.isclose(bessel_j(-n, 13.2), (-1) ** n * bessel_j(n, 13.2))


def test_normalization_sum():
    # J_0^2 + 2 sum_{n>=1} J_n^2 = 1
    x = 25.0
    row = bessel_row(80, x)
    total = row[0] ** 2 + 2.0 * np.sum(row[1:] ** 2)
    assert np.isclose(total, 1.0, atol=1e-12)


def test_signed_row_layout():
    # signed row holds J_n for n in [-nmax, nmax], centered at nmax,
    # with J_{-n} = (-1)^n J_n already applied
    nmax = 10
    x = 3.0
    row = bessel_signed_row(nmax, x)
    assert len(row) == 2 * nmax + 1
    assert np.isclose(row[nmax], bessel_j(0, x))
    for n in (1, 4, 7):
        assert np.isclose(row[nmax + n], bessel_j(n, x))
        assert np.isclose(row[nmax - n], (-1.0) ** n * bessel_j(n, x))


def test_out_of_range():
    with pytest.raises(OutOfRangeError):
        bessel_j(5000, 1.0)
    with pytest.raises(OutOfRangeError):
        bessel_j(3, 1e7)

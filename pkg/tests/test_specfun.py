import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phonent.errors import DomainError
from phonent.specfun import TWO_PI, ZETA3, cl2, cl3, li_unit, reduce_angle, sl2, sl3

PI = math.pi
angles = st.floats(-1e3, 1e3, allow_nan=False)


def partial_sums(theta, n_terms, chunk=250_000):
    """Direct sums of cos(n t)/n^2, sin(n t)/n^3, cos(n t)/n^3 over n <= n_terms."""
    theta = np.atleast_1d(np.asarray(theta, dtype=float))
    c2 = np.zeros_like(theta)
    s3 = np.zeros_like(theta)
    c3 = np.zeros_like(theta)
    for start in range(1, n_terms + 1, chunk):
        n = np.arange(start, min(start + chunk, n_terms + 1), dtype=float)
        arg = np.outer(theta, n)
        c, s = np.cos(arg), np.sin(arg)
        c2 += c @ (1 / n ** 2)
        s3 += s @ (1 / n ** 3)
        c3 += c @ (1 / n ** 3)
    return c2, s3, c3


class TestReduceAngle:
    def test_identity(self):
        assert reduce_angle(0.0) == 0.0

    def test_period(self):
        assert reduce_angle(TWO_PI) == 0.0

    def test_negative(self):
        assert reduce_angle(-PI / 2) == pytest.approx(3 * PI / 2, abs=1e-15)

    def test_tiny_negative_stays_half_open(self):
        assert 0.0 <= reduce_angle(-1e-20) < TWO_PI

    @pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
    def test_non_finite(self, bad):
        with pytest.raises(DomainError):
            reduce_angle(bad)

    @given(st.floats(-1e6, 1e6, allow_nan=False))
    def test_range_and_congruence(self, theta):
        r = reduce_angle(theta)
        assert 0.0 <= r < TWO_PI
        k = round((theta - r) / TWO_PI)
        assert abs(theta - r - k * TWO_PI) <= 4 * np.spacing(max(abs(theta), TWO_PI))


class TestSpotValues:
    def test_sl2(self):
        assert sl2(0.0) == pytest.approx(PI ** 2 / 6, abs=1e-15)
        assert sl2(PI) == pytest.approx(-PI ** 2 / 12, abs=1e-15)
        assert sl2(PI / 2) == pytest.approx(-PI ** 2 / 48, abs=1e-15)

    def test_sl2_quarter_turn_by_series(self):
        # 10^7 terms; oscillatory tail below 1/(N^2 sin(pi/4)) ~ 1.4e-14
        c2, _, _ = partial_sums(PI / 2, 10 ** 7, chunk=10 ** 6)
        assert c2[0] == pytest.approx(-0.2056167583560283, abs=1e-12)
        assert sl2(PI / 2) == pytest.approx(c2[0], abs=1e-12)

    def test_sl3(self):
        assert sl3(0.0) == 0.0
        assert sl3(TWO_PI) == 0.0
        assert sl3(PI / 2) == pytest.approx(PI ** 3 / 32, abs=1e-15)
        assert sl3(3 * PI / 2) == pytest.approx(-PI ** 3 / 32, abs=1e-14)

    def test_cl3(self):
        assert cl3(0.0) == ZETA3
        assert cl3(PI) == pytest.approx(-0.75 * ZETA3, abs=1e-15)
        assert cl3(PI / 2) == pytest.approx(-3 * ZETA3 / 32, abs=1e-15)

    def test_cl3_quarter_turn_by_even_resummation(self):
        # odd n drop out at pi/2; even n=2m give sum (-1)^m / (2m)^3
        m = np.arange(1, 200_001, dtype=float)
        direct = np.sum((-1.0) ** m / (2 * m) ** 3)
        assert cl3(PI / 2) == pytest.approx(direct, abs=1e-14)

    def test_zeta3_constant(self):
        n = np.arange(1, 10 ** 6 + 1, dtype=float)
        assert ZETA3 == pytest.approx(np.sum(1 / n ** 3) + 1 / (2 * 10 ** 12), abs=1e-15)

    def test_cl2_known_values(self):
        # Catalan's constant at pi/2
        assert cl2(PI / 2) == pytest.approx(0.915965594177219015, abs=1e-14)
        assert cl2(PI) == pytest.approx(0.0, abs=1e-15)
        assert cl2(3 * PI / 2) == pytest.approx(-0.915965594177219015, abs=1e-14)


class TestLiUnit:
    def test_order3_at_zero(self):
        z = li_unit(3, 0.0)
        assert z.real == ZETA3 and z.imag == 0.0

    def test_order3_quarter(self):
        z = li_unit(3, PI / 2)
        assert z.real == pytest.approx(-3 * ZETA3 / 32, abs=1e-15)
        assert z.imag == pytest.approx(PI ** 3 / 32, abs=1e-15)

    def test_order2_minus_one(self):
        z = li_unit(2, PI)
        assert z.real == pytest.approx(-PI ** 2 / 12, abs=1e-15)
        assert math.isfinite(z.imag)

    def test_array(self):
        z = li_unit(3, np.array([0.0, PI]))
        assert z.shape == (2,)
        assert z[1].real == pytest.approx(-0.75 * ZETA3)

    @pytest.mark.parametrize("s", [1, 4, 2.5])
    def test_bad_order(self, s):
        with pytest.raises(DomainError):
            li_unit(s, 0.1)

    def test_against_mpmath(self):
        mpmath = pytest.importorskip("mpmath")
        for theta in np.linspace(-7, 13, 41):
            for s in (2, 3):
                ref = complex(mpmath.polylog(s, mpmath.exp(1j * mpmath.mpf(theta))))
                assert abs(li_unit(s, theta) - ref) < 1e-13


@pytest.mark.parametrize("fn", [sl2, sl3, cl3, cl2])
def test_non_finite_rejected(fn):
    with pytest.raises(DomainError):
        fn(math.nan)


@settings(max_examples=200)
@given(angles)
def test_periodicity(theta):
    for fn in (sl2, sl3, cl3):
        assert fn(theta + TWO_PI) == pytest.approx(fn(theta), abs=1e-12)


@settings(max_examples=200)
@given(st.floats(0.0, TWO_PI, allow_nan=False, exclude_max=True))
def test_parity(theta):
    assert sl2(TWO_PI - theta) == pytest.approx(sl2(theta), abs=1e-12)
    assert cl3(TWO_PI - theta) == pytest.approx(cl3(theta), abs=1e-12)
    assert sl3(TWO_PI - theta) == pytest.approx(-sl3(theta), abs=1e-12)


def test_series_oracle():
    rng = np.random.default_rng(20240601)
    theta = rng.uniform(0.0, TWO_PI, 200)
    n_terms = 10 ** 6
    c2, s3, c3 = partial_sums(theta, n_terms)
    abs_tail = 1 / (2 * n_terms ** 2)
    # cos(n t)/n^2 converges conditionally; Abel summation bounds its tail
    osc_tail = 1 / ((n_terms + 1) ** 2 * np.abs(np.sin(theta / 2)))
    assert np.all(np.abs(sl3(theta) - s3) <= 1e-9 + abs_tail)
    assert np.all(np.abs(cl3(theta) - c3) <= 1e-9 + abs_tail)
    ok = osc_tail < 1e-9
    assert ok.sum() > 190
    assert np.all(np.abs(sl2(theta[ok]) - c2[ok]) <= 1e-9 + osc_tail[ok])


@pytest.mark.parametrize("theta", np.linspace(0.05, TWO_PI - 0.05, 25))
def test_derivatives(theta):
    h = 1e-5
    assert (sl3(theta + h) - sl3(theta - h)) / (2 * h) == pytest.approx(sl2(theta), abs=1e-6)
    assert (cl3(theta + h) - cl3(theta - h)) / (2 * h) == pytest.approx(-cl2(theta), abs=1e-6)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from phonent.entanglement import (
    NegativitySeries,
    entangled_window,
    jacobi_eigvalsh,
    log_negativity,
    negativity_curve,
    partial_transpose,
    rephasing_negativity,
    trace_norm_hermitian,
)
from phonent.errors import ValidationError
from phonent.evolution import DimensionlessConfig, FockDensityMatrix, ModeSumPolicy, propagate

PI = math.pi
BELL = FockDensityMatrix.from_ket(np.array([1, 0, 0, 1]) / math.sqrt(2), 1)


def random_density(rng, dim, rank):
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    rho = a @ a.conj().T
    return rho / np.trace(rho)


class TestJacobi:
    @pytest.mark.parametrize("n", [1, 2, 4, 9, 16, 25])
    def test_matches_lapack(self, n):
        rng = np.random.default_rng(n)
        a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        a = a + a.conj().T
        ref = np.linalg.eigvalsh(a)
        assert np.allclose(jacobi_eigvalsh(a), ref, atol=1e-12 * np.abs(ref).max())

    def test_diagonal_input(self):
        assert np.array_equal(jacobi_eigvalsh(np.diag([3.0, -1.0, 2.0])), [-1.0, 2.0, 3.0])

    def test_degenerate(self):
        rng = np.random.default_rng(0)
        q, _ = np.linalg.qr(rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6)))
        a = q @ np.diag([1, 1, 1, -2, -2, 5.0]) @ q.conj().T
        assert np.allclose(jacobi_eigvalsh(a), [-2, -2, 1, 1, 1, 5], atol=1e-12)


class TestPartialTranspose:
    def test_product_state(self):
        rng = np.random.default_rng(1)
        ra, rb = random_density(rng, 3, 2), random_density(rng, 3, 3)
        rho = FockDensityMatrix(2, np.kron(ra, rb))
        pt = partial_transpose(rho, "left")
        assert np.allclose(pt, np.kron(ra.T, rb), atol=1e-15)
        assert np.linalg.eigvalsh(pt).min() > -1e-12

    @pytest.mark.parametrize("side", ["left", "right"])
    def test_involution(self, side):
        rng = np.random.default_rng(4)
        rho = FockDensityMatrix(2, random_density(rng, 9, 4))
        twice = partial_transpose(FockDensityMatrix(2, partial_transpose(rho, side)), side)
        assert np.array_equal(twice, rho.matrix)

    def test_index_rule(self):
        rng = np.random.default_rng(8)
        rho = FockDensityMatrix(2, random_density(rng, 9, 9))
        pt = partial_transpose(rho, "left")
        d = 3
        for n1, n2, m1, m2 in np.ndindex(d, d, d, d):
            assert pt[n1 * d + n2, m1 * d + m2] == rho.matrix[m1 * d + n2, n1 * d + m2]

    def test_bell_min_eigenvalue(self):
        pt = partial_transpose(BELL)
        assert np.allclose(np.sort(np.linalg.eigvalsh(pt)), [-0.5, 0.5, 0.5, 0.5], atol=1e-15)
        assert np.max(np.abs(pt - pt.conj().T)) < 1e-12

    def test_bad_side(self):
        with pytest.raises(ValidationError):
            partial_transpose(BELL, "middle")


class TestTraceNorm:
    def test_identity(self):
        assert trace_norm_hermitian(np.eye(4)) == pytest.approx(4.0, abs=1e-14)

    def test_diag(self):
        assert trace_norm_hermitian(np.diag([1.0, -2.0])) == pytest.approx(3.0, abs=1e-14)

    def test_bell(self):
        assert trace_norm_hermitian(partial_transpose(BELL)) == pytest.approx(2.0, abs=1e-14)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError):
            trace_norm_hermitian(np.array([[0, 1.0], [0, 0]]))


class TestLogNegativity:
    def test_product(self):
        rng = np.random.default_rng(6)
        rho = FockDensityMatrix(1, np.kron(random_density(rng, 2, 2), random_density(rng, 2, 1)))
        assert log_negativity(rho) == 0.0

    def test_bell(self):
        assert log_negativity(BELL) == pytest.approx(1.0, abs=1e-14)

    @pytest.mark.parametrize("lam,sigma", [(0.1, PI / 2), (1.0, PI / 3), (0.6, 2.5)])
    def test_rephasing_law(self, lam, sigma):
        cfg = DimensionlessConfig(lam, sigma)
        en = log_negativity(propagate(FockDensityMatrix.plus_plus(), 2 * PI, cfg))
        assert en == pytest.approx(math.log2(1 + abs(math.sin(lam * PI * (PI - sigma) ** 2 / 2))), abs=1e-6)
        assert en == pytest.approx(rephasing_negativity(lam, sigma), abs=1e-12)

    def test_upper_bound_reached(self):
        cfg = DimensionlessConfig(4 / PI ** 2, PI / 2)
        assert log_negativity(propagate(FockDensityMatrix.plus_plus(), 2 * PI, cfg)) == pytest.approx(1.0, abs=1e-6)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.0, 4 * PI), st.floats(0.05, 3.0), st.sampled_from([None, 2.0]))
    def test_bounds_and_side_symmetry(self, tau, lam, theta):
        cfg = DimensionlessConfig(lam, PI / 2, theta)
        rho = propagate(FockDensityMatrix.plus_plus(), tau, cfg, ModeSumPolicy.tolerance(1e-8))
        en = log_negativity(rho)
        assert 0.0 <= en <= 1.0 + 1e-12
        right = math.log2(trace_norm_hermitian(partial_transpose(rho, "right")))
        assert abs(max(right, 0.0) - en) < 1e-10

    def test_free_phase_invariance(self):
        rng = np.random.default_rng(12)
        plain = DimensionlessConfig(0.7, 1.2)
        free = DimensionlessConfig(0.7, 1.2, include_free_phase=True, omega_ratio=1.9e6)
        rho0 = FockDensityMatrix.plus_plus()
        for tau in rng.uniform(0, 4 * PI, 20):
            a = log_negativity(propagate(rho0, tau, plain))
            b = log_negativity(propagate(rho0, tau, free))
            assert abs(a - b) < 1e-10


class TestCurves:
    def test_onset_and_maxima(self):
        cfg = DimensionlessConfig(0.2, PI / 2)
        taus = np.linspace(0.01, 7.0, 3000)
        series = negativity_curve(cfg, taus)
        assert np.all(series.values[taus <= cfg.sigma] == 0.0)
        near = np.abs(taus - 2 * PI) < 0.5
        assert abs(taus[near][np.argmax(series.values[near])] - 2 * PI) < 0.05

    def test_parallel_matches_serial(self):
        cfg = DimensionlessConfig(1.0, PI / 2, 1.0)
        taus = np.linspace(0.0, 7.0, 40)
        a = negativity_curve(cfg, taus, policy=ModeSumPolicy.tolerance(1e-8))
        b = negativity_curve(cfg, taus, policy=ModeSumPolicy.tolerance(1e-8), workers=4)
        assert np.array_equal(a.values, b.values)
        assert "created" in a.metadata and a.metadata["policy"].tol == 1e-8

    def test_grid_validation(self):
        cfg = DimensionlessConfig(1.0, PI / 2)
        with pytest.raises(ValidationError):
            negativity_curve(cfg, [1.0, 0.5])
        with pytest.raises(ValidationError):
            negativity_curve(cfg, [])

    def test_series_invariants(self):
        with pytest.raises(ValidationError):
            NegativitySeries(None, [0.0, 1.0], [0.1])
        with pytest.raises(ValidationError):
            NegativitySeries(None, [0.0, 1.0], [0.1, -0.2])


class TestWindow:
    def test_triangle(self):
        taus = np.linspace(0.0, 2.0, 201)
        vals = np.maximum(0.0, 0.5 - np.abs(taus - 1.0))
        series = NegativitySeries(None, taus, vals)
        assert entangled_window(series, 1.0, threshold=0.25) == pytest.approx(0.5, abs=1e-12)

    def test_not_entangled_and_open(self):
        taus = np.linspace(0.0, 1.0, 11)
        assert entangled_window(NegativitySeries(None, taus, np.zeros(11)), 0.5) == 0.0
        assert entangled_window(NegativitySeries(None, taus, np.ones(11)), 0.5) == math.inf

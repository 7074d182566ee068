import numpy as np
import pytest

from matmoments import circle, interval
from matmoments.errors import DimensionMismatch, GridTooCoarse, NotNormalized
from matmoments.measures import (
    DensityGridMeasure,
    DiscreteMatrixMeasure,
    bernstein_szego_density,
    block_diag_measure_values,
    circle_nodes,
    uniform_over_arcsine,
)

from corpora import random_pd


def test_discrete_measure_shape_checks():
    with pytest.raises(DimensionMismatch):
        DiscreteMatrixMeasure([0.0, 1.0], np.ones((3, 2, 2)))


def test_discrete_measure_normalization():
    mu = DiscreteMatrixMeasure([0.0, 1.0], [np.eye(2) / 2, np.eye(2) / 2])
    mu.check_normalized()
    bad = DiscreteMatrixMeasure([0.0], [0.9 * np.eye(2)])
    with pytest.raises(NotNormalized):
        bad.check_normalized()


def test_normalized_constructor_sums_to_identity():
    rng = np.random.default_rng(5)
    raw = np.stack([random_pd(rng, 3) for _ in range(4)])
    mu = DiscreteMatrixMeasure.normalized(rng.uniform(size=4), raw)
    np.testing.assert_allclose(mu.total_mass(), np.eye(3), atol=1e-13)


def test_arcsine_grid_integrates_reference_exactly():
    mu = DensityGridMeasure.arcsine_grid(lambda x: 1.0, 2, 64)
    np.testing.assert_allclose(mu.total_mass(), np.eye(2), atol=1e-14)
    assert mu.nodes.min() > 0 and mu.nodes.max() < 1


def test_uniform_density_over_arcsine_normalizes():
    mu = DensityGridMeasure.arcsine_grid(uniform_over_arcsine, 1, 4096)
    assert mu.total_mass()[0, 0].real == pytest.approx(1.0, abs=1e-6)


def test_grid_too_coarse():
    mu = DensityGridMeasure.arcsine_grid(lambda x: 1.0, 1, 4)
    with pytest.raises(GridTooCoarse):
        mu.require_nodes(8)
    with pytest.raises(GridTooCoarse):
        interval.rate_measure_interval(mu)


def test_circle_nodes_cover_the_circle_once():
    theta = circle_nodes(16)
    assert theta[-1] == pytest.approx(np.pi)
    assert theta[0] > -np.pi
    np.testing.assert_allclose(np.diff(theta), 2 * np.pi / 16)


def test_bernstein_szego_density_integrates_to_one():
    mu = DensityGridMeasure.circle_grid(bernstein_szego_density(0.5), 1, 256)
    assert mu.total_mass()[0, 0].real == pytest.approx(1.0, abs=1e-14)


def test_block_diag_values():
    v = block_diag_measure_values(np.array([1.0, 2.0]), np.array([3.0, 4.0]))
    np.testing.assert_array_equal(v[1], np.diag([2.0, 4.0]))


def test_density_values_must_be_psd():
    with pytest.raises(Exception):
        DensityGridMeasure(np.linspace(0.1, 0.9, 8), -np.ones((8, 1, 1)), np.full(8, 1 / 8))


def test_moments_with_singular_part():
    atoms = DiscreteMatrixMeasure([1.0], [0.5 * np.eye(1)])
    mu = DensityGridMeasure.arcsine_grid(lambda x: 0.5, 1, 256)
    mixed = DensityGridMeasure(mu.nodes, mu.values, mu.quad_weights, atoms)
    S = interval.moments_of_measure(mixed, 3)
    expected = 0.5 * interval.arcsine_moments(3)[:, 0, 0] + 0.5
    np.testing.assert_allclose(S[:, 0, 0].real, expected, atol=1e-14)
    half_lebesgue = DensityGridMeasure(
        circle_nodes(64), 0.5 * np.ones((64, 1, 1)), np.full(64, 1 / 64), DiscreteMatrixMeasure([0.0], [[[0.5]]])
    )
    G = circle.trig_moments_of_measure(half_lebesgue, 2)
    np.testing.assert_allclose(G[:, 0, 0], [0.5, 0.5], atol=1e-14)

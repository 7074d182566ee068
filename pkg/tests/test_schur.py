import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matmoments import circle, schur as S
from matmoments.errors import (
    GridTooCoarse,
    InconsistentInputs,
    NonInvertible,
    NotContraction,
    NotStrictContraction,
    TooCloseToBoundary,
)
from matmoments.measures import DensityGridMeasure, DiscreteMatrixMeasure, circle_nodes

import oracles
from corpora import circle_canonical_point, random_unitary

seeds = st.integers(min_value=0, max_value=2**32 - 1)
LOG34 = math.log(3 / 4)


# ---- Caratheodory functions ---------------------------------------------------------------


def test_caratheodory_coeffs():
    np.testing.assert_array_equal(S.caratheodory_coeffs(np.zeros((2, 2, 2))), np.zeros((2, 2, 2)))
    assert S.caratheodory_coeffs([0.5j])[0, 0, 0] == pytest.approx(-0.5j)
    rng = np.random.default_rng(1)
    G = rng.normal(size=(3, 2, 2)) + 1j * rng.normal(size=(3, 2, 2))
    np.testing.assert_array_equal(np.conj(np.swapaxes(S.caratheodory_coeffs(G), 1, 2)), G)


def test_caratheodory_eval_examples():
    rng = np.random.default_rng(2)
    x = rng.normal(size=(4, 2, 2)) + 1j * rng.normal(size=(4, 2, 2))
    mu = DiscreteMatrixMeasure.normalized(rng.uniform(-np.pi, np.pi, 4), x @ np.conj(np.swapaxes(x, 1, 2)))
    np.testing.assert_allclose(S.caratheodory_eval(mu, 0.0), np.eye(2), atol=1e-13)
    F = S.caratheodory_eval(mu, 0.3 - 0.4j)
    assert np.linalg.eigvalsh((F + F.conj().T) / 2)[0] > 0
    atom = DiscreteMatrixMeasure([0.0], [np.eye(1)])
    assert S.caratheodory_eval(atom, 0.5)[0, 0] == pytest.approx(3.0)
    leb = DensityGridMeasure.circle_grid(lambda t: 1.0, 2, 256)
    np.testing.assert_allclose(S.caratheodory_eval(leb, 0.6j), np.eye(2), atol=1e-13)
    with pytest.raises(TooCloseToBoundary):
        S.caratheodory_eval(atom, 0.9999999)


def test_caratheodory_taylor_coefficients_are_conjugate_moments():
    rng = np.random.default_rng(3)
    x = rng.normal(size=(5, 2, 2)) + 1j * rng.normal(size=(5, 2, 2))
    mu = DiscreteMatrixMeasure.normalized(rng.uniform(-np.pi, np.pi, 5), x @ np.conj(np.swapaxes(x, 1, 2)))
    coeffs = S.fft_taylor_oracle(lambda z: np.stack([S.caratheodory_eval(mu, w) for w in z]), r=0.3, m=128, count=4)
    C = S.caratheodory_coeffs(circle.trig_moments_of_measure(mu, 3))
    np.testing.assert_allclose(coeffs[0], np.eye(2), atol=1e-12)
    np.testing.assert_allclose(coeffs[1:], 2 * C, atol=1e-10)


# ---- Cayley transform ------------------------------------------------------------------------


def test_cayley_examples():
    np.testing.assert_allclose(S.schur_from_caratheodory(np.eye(2), 0.3), np.zeros((2, 2)), atol=1e-15)
    z = 0.2 + 0.1j
    F = np.array([[(1 + z) / (1 - z)]])
    assert S.schur_from_caratheodory(F, z)[0, 0] == pytest.approx(1.0)
    assert S.caratheodory_from_schur([[1.0]], z)[0, 0] == pytest.approx(F[0, 0])
    with pytest.raises(NonInvertible):
        S.caratheodory_from_schur(np.eye(2), 1.0)


def test_cayley_at_origin():
    assert S.schur_from_caratheodory(None, 0, f0=[[0.25]])[0, 0] == 0.25
    alpha = np.array([0.3 + 0.2j, -0.4])
    F = lambda w: S.caratheodory_from_schur(S.schur_eval(alpha, w), w)
    f0 = S.schur_from_caratheodory(None, 0, F=F)
    assert f0[0, 0] == pytest.approx(np.conj(alpha[0]), abs=1e-12)
    with pytest.raises(ValueError):
        S.schur_from_caratheodory(None, 0)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 3))
def test_cayley_round_trip(seed, p):
    rng = np.random.default_rng(seed)
    f = circle_canonical_point(rng, 1, p)[0]
    z = 0.9 * np.sqrt(rng.uniform()) * np.exp(2j * np.pi * rng.uniform())
    if abs(z) < 1e-3:
        z = 0.5
    F = S.caratheodory_from_schur(f, z)
    np.testing.assert_allclose(S.schur_from_caratheodory(F, z), f, atol=1e-11)


# ---- defects ---------------------------------------------------------------------------------


def test_defect_examples():
    br, bl = S.defect_matrices(np.zeros((2, 2)))
    np.testing.assert_allclose(br, np.eye(2))
    np.testing.assert_allclose(bl, np.eye(2))
    br, bl = S.defect_matrices([[0.5]])
    assert br[0, 0] == pytest.approx(math.sqrt(3) / 2)
    assert bl[0, 0] == pytest.approx(math.sqrt(3) / 2)
    with pytest.raises(NotContraction):
        S.defect_matrices(2 * np.eye(2))


@settings(max_examples=200, deadline=None)
@given(seeds, st.integers(1, 4), st.floats(0.0, 1.0))
def test_intertwining(seed, p, smax):
    A = circle_canonical_point(np.random.default_rng(seed), 1, p, smax)[0]
    br, bl = S.defect_matrices(A)
    np.testing.assert_allclose(A.conj().T @ bl, br @ A.conj().T, atol=1e-12)


# ---- Schur parameters -----------------------------------------------------------------------------


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 6))
def test_schur_parameter_maps_invert(seed, p, n):
    A = circle_canonical_point(np.random.default_rng(seed), n, p)
    alpha = S.schur_params_from_canonical(A)
    np.testing.assert_allclose(S.canonical_from_schur_params(alpha), A, atol=1e-10)
    # both sequences have the same defect determinants
    np.testing.assert_allclose(circle.verblunsky_det_product(alpha), circle.verblunsky_det_product(A), rtol=1e-10)


def test_schur_parameters_equal_canonical_for_scalars():
    a = np.array([0.3 + 0.4j, -0.2, 0.5j])
    np.testing.assert_allclose(S.schur_params_from_canonical(a), a[:, None, None], atol=1e-15)


def test_schur_params_from_moments():
    rng = np.random.default_rng(4)
    A = circle_canonical_point(rng, 4, 2)
    G = circle.from_canonical_circle(A)
    np.testing.assert_allclose(S.schur_params_from_moments(G), S.schur_params_from_canonical(A), atol=1e-10)


def test_parameters_must_be_strict():
    with pytest.raises(NotStrictContraction):
        S.schur_taylor_from_params([0.5, 1.0])


# ---- Taylor coefficients --------------------------------------------------------------------------


def test_taylor_examples():
    np.testing.assert_array_equal(S.schur_taylor_from_params(np.zeros((4, 2, 2))), np.zeros((4, 2, 2)))
    rng = np.random.default_rng(5)
    A = np.zeros((4, 2, 2), dtype=complex)
    A[0] = circle_canonical_point(rng, 1, 2)[0]
    G = S.schur_taylor_from_params(A)
    np.testing.assert_allclose(G[0], A[0].conj().T, atol=1e-15)
    np.testing.assert_allclose(G[1:], 0, atol=1e-15)
    G = S.schur_taylor_from_params([0.5, 0.5, 0.0])[:, 0, 0]
    np.testing.assert_allclose(G[:2], [0.5, 3 / 8], atol=1e-15)


@pytest.mark.parametrize("n", [1, 3, 6, 9])
def test_taylor_matches_power_series_oracle(n):
    rng = np.random.default_rng(60 + n)
    a = 0.9 * np.sqrt(rng.uniform(size=n)) * np.exp(2j * np.pi * rng.uniform(size=n))
    ref = [complex(x) for x in oracles.schur_taylor_series(a, n)]
    np.testing.assert_allclose(S.schur_taylor_from_params(a)[:, 0, 0], ref, atol=1e-12)
    np.testing.assert_allclose([complex(x) for x in oracles.schur_algorithm(ref, n)], a, atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 5), st.integers(1, 4))
def test_triangularity(seed, p, n, extra):
    rng = np.random.default_rng(seed)
    A = circle_canonical_point(rng, n + extra, p)
    np.testing.assert_allclose(
        S.schur_taylor_from_params(A)[:n], S.schur_taylor_from_params(A[:n]), atol=1e-12
    )


@settings(max_examples=50, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 6))
def test_taylor_matches_fft_of_evaluator(seed, p, n):
    A = circle_canonical_point(np.random.default_rng(seed), n, p, 0.9)
    ref = S.fft_taylor_oracle(lambda z: S.schur_eval(A, z), r=0.5, m=128, count=n)
    np.testing.assert_allclose(S.schur_taylor_from_params(A), ref, atol=1e-9)


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(1, 3), st.integers(1, 6))
def test_taylor_coefficients_pass_contraction_test(seed, p, n):
    A = circle_canonical_point(np.random.default_rng(seed), n, p, 0.95)
    G = S.schur_taylor_from_params(A)
    assert S.contraction_toeplitz_test(G)
    assert S.contraction_norm(G) < 1.0


# ---- FFT oracle and contraction test -------------------------------------------------------------------


def test_fft_oracle_examples():
    c = np.array([[1.0, 2j], [0.5, -1.0]])
    coeffs = S.fft_taylor_oracle(lambda z: np.broadcast_to(c, z.shape + (2, 2)), count=4)
    np.testing.assert_allclose(coeffs[0], c, atol=1e-15)
    np.testing.assert_allclose(coeffs[1:], 0, atol=1e-14)
    coeffs = S.fft_taylor_oracle(lambda z: z, count=3)
    np.testing.assert_allclose(coeffs, [0, 1, 0], atol=1e-14)
    coeffs = S.fft_taylor_oracle(lambda z: 1 / (1 - z), r=0.5, m=128, count=10)
    np.testing.assert_allclose(coeffs, 1.0, atol=1e-13)
    with pytest.raises(ValueError):
        S.fft_taylor_oracle(lambda z: z, r=0.9)
    with pytest.raises(ValueError):
        S.fft_taylor_oracle(lambda z: z, m=32)


def test_contraction_test_examples():
    assert S.contraction_toeplitz_test(np.zeros((3, 2, 2)))
    assert not S.contraction_toeplitz_test(np.diag([2.0, 0.5])[None])
    assert S.contraction_norm(np.zeros((0, 1, 1))) == 0.0
    L = S.lower_block_toeplitz([1.0, 2.0])
    np.testing.assert_array_equal(L, [[1, 0], [2, 1]])


# ---- boundary values and rates -------------------------------------------------------------------------


def test_boundary_density_examples():
    theta = circle_nodes(64)
    grid = S.boundary_density_from_schur(np.zeros((64, 2, 2)), theta)
    np.testing.assert_allclose(grid.values, np.broadcast_to(np.eye(2), (64, 2, 2)))
    grid = S.boundary_density_from_schur(np.full((64, 1, 1), 0.5), theta)
    expected = 0.75 / np.abs(1 - np.exp(1j * theta) / 2) ** 2
    np.testing.assert_allclose(grid.values[:, 0, 0].real, expected, rtol=1e-13)
    # 63 nodes avoid the angle where e^{it} f = 1
    unimodular = np.full((63, 1, 1), 1j)
    assert np.all(np.abs(S.boundary_density_from_schur(unimodular, circle_nodes(63)).values) < 1e-14)
    with pytest.raises(NonInvertible):
        S.boundary_density_from_schur(np.ones((64, 1, 1)), theta)
    with pytest.raises(InconsistentInputs):
        S.boundary_density_from_schur(np.zeros((63, 1, 1)), theta)


def test_rate_examples():
    eye = np.broadcast_to(np.eye(2), (64, 2, 2))
    assert S.rate_caratheodory(eye) == 0.0
    c = 1.5
    assert S.rate_caratheodory(c * eye) == pytest.approx(-2 * 4 * math.log(c))
    assert S.rate_schur(np.zeros((64, 2, 2))) == 0.0
    a = 0.6
    assert S.rate_schur(np.full((64, 1, 1), a)) == pytest.approx(-2 * math.log(1 - a * a))
    assert S.rate_schur(np.ones((64, 1, 1))) == math.inf
    with pytest.raises(GridTooCoarse):
        S.rate_schur(np.zeros((4, 1, 1)))


def test_rates_of_bernstein_szego_measure():
    theta, f, W = S.bernstein_szego_grids([0.5], 256)
    assert S.rate_caratheodory(W) == pytest.approx(-2 * LOG34, abs=1e-12)
    assert S.rate_schur(f) == pytest.approx(-2 * LOG34, abs=1e-12)
    mu = S.BoundaryDensityGrid(theta, W).as_measure()
    assert circle.rate_measure_circle(mu) == pytest.approx(S.rate_caratheodory(W), abs=1e-14)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(1, 2), st.integers(1, 4))
def test_boundary_measure_reproduces_moments_and_caratheodory(seed, p, n):
    A = circle_canonical_point(np.random.default_rng(seed), n, p, 0.6)
    alpha = S.schur_params_from_canonical(A)
    theta, f, W = S.bernstein_szego_grids(alpha, 1024)
    mu = S.BoundaryDensityGrid(theta, W).as_measure()
    np.testing.assert_allclose(mu.total_mass(), np.eye(p), atol=1e-9)
    np.testing.assert_allclose(circle.to_canonical_circle(circle.trig_moments_of_measure(mu, n)), A, atol=1e-8)
    z = 0.3 + 0.2j
    F_measure = S.caratheodory_eval(mu, z)
    F_schur = S.caratheodory_from_schur(S.schur_eval(alpha, z), z)
    np.testing.assert_allclose(F_measure, F_schur, atol=1e-9)


def test_triple_identity_examples():
    theta, f, W = S.bernstein_szego_grids(np.zeros((3, 2, 2)), 64)
    t = S.szego_triple_identity(np.zeros((3, 2, 2)), W, f, theta)
    assert (t.verblunsky, t.density, t.schur) == (0.0, 0.0, 0.0)
    theta, f, W = S.bernstein_szego_grids([0.5], 256)
    t = S.szego_triple_identity([0.5], W, f, theta)
    for v in (t.verblunsky, t.density, t.schur):
        assert v == pytest.approx(LOG34, abs=1e-12)
    assert t.max_gap < 1e-12


def test_triple_identity_block_diagonal():
    a1, a2 = np.array([0.5, -0.2j]), np.array([0.3 + 0.1j, 0.4])
    A = np.zeros((2, 2, 2), dtype=complex)
    A[:, 0, 0], A[:, 1, 1] = a1, a2
    theta, f, W = S.bernstein_szego_grids(A, 512)
    t = S.szego_triple_identity(A, W, f, theta)
    parts = []
    for a in (a1, a2):
        th, fs, Ws = S.bernstein_szego_grids(a, 512)
        parts.append(S.szego_triple_identity(a, Ws, fs, th))
    assert t.verblunsky == pytest.approx(sum(x.verblunsky for x in parts), abs=1e-13)
    assert t.density == pytest.approx(sum(x.density for x in parts), abs=1e-10)
    assert t.max_gap < 1e-6


def test_triple_identity_shape_checks():
    theta, f, W = S.bernstein_szego_grids([0.5], 64)
    with pytest.raises(InconsistentInputs):
        S.szego_triple_identity(np.zeros((1, 2, 2)), W, f, theta)
    with pytest.raises(InconsistentInputs):
        S.szego_triple_identity([0.5], W, f, theta[:-1])


def test_schur_eval_is_contractive_inside_disc():
    rng = np.random.default_rng(8)
    A = circle_canonical_point(rng, 5, 3)
    z = 0.99 * np.exp(2j * np.pi * rng.uniform(size=50))
    assert np.max(np.linalg.svd(S.schur_eval(A, z), compute_uv=False)) < 1


def test_unitary_schur_value_has_zero_density():
    u = random_unitary(np.random.default_rng(9), 2)
    theta = circle_nodes(8)
    f = np.broadcast_to(u, (8, 2, 2))
    try:
        W = S.boundary_density_from_schur(f, theta).values
    except NonInvertible:
        return
    assert np.all(np.abs(np.linalg.det(W)) < 1e-12)

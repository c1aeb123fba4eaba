import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from vwenergy.energy import EnergyReport, energy_from_distances, \
    energy_statistic, metric_name, pairwise_distance_matrix, t_energy, \
    v_statistic
from vwenergy.exceptions import InputError

from tests.oracles import energy_triple_loop


class TestPairwiseDistanceMatrix:

    def test_single_points(self):
        assert pairwise_distance_matrix([0.0], [3.0]).tolist() == [[3.0]]

    def test_self_distance_is_zero(self):
        p = np.array([[1.5, -2.0, 0.25]])
        assert pairwise_distance_matrix(p, p).tolist() == [[0.0]]

    def test_hand_evaluated(self):
        d = pairwise_distance_matrix([0.0, 2.0], [1.0, 3.0])
        np.testing.assert_array_equal(d, [[1.0, 3.0], [1.0, 1.0]])

    def test_dimension_mismatch(self):
        with pytest.raises(InputError):
            pairwise_distance_matrix(np.zeros((2, 3)), np.zeros((2, 4)))

    def test_callable_metric_matches_builtin(self):
        rng = np.random.default_rng(3)
        a, b = rng.normal(size=(4, 3)), rng.normal(size=(5, 3))
        d = pairwise_distance_matrix(a, b, lambda p, q: math.dist(p, q))
        np.testing.assert_allclose(d, pairwise_distance_matrix(a, b),
                                   rtol=0, atol=1e-14)

    def test_nan_from_metric_is_an_error(self):
        with pytest.raises(InputError, match="NaN"):
            pairwise_distance_matrix([0.0], [1.0], lambda p, q: float("nan"))

    def test_non_finite_input(self):
        with pytest.raises(InputError):
            pairwise_distance_matrix([np.inf], [1.0])

    def test_unknown_metric(self):
        with pytest.raises(InputError):
            pairwise_distance_matrix([0.0], [1.0], "manhattan")

    def test_large_blocks_are_chunked_consistently(self):
        rng = np.random.default_rng(0)
        a, b = rng.normal(size=(300, 100)), rng.normal(size=(400, 100))
        d = pairwise_distance_matrix(a, b)
        np.testing.assert_allclose(
            d[17], np.linalg.norm(b - a[17], axis=1), rtol=1e-13)


class TestEnergyStatistic:

    def test_single_points(self):
        rep = energy_statistic([0.0], [1.0])
        assert rep.energy == 2.0
        assert rep.within_x_mean == rep.within_y_mean == 0.0

    def test_identical_samples(self):
        x = np.random.default_rng(1).normal(size=(7, 3))
        assert abs(energy_statistic(x, x.copy()).energy) <= 1e-12

    def test_hand_evaluated(self):
        rep = energy_statistic([0.0, 2.0], [1.0, 3.0])
        assert rep.cross_mean * 4 == 6.0
        assert rep.energy == 1.0
        assert rep.t_energy == 1.0

    def test_empty_sample(self):
        with pytest.raises(InputError):
            energy_statistic(np.empty((0, 2)), np.zeros((2, 2)))

    def test_decomposition_reconstructs(self):
        rng = np.random.default_rng(5)
        rep = energy_statistic(rng.normal(size=(9, 4)),
                               rng.normal(size=(6, 4)))
        rebuilt = 2 * rep.cross_mean - rep.within_x_mean - rep.within_y_mean
        assert rebuilt == pytest.approx(rep.energy, rel=1e-12)
        assert rep.t_energy == pytest.approx(9 * 6 / 15 * rep.energy,
                                             rel=1e-15)

    def test_from_precomputed_blocks(self):
        rng = np.random.default_rng(6)
        x, y = rng.normal(size=(5, 2)), rng.normal(size=(8, 2))
        rep = energy_from_distances(pairwise_distance_matrix(x, x),
                                    pairwise_distance_matrix(y, y),
                                    pairwise_distance_matrix(x, y))
        assert rep == energy_statistic(x, y)

    def test_inconsistent_blocks(self):
        with pytest.raises(InputError):
            energy_from_distances(np.zeros((2, 2)), np.zeros((3, 3)),
                                  np.zeros((2, 4)))

    def test_vw_metric_on_preshapes(self):
        z = np.array([[1, -1, 0], [1, 0, -1]], dtype=complex)
        z /= np.linalg.norm(z, axis=1, keepdims=True)
        rep = energy_statistic(z[:1], z[1:], "vw")
        # |<z0, z1>|^2 = 1/4, chord = sqrt(2 * 3/4)
        assert rep.energy == pytest.approx(2 * math.sqrt(1.5), rel=1e-14)


@st.composite
def two_samples(draw):
    d = draw(st.integers(1, 6))
    elems = st.floats(-100, 100, allow_nan=False, allow_infinity=False)
    x = draw(arrays(float, (draw(st.integers(1, 8)), d), elements=elems))
    y = draw(arrays(float, (draw(st.integers(1, 8)), d), elements=elems))
    return x, y


@settings(max_examples=200, deadline=None)
@given(two_samples())
def test_symmetry_and_nonnegativity(samples):
    x, y = samples
    forward = energy_statistic(x, y).energy
    backward = energy_statistic(y, x).energy
    assert forward == pytest.approx(backward, rel=1e-12, abs=1e-12)
    assert forward >= -1e-12 * max(1.0, np.abs(np.vstack([x, y])).max())


@settings(max_examples=200, deadline=None)
@given(two_samples())
def test_matches_triple_loop(samples):
    x, y = samples
    assert energy_statistic(x, y).energy == pytest.approx(
        energy_triple_loop(x, y), rel=1e-12, abs=1e-10)


def test_t_energy():
    assert t_energy(EnergyReport.from_terms(1.0, 0.0, 0.0, 1, 1)) == 1.0
    assert t_energy(EnergyReport.from_terms(0.0, 0.0, 0.0, 3, 7)) == 0.0
    rep = EnergyReport.from_terms(0.7, 0.5, 0.4, 100, 100)
    assert t_energy(rep) == pytest.approx(50 * rep.energy, rel=1e-15)


class TestVStatistic:

    def test_constant_kernel(self):
        assert v_statistic([1.0, 4.0, 9.0], lambda p, q: 1.0) == 1.0

    def test_zero_kernel(self):
        assert v_statistic([1.0, 4.0], lambda p, q: 0.0) == 0.0

    def test_hand_evaluated(self):
        assert v_statistic([0.0, 2.0]) == 1.0

    def test_within_terms_are_v_statistics(self):
        rng = np.random.default_rng(2)
        x, y = rng.normal(size=(6, 3)), rng.normal(size=(4, 3))
        rep = energy_statistic(x, y)
        assert rep.within_x_mean == pytest.approx(v_statistic(x), rel=1e-14)
        assert rep.within_y_mean == pytest.approx(v_statistic(y), rel=1e-14)

    def test_empty(self):
        with pytest.raises(InputError):
            v_statistic([])


def test_metric_aliases():
    assert metric_name("vw-squared") == "vw_squared"
    assert metric_name("vw_chord") == "vw"
    assert metric_name(math.dist) == "dist"

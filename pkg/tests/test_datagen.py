import numpy as np
import pytest

from vwenergy.datagen import circle_template, perturb_sample, \
    square_template, template
from vwenergy.exceptions import InputError
from vwenergy.shapes import preshape, vw_chord_distance

from tests.oracles import chord_materialized

# chord distance between the k = 40 circle and square templates, computed
# once with vw_chord_distance and confirmed against the Frobenius oracle
CIRCLE_SQUARE_CHORD_40 = 0.1750830611171886


def test_circle_k4():
    np.testing.assert_allclose(circle_template(4).points,
                               [[1, 0], [0, 1], [-1, 0], [0, -1]],
                               atol=1e-15)


@pytest.mark.parametrize("k", [3, 7, 40, 50])
def test_circle_geometry(k):
    pts = circle_template(k).points
    np.testing.assert_allclose(np.hypot(*pts.T), 1, atol=1e-15)
    np.testing.assert_allclose(pts.mean(axis=0), 0, atol=1e-12)


def test_square_corners():
    np.testing.assert_array_equal(square_template(4).points,
                                  [[1, 1], [-1, 1], [-1, -1], [1, -1]])


def test_square_k8():
    np.testing.assert_array_equal(
        square_template(8).points,
        [[1, 1], [0, 1], [-1, 1], [-1, 0], [-1, -1], [0, -1], [1, -1],
         [1, 0]])


@pytest.mark.parametrize("k", [4, 5, 13, 40])
def test_square_on_boundary(k):
    pts = square_template(k).points
    np.testing.assert_allclose(np.abs(pts).max(axis=1), 1, atol=1e-12)
    steps = np.abs(np.diff(np.vstack([pts, pts[:1]]), axis=0)).sum(axis=1)
    # consecutive landmarks are 8/k apart along the boundary (L1 on edges)
    np.testing.assert_allclose(steps, 8 / k, atol=1e-12)


def test_template_errors():
    with pytest.raises(InputError):
        circle_template(2)
    with pytest.raises(InputError):
        square_template(3)
    with pytest.raises(InputError):
        template("triangle", 10)


def test_templates_deterministic():
    assert circle_template(40).points.tobytes() == \
        circle_template(40).points.tobytes()
    assert square_template(40).points.tobytes() == \
        square_template(40).points.tobytes()


def test_shape_separation():
    z = preshape(circle_template(40).points)
    w = preshape(square_template(40).points)
    assert chord_materialized(z, w) == pytest.approx(CIRCLE_SQUARE_CHORD_40,
                                                     abs=1e-12)
    assert vw_chord_distance(z, w) == pytest.approx(CIRCLE_SQUARE_CHORD_40,
                                                    abs=1e-12)


def test_zero_noise():
    tmpl = square_template(8)
    sample = perturb_sample(tmpl, 0.0, 5, 0)
    assert sample.shape == (5, 8, 2)
    assert np.all(sample == tmpl.points)


def test_noise_reproducible():
    a = perturb_sample(circle_template(10), 0.1, 4, np.random.default_rng(3))
    b = perturb_sample(circle_template(10), 0.1, 4, np.random.default_rng(3))
    assert a.tobytes() == b.tobytes()


def test_noise_concentration():
    tmpl = circle_template(40)
    sample = perturb_sample(tmpl, 0.1, 100, np.random.default_rng(4))
    assert np.abs(sample.mean(axis=0) - tmpl.points).max() <= 0.04
    assert len({s.tobytes() for s in sample}) == 100


def test_bad_arguments():
    with pytest.raises(InputError):
        perturb_sample(circle_template(5), -1.0, 3, 0)
    with pytest.raises(InputError):
        perturb_sample(circle_template(5), 0.1, 0, 0)

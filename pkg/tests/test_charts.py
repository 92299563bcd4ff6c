"""Chart invariants and sampling behaviour."""

import numpy as np
import pytest

from metsymp.charts import Chart, product_with_line
from metsymp.errors import GeometryError


def test_chart_validation():
    with pytest.raises(GeometryError):
        Chart(("x", "x"), ((-1, 1), (-1, 1)))
    with pytest.raises(GeometryError):
        Chart(("x",), ((1.0, 1.0),))
    with pytest.raises(GeometryError):
        Chart(("x", "y"), ((-1, 1),))
    with pytest.raises(GeometryError):
        Chart(("x",), ((-1, 1),), dim=3)


def test_samples_avoid_boundary_and_are_reproducible():
    chart = Chart(("x", "y"), ((0.0, 1.0), (-2.0, 0.0)), sampler_seed=5)
    pts = chart.samples(200)
    assert pts.shape == (200, 2)
    assert np.all(pts[:, 0] >= 0.05) and np.all(pts[:, 0] <= 0.95)
    assert np.all(pts[:, 1] >= -1.9) and np.all(pts[:, 1] <= -0.1)
    assert np.array_equal(pts, chart.samples(200))
    assert not np.array_equal(pts, chart.samples(200, seed=6))


def test_contains_and_index():
    chart = Chart(("a", "b"), ((-1, 1), (0, 2)))
    assert chart.contains(np.array([0.0, 1.0]))
    assert not chart.contains(np.array([0.0, 3.0]))
    assert chart.index("b") == 1
    with pytest.raises(GeometryError):
        chart.index("c")


def test_product_with_line():
    base = Chart(("x", "y", "z"), ((-1, 1),) * 3)
    prod = product_with_line(base, "t", (-2.0, 2.0))
    assert prod.coord_names == ("x", "y", "z", "t")
    assert prod.domain[-1] == (-2.0, 2.0)
    with pytest.raises(GeometryError):
        product_with_line(prod, "t")

"""An invariant-frame structure with classification index 2.

Both built-in entries have index 1, so this module builds a genuinely
different nullity structure to exercise the verifiers off that orbit.  On
an Euler-angle chart (u, v, w), the standard rotation-invariant frame

    X1 = (sin w / sin v) d_u + cos w d_v - sin w cot v d_w
    X2 = (cos w / sin v) d_u - sin w d_v - cos w cot v d_w
    X3 = d_w

with dual forms sigma_i satisfies [X1,X2] = X3 cyclically.  Rescaling to
E1 = sqrt(2) X1, E2 = sqrt(6) X2, E3 = sqrt(3) X3 turns the brackets into
[E1,E2] = 2 E3, [E2,E3] = 3 E1, [E3,E1] = E2, and the orthonormal-frame
metric with eta = E3-dual and phi E1 = E2 is a contact metric structure.
A frame computation of the curvature gives R(E1,xi)xi = 2 E1 and
R(E2,xi)xi = -2 E2 with h = diag(-1, +1, 0) on (E1, E2, xi), so the
nullity constants are (kappa, mu) = (0, -2), lambda = 1, and the index is
(1 - mu/2)/sqrt(1 - kappa) = 2.  With mu different from 2 - 2n = 0 the
structure is not eta-Einstein.
"""

import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from metsymp.charts import Chart
from metsymp.contact import (
    ContactMetricStructure,
    boeckx_index,
    d_homothety,
    eta_einstein_fit,
    fit_kappa_mu,
    h_eigendecomposition,
    kappa_mu_after_rescale,
    verify_compatibility,
    verify_kmu_curvature,
)
from metsymp.curvature import christoffel_batch, ricci_components
from metsymp.expressions import Const, Coord, cos, sin
from metsymp.fields import TensorField
from metsymp.submersion import fit_symplectization_kmu, verify_currel, verify_ricci_relations
from metsymp.symplectization import build_metric_symplectization, nijenhuis, nijenhuis_norms


@pytest.fixture(scope="module")
def curved():
    chart = Chart(("u", "v", "w"),
                  ((-2.8, 2.8), (0.5, 2.6), (-2.8, 2.8)), sampler_seed=37)
    u, v, w = (Coord(i, n) for i, n in enumerate(chart.coord_names))
    zero = Const(0.0)
    sv, cv, sw, cw = sin(v), cos(v), sin(w), cos(w)

    sigma1 = TensorField.covector(chart, [sw * sv, cw, zero])
    sigma2 = TensorField.covector(chart, [cw * sv, -sw, zero])
    sigma3 = TensorField.covector(chart, [cv, zero, Const(1.0)])
    X1 = TensorField.vector(chart, [sw / sv, cw, -(sw * cv) / sv])
    X2 = TensorField.vector(chart, [cw / sv, -sw, -(cw * cv) / sv])

    r3 = math.sqrt(3.0)
    eta = sigma3.scale(Const(1.0 / r3))
    g_raw = (sigma1.outer(sigma1).scale(Const(0.5))
             + sigma2.outer(sigma2).scale(Const(1.0 / 6.0))
             + sigma3.outer(sigma3).scale(Const(1.0 / 3.0)))
    g = TensorField(chart, 0, 2, g_raw.components, "symmetric")
    phi = X2.outer(sigma1).scale(Const(r3)) - X1.outer(sigma2).scale(Const(1.0 / r3))
    return ContactMetricStructure.build(chart, eta, g, phi)


def test_compatibility(curved):
    assert verify_compatibility(curved, 60).max_residual < 1e-10


def test_nullity_constants_and_index(curved):
    rep = fit_kappa_mu(curved, 40)
    assert_allclose([rep.kappa, rep.mu], [0.0, -2.0], atol=1e-9)
    assert rep.residual < 1e-9
    assert_allclose(rep.lam, 1.0, atol=1e-10)
    assert_allclose(boeckx_index(rep.kappa, rep.mu), 2.0, atol=1e-9)


def test_h_spectrum(curved):
    for p in curved.chart.samples(8):
        eig = h_eigendecomposition(curved, p)
        assert_allclose(np.sort(eig.eigenvalues), [-1.0, 0.0, 1.0], atol=1e-9)


def test_eigenspace_curvature_block(curved):
    rep6 = verify_kmu_curvature(curved, 0.0, -2.0, 20)
    assert rep6.max_residual < 1e-6


def test_rescale_law_and_index_invariance(curved):
    for a in (0.5, 2.0):
        rep = fit_kappa_mu(d_homothety(curved, a), 25)
        kp, mp = kappa_mu_after_rescale(0.0, -2.0, a)
        assert abs(rep.kappa - kp) < 1e-8
        assert abs(rep.mu - mp) < 1e-8
        assert_allclose(boeckx_index(rep.kappa, rep.mu), 2.0, atol=1e-8)


def test_not_eta_einstein(curved):
    # eta-Einstein needs mu = 2 - 2n = 0 here; this structure has mu = -2
    rep = eta_einstein_fit(curved, 25)
    assert rep.residual > 1e-3


def test_symplectization_constants(curved):
    B = build_metric_symplectization(curved)
    pts = B.chart.samples(10)
    data = christoffel_batch(B.gbar, pts)
    ric = ricci_components(data)
    assert np.max(np.abs(ric[:, 3, 3] + 6.0)) < 1e-8
    assert verify_ricci_relations(B, 8).max_residual < 1e-6
    assert verify_currel(B, 8).max_residual < 1e-6
    fit = fit_symplectization_kmu(B, 0.0, 15)
    assert_allclose([fit.kappa_tilde, fit.mu_tilde], [-2.0, -2.0], atol=1e-8)
    norms = nijenhuis_norms(nijenhuis(B.J), B.gbar, pts)
    assert np.min(norms) > 1e-2

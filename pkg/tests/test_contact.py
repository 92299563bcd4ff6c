"""Contact metric structures: axioms, fits, rescalings, eigenstructure.

Frozen expected values and where they come from:

* the R^3 model fits kappa = 1 with h = 0 (worked out from its unimodular
  frame, where the two contact directions and the Reeb field bracket as
  [E1, E2] = 2 E3 with all else zero);
* the flat-plane bundle is flat, so its curvature annihilates the Reeb
  field and the fit returns exactly (0, 0); its h has eigenvalues
  {0, +1, -1};
* rescaling the (0, 0) structure by a = 2 gives (3/4, 1) and leaves the
  classification index at 1;
* the R^3 model satisfies Ric = -2 g + 4 eta (x) eta (frame computation:
  the mixed-plane curvature is -3 and the Reeb-plane curvature +1), and
  the fitted pair is cross-checked against a direct Ricci evaluation.
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
    h_norms,
    is_K_contact,
    kappa_mu_after_rescale,
    reeb_field,
    solve_reeb,
    verify_compatibility,
    verify_contact_form,
    verify_kmu_curvature,
    verify_structure_isomorphism,
)
from metsymp.curvature import christoffel_batch, ricci_components
from metsymp.errors import (
    GeometryError,
    NotContactError,
    SasakianDegeneracyError,
)
from metsymp.expressions import Const, Coord
from metsymp.fields import SmoothMap, TensorField


# ---------------------------------------------------------------------------
# contact condition and the Reeb field
# ---------------------------------------------------------------------------


def test_darboux_form_is_contact_and_plain_z_form_is_not():
    chart = Chart(("x", "y", "z"), ((-2, 2),) * 3, sampler_seed=2)
    y = Coord(1, "y")
    eta = TensorField.covector(chart, [-y, Const(0.0), Const(1.0)])
    assert verify_contact_form(eta, chart, 50).passed
    dz = TensorField.covector(chart, [Const(0.0), Const(0.0), Const(1.0)])
    assert not verify_contact_form(dz, chart, 20).passed


def test_even_dimensional_chart_rejected():
    chart = Chart(("x", "y"), ((-1, 1), (-1, 1)))
    eta = TensorField.covector(chart, [Const(0.0), Const(1.0)])
    with pytest.raises(GeometryError):
        verify_contact_form(eta, chart, 10)


def test_reeb_of_plain_darboux_form():
    chart = Chart(("x", "y", "z"), ((-2, 2),) * 3, sampler_seed=2)
    y = Coord(1, "y")
    eta = TensorField.covector(chart, [-y, Const(0.0), Const(1.0)])
    for p in chart.samples(10):
        xi = solve_reeb(eta, chart, p)
        assert_allclose(xi, [0.0, 0.0, 1.0], atol=1e-12)
    xi_sym = reeb_field(eta)
    pts = chart.samples(20)
    expected = np.zeros((20, 3))
    expected[:, 2] = 1.0
    assert_allclose(xi_sym.values(pts), expected, atol=1e-12)


def test_reeb_solver_rejects_non_contact_form():
    chart = Chart(("x", "y", "z"), ((-2, 2),) * 3)
    dz = TensorField.covector(chart, [Const(0.0), Const(0.0), Const(1.0)])
    with pytest.raises(NotContactError):
        solve_reeb(dz, chart, np.array([0.1, 0.2, 0.3]))


def test_reeb_defining_equations_at_samples(any_entry):
    S = any_entry.structure
    from metsymp.fields import exterior_derivative

    pts = S.chart.samples(100)
    deta = exterior_derivative(S.eta).values(pts)
    xv = S.xi.values(pts)
    ev = S.eta.values(pts)
    assert np.max(np.abs(np.einsum("ni,nij->nj", xv, deta))) < 1e-9
    assert np.max(np.abs(np.einsum("ni,ni->n", xv, ev) - 1.0)) < 1e-9


def test_slice_form_reeb_scales_inversely(sasakian):
    """The Reeb field of exp(2t0) eta is exp(-2t0) xi."""
    for t0 in (-0.4, 0.25):
        a = math.exp(2 * t0)
        eta_t = sasakian.eta.scale(Const(a))
        xi_t = reeb_field(eta_t)
        pts = sasakian.chart.samples(20)
        assert np.max(np.abs(xi_t.values(pts) - sasakian.xi.values(pts) / a)) < 1e-11


# ---------------------------------------------------------------------------
# compatibility
# ---------------------------------------------------------------------------


def test_catalog_compatibility(any_entry):
    rep = verify_compatibility(any_entry.structure, 100)
    assert rep.max_residual < 1e-8


def test_doubled_metric_fails_pairing_axiom(sasakian):
    doubled = ContactMetricStructure.build(
        sasakian.chart, sasakian.eta, sasakian.g.scale(Const(2.0)), sasakian.phi)
    rep = verify_compatibility(doubled, 30)
    assert not rep.passed
    assert rep.residual_deta_pairing > 1e-3


def test_phi_annihilates_reeb(any_entry):
    S = any_entry.structure
    pts = S.chart.samples(100)
    pv = S.phi.values(pts)
    xv = S.xi.values(pts)
    assert np.max(np.abs(np.einsum("nij,nj->ni", pv, xv))) < 1e-9


def test_build_rejects_even_charts_and_bad_ranks(sasakian):
    chart = Chart(("x", "y"), ((-1, 1), (-1, 1)))
    eta = TensorField.covector(chart, [Const(0.0), Const(1.0)])
    g = TensorField(chart, 0, 2, [[Const(1.0), Const(0.0)], [Const(0.0), Const(1.0)]],
                    "symmetric")
    phi = TensorField(chart, 1, 1, [[Const(0.0), Const(1.0)], [Const(-1.0), Const(0.0)]])
    with pytest.raises(GeometryError):
        ContactMetricStructure.build(chart, eta, g, phi)
    with pytest.raises(GeometryError):
        ContactMetricStructure.build(sasakian.chart, sasakian.g, sasakian.g, sasakian.phi)


# ---------------------------------------------------------------------------
# the h tensor
# ---------------------------------------------------------------------------


def test_h_vanishes_exactly_on_sasakian_model(sasakian):
    rep = is_K_contact(sasakian, 100)
    assert rep.is_k_contact
    assert rep.max_h_norm < 1e-12


def test_h_eigenvalues_on_flat_bundle(flat_bundle):
    rep = is_K_contact(flat_bundle, 50)
    assert not rep.is_k_contact
    for p in flat_bundle.chart.samples(10):
        eig = h_eigendecomposition(flat_bundle, p)
        assert_allclose(np.sort(eig.eigenvalues), [-1.0, 0.0, 1.0], atol=1e-10)
        assert eig.orthonormality_residual < 1e-8
        assert eig.xi_alignment_residual < 1e-8
        assert len(eig.plus_indices) == 1
        assert len(eig.minus_indices) == 1
        assert len(eig.zero_indices) == 1


def test_h_identities(any_entry):
    S = any_entry.structure
    pts = S.chart.samples(100)
    hv = S.h.values(pts)
    pv = S.phi.values(pts)
    anti = np.einsum("nia,naj->nij", hv, pv) + np.einsum("nia,naj->nij", pv, hv)
    assert np.max(np.abs(anti)) < 1e-8
    assert np.max(np.abs(np.einsum("nii->n", hv))) < 1e-8


def test_eigendecomposition_rejects_vanishing_h(sasakian):
    with pytest.raises(SasakianDegeneracyError):
        h_eigendecomposition(sasakian, sasakian.chart.samples(1)[0])


# ---------------------------------------------------------------------------
# nullity-constant fitting
# ---------------------------------------------------------------------------


def test_fit_on_sasakian_model(sasakian):
    rep = fit_kappa_mu(sasakian, 50)
    assert abs(rep.kappa - 1.0) < 1e-6
    assert rep.mu is None
    assert rep.sasakian_flag
    assert rep.residual < 1e-6
    assert rep.lam is None


def test_fit_on_flat_bundle(flat_bundle):
    rep = fit_kappa_mu(flat_bundle, 50)
    assert abs(rep.kappa) < 1e-6
    assert abs(rep.mu) < 1e-6
    assert rep.residual < 1e-6
    assert not rep.sasakian_flag
    assert abs(rep.lam - 1.0) < 1e-9


def test_flat_bundle_curvature_annihilates_reeb(flat_bundle):
    """Independent of the fitting code path: R(X, Y) xi itself vanishes."""
    from metsymp.curvature import riemann_components

    pts = flat_bundle.chart.samples(40)
    data = christoffel_batch(flat_bundle.g, pts)
    riem = riemann_components(data)
    lhs = np.einsum("nlkij,nk->nlij", riem, flat_bundle.xi.values(pts))
    assert np.max(np.abs(lhs)) < 1e-12


def test_fitted_kappa_at_most_one(any_entry):
    rep = fit_kappa_mu(any_entry.structure, 50)
    assert rep.kappa <= 1.0 + 1e-8


def test_rescale_of_flat_bundle_hits_the_law(flat_bundle):
    S2 = d_homothety(flat_bundle, 2.0)
    rep = fit_kappa_mu(S2, 40)
    assert_allclose([rep.kappa, rep.mu], [0.75, 1.0], atol=1e-9)
    assert rep.residual < 1e-9


def test_rescale_equivariance_random_factors(any_entry):
    S = any_entry.structure
    base = fit_kappa_mu(S, 30)
    rng = np.random.default_rng(23)
    for a in rng.uniform(0.5, 3.0, size=3):
        rep = fit_kappa_mu(d_homothety(S, float(a)), 30)
        kp, mp = kappa_mu_after_rescale(base.kappa, base.mu, float(a))
        assert abs(rep.kappa - kp) < 1e-6
        if mp is not None:
            assert abs(rep.mu - mp) < 1e-6


def test_d_homothety_identity_and_derived_laws(flat_bundle):
    S1 = d_homothety(flat_bundle, 1.0)
    pts = flat_bundle.chart.samples(20)
    for f1, f2 in ((S1.eta, flat_bundle.eta), (S1.g, flat_bundle.g),
                   (S1.phi, flat_bundle.phi)):
        assert np.max(np.abs(f1.values(pts) - f2.values(pts))) == 0.0
    a = 2.5
    S2 = d_homothety(flat_bundle, a)
    assert np.max(np.abs(S2.xi.values(pts) - flat_bundle.xi.values(pts) / a)) < 1e-9
    assert np.max(np.abs(S2.h.values(pts) - flat_bundle.h.values(pts) / a)) < 1e-9
    assert verify_compatibility(S2, 50).passed
    with pytest.raises(GeometryError):
        d_homothety(flat_bundle, 0.0)


# ---------------------------------------------------------------------------
# the classification index
# ---------------------------------------------------------------------------


def test_boeckx_index_values_and_guard():
    assert boeckx_index(0.0, 0.0) == 1.0
    assert_allclose(boeckx_index(0.75, 1.0), 1.0)
    with pytest.raises(SasakianDegeneracyError):
        boeckx_index(1.0, 0.0)


def test_index_invariant_under_rescaling(flat_bundle):
    base = fit_kappa_mu(flat_bundle, 30)
    i0 = boeckx_index(base.kappa, base.mu)
    for a in (0.5, 2.0, math.e):
        rep = fit_kappa_mu(d_homothety(flat_bundle, a), 30)
        assert abs(boeckx_index(rep.kappa, rep.mu) - i0) < 1e-6


# ---------------------------------------------------------------------------
# the six eigenspace curvature identities
# ---------------------------------------------------------------------------


def test_eigenspace_identities_on_flat_bundle(flat_bundle):
    rep6 = verify_kmu_curvature(flat_bundle, 0.0, 0.0, 25)
    assert rep6.max_residual < 1e-6


def test_eigenspace_identities_after_rescale(flat_bundle):
    S2 = d_homothety(flat_bundle, 2.0)
    rep = fit_kappa_mu(S2, 25)
    # lambda halves under the a = 2 rescale
    assert abs(rep.lam - 0.5) < 1e-9
    rep6 = verify_kmu_curvature(S2, rep.kappa, rep.mu, 20)
    assert rep6.max_residual < 1e-6


def test_plus_space_coefficient_value(flat_bundle):
    # [2(1 + lam) - mu] at (kappa, mu) = (0, 0), lam = 1
    rep = fit_kappa_mu(flat_bundle, 20)
    lam = rep.lam
    assert_allclose(2.0 * (1.0 + lam) - rep.mu, 4.0, atol=1e-9)


def test_eigenspace_identities_reject_sasakian(sasakian):
    with pytest.raises(SasakianDegeneracyError):
        verify_kmu_curvature(sasakian, 1.0, 0.0, 5)


# ---------------------------------------------------------------------------
# eta-Einstein fitting
# ---------------------------------------------------------------------------


def test_sasakian_model_is_eta_einstein(sasakian):
    rep = eta_einstein_fit(sasakian, 50)
    assert rep.residual < 1e-6
    assert_allclose([rep.alpha, rep.beta], [-2.0, 4.0], atol=1e-9)
    # cross-check the fitted pair against a direct Ricci evaluation
    pts = sasakian.chart.samples(30)
    data = christoffel_batch(sasakian.g, pts)
    ric = ricci_components(data)
    ev = sasakian.eta.values(pts)
    model = rep.alpha * data.g + rep.beta * np.einsum("ni,nj->nij", ev, ev)
    assert np.max(np.abs(ric - model)) < 1e-9


def test_flat_bundle_is_eta_einstein_with_zero_coefficients(flat_bundle):
    rep = eta_einstein_fit(flat_bundle, 50)
    assert rep.residual < 1e-6
    assert_allclose([rep.alpha, rep.beta], [0.0, 0.0], atol=1e-9)


def test_rescaled_flat_bundle_is_not_eta_einstein(flat_bundle):
    rep = eta_einstein_fit(d_homothety(flat_bundle, 2.0), 50)
    assert rep.residual > 1e-3


# ---------------------------------------------------------------------------
# structure isomorphisms
# ---------------------------------------------------------------------------


def test_isomorphism_identity_map(sasakian):
    F = SmoothMap.identity(sasakian.chart)
    rep = verify_structure_isomorphism(F, sasakian, sasakian, 30)
    assert rep.max_residual == 0.0


def test_isomorphism_translation_symmetry(sasakian):
    """x and z translations preserve the R^3 model exactly."""
    chart = sasakian.chart
    x, y, z = (Coord(i, n) for i, n in enumerate(chart.coord_names))
    F = SmoothMap(chart, chart, (x + Const(0.4), y, z - Const(0.3)))
    rep = verify_structure_isomorphism(F, sasakian, sasakian, 50)
    assert rep.max_residual < 1e-12


def test_isomorphism_detects_scaling_mismatch(sasakian):
    F = SmoothMap.identity(sasakian.chart)
    S2 = ContactMetricStructure.build(
        sasakian.chart, sasakian.eta, sasakian.g.scale(Const(1.5)), sasakian.phi)
    rep = verify_structure_isomorphism(F, sasakian, S2, 20)
    assert rep.metric_residual > 1e-3
    assert rep.eta_residual < 1e-12


def test_h_norm_helper_matches_eigenvalues(flat_bundle):
    pts = flat_bundle.chart.samples(10)
    norms = h_norms(flat_bundle, pts)
    # h has eigenvalues {0, 1, -1} and the frame norm is sqrt(2)
    assert_allclose(norms, math.sqrt(2.0), atol=1e-10)

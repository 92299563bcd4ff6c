"""Contact metric structures and their pointwise verification toolkit.

A contact metric structure is a tuple (eta, g, phi) on an odd-dimensional
chart satisfying

    g(X, xi) = eta(X),
    phi^2    = -I + eta (x) xi,
    d eta(X, Y) = g(X, phi Y),

where xi is the Reeb field of eta.  The structure object derives xi
symbolically from eta alone (so the first axiom is a genuine test of g)
and derives h as half the Lie derivative of phi along xi.

The fitting routines estimate the constants of the nullity condition

    R(X, Y) xi = (kappa I + mu h)(eta(Y) X - eta(X) Y)

by least squares over samples and coordinate-frame pairs, with mu reported
as undefined whenever h vanishes identically (the condition then puts no
constraint on mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .charts import Chart
from .curvature import christoffel_batch, ricci_components, riemann_components
from .errors import (
    ChartMismatchError,
    DegenerateMetricError,
    GeometryError,
    NotContactError,
    SasakianDegeneracyError,
)
from .expressions import Const
from .fields import (
    SmoothMap,
    TensorField,
    exterior_derivative,
    inverse_matrix_exprs,
    lie_derivative,
    pullback,
    wedge,
)

__all__ = [
    "ContactMetricStructure",
    "ContactFormReport",
    "CompatibilityReport",
    "KContactReport",
    "KmuReport",
    "HEigenReport",
    "KmuCurvatureReport",
    "EtaEinsteinReport",
    "IsomorphismReport",
    "reeb_field",
    "verify_contact_form",
    "solve_reeb",
    "verify_compatibility",
    "compute_h",
    "is_K_contact",
    "fit_kappa_mu",
    "d_homothety",
    "kappa_mu_after_rescale",
    "boeckx_index",
    "h_eigendecomposition",
    "verify_kmu_curvature",
    "eta_einstein_fit",
    "verify_structure_isomorphism",
    "h_norms",
    "COMPAT_TOL",
    "H_VANISH_TOL",
    "FIT_TOL",
]

COMPAT_TOL = 1e-8
H_VANISH_TOL = 1e-8
FIT_TOL = 1e-6
REEB_TOL = 1e-9


def reeb_field(eta: TensorField) -> TensorField:
    """The Reeb vector field of a contact form, as a closed-form field.

    Solves the pointwise system (d eta + eta (x) eta) xi = eta in closed
    form via the adjugate.  The combined matrix is invertible exactly where
    eta is contact, and the solution satisfies eta(xi) = 1 and
    d eta(xi, .) = 0 there.
    """
    if (eta.r, eta.s) != (0, 1):
        raise GeometryError("reeb_field needs a 1-form")
    d = eta.chart.dim
    deta = exterior_derivative(eta)
    mat = [
        [deta.components[i, j] + eta.components[i] * eta.components[j] for j in range(d)]
        for i in range(d)
    ]
    inv = inverse_matrix_exprs(mat)
    comps = np.empty(d, dtype=object)
    for i in range(d):
        total = Const(0.0)
        for j in range(d):
            total = total + inv[i][j] * eta.components[j]
        comps[i] = total
    return TensorField(eta.chart, 1, 0, comps)


@dataclass(frozen=True)
class ContactMetricStructure:
    """Bundle (eta, g, phi) with derived Reeb field xi and tensor h."""

    chart: Chart
    eta: TensorField
    g: TensorField
    phi: TensorField
    xi: TensorField
    h: TensorField

    @staticmethod
    def build(chart: Chart, eta: TensorField, g: TensorField, phi: TensorField
              ) -> "ContactMetricStructure":
        if chart.dim % 2 == 0:
            raise GeometryError("contact structures live on odd-dimensional charts")
        if (eta.r, eta.s) != (0, 1) or (g.r, g.s) != (0, 2) or (phi.r, phi.s) != (1, 1):
            raise GeometryError("expected eta (0,1), g (0,2), phi (1,1)")
        xi = reeb_field(eta)
        h = lie_derivative(xi, phi).scale(0.5)
        return ContactMetricStructure(chart, eta, g, phi, xi, h)

    @property
    def n(self) -> int:
        """The n of dimension 2n + 1."""
        return (self.chart.dim - 1) // 2


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContactFormReport:
    min_top_coefficient: float
    samples: int
    passed: bool


@dataclass(frozen=True)
class CompatibilityReport:
    residual_reeb_pairing: float
    residual_phi_square: float
    residual_deta_pairing: float
    samples: int

    @property
    def max_residual(self) -> float:
        return max(self.residual_reeb_pairing, self.residual_phi_square,
                   self.residual_deta_pairing)

    @property
    def passed(self) -> bool:
        return self.max_residual < COMPAT_TOL


@dataclass(frozen=True)
class KContactReport:
    max_h_norm: float
    samples: int
    is_k_contact: bool


@dataclass(frozen=True)
class KmuReport:
    kappa: float
    mu: float | None
    residual: float
    sasakian_flag: bool
    lam: float | None


@dataclass(frozen=True)
class HEigenReport:
    eigenvalues: np.ndarray            # sorted descending
    vectors: np.ndarray                # rows, g-orthonormal, matched to eigenvalues
    lam: float
    plus_indices: tuple[int, ...]
    minus_indices: tuple[int, ...]
    zero_indices: tuple[int, ...]
    spectrum_residual: float           # distance of spectrum from {0, +-lam}
    orthonormality_residual: float
    xi_alignment_residual: float


@dataclass(frozen=True)
class KmuCurvatureReport:
    identity_residuals: tuple[float, ...]
    samples: int

    @property
    def max_residual(self) -> float:
        return max(self.identity_residuals)


@dataclass(frozen=True)
class EtaEinsteinReport:
    alpha: float
    beta: float
    residual: float


@dataclass(frozen=True)
class IsomorphismReport:
    eta_residual: float
    metric_residual: float
    samples: int

    @property
    def max_residual(self) -> float:
        return max(self.eta_residual, self.metric_residual)


# ---------------------------------------------------------------------------
# basic verifications
# ---------------------------------------------------------------------------


def verify_contact_form(eta: TensorField, chart: Chart, n_samples: int = 50,
                        seed: int | None = None, threshold: float = 1e-8
                        ) -> ContactFormReport:
    """Check eta ^ (d eta)^n has a nowhere-small top coefficient on samples."""
    if chart.dim % 2 == 0:
        raise GeometryError("contact forms need an odd-dimensional chart")
    n = (chart.dim - 1) // 2
    deta = exterior_derivative(eta)
    top = eta
    for _ in range(n):
        top = wedge(top, deta)
    pts = chart.samples(n_samples, seed=seed)
    idx = (Ellipsis,) + tuple(range(chart.dim))
    coeff = top.values(pts)[idx]
    min_abs = float(np.min(np.abs(coeff)))
    return ContactFormReport(min_abs, n_samples, min_abs > threshold)


def solve_reeb(eta: TensorField, chart: Chart, point: np.ndarray) -> np.ndarray:
    """Numeric Reeb vector at one point, from the stacked linear system.

    Rows are d eta(. , d_j) for every j plus the row eta(.) = 1; the
    least-squares solution of this (dim+1) x dim stack is the Reeb vector
    whenever eta is contact at the point, and the defining equations are
    re-checked to 1e-9 before returning.
    """
    p = chart.require_inside(point)
    deta = exterior_derivative(eta)
    dv = deta.values(p)        # dv[i, j] = d eta(d_i, d_j)
    ev = eta.values(p)
    rows = np.vstack([dv.T, ev[None, :]])   # d eta(xi, d_j) = xi^i dv[i, j]
    rhs = np.zeros(chart.dim + 1)
    rhs[-1] = 1.0
    sol, _, rank, _ = np.linalg.lstsq(rows, rhs, rcond=None)
    if rank < chart.dim:
        raise NotContactError("the form is not contact at this point (singular Reeb system)")
    residual = float(np.max(np.abs(rows @ sol - rhs)))
    if residual > REEB_TOL:
        raise NotContactError(
            f"Reeb defining equations unsatisfied (residual {residual:.3e}); "
            "the form is likely not contact here"
        )
    return sol


def verify_compatibility(S: ContactMetricStructure, n_samples: int = 100,
                         seed: int | None = None) -> CompatibilityReport:
    """Max residual of the three structure axioms over samples and frames."""
    pts = S.chart.samples(n_samples, seed=seed)
    d = S.chart.dim
    gv = S.g.values(pts)
    ev = S.eta.values(pts)
    xv = S.xi.values(pts)
    pv = S.phi.values(pts)           # pv[n, i, j] = phi^i_j
    dev = exterior_derivative(S.eta).values(pts)

    r1 = float(np.max(np.abs(np.einsum("nij,nj->ni", gv, xv) - ev)))
    phi2 = np.einsum("nia,naj->nij", pv, pv)
    target = -np.eye(d)[None, :, :] + np.einsum("ni,nj->nij", xv, ev)
    r2 = float(np.max(np.abs(phi2 - target)))
    pairing = np.einsum("nik,nkj->nij", gv, pv)   # g(d_i, phi d_j)
    r3 = float(np.max(np.abs(dev - pairing)))
    return CompatibilityReport(r1, r2, r3, n_samples)


def compute_h(S: ContactMetricStructure) -> TensorField:
    """The tensor h, half the Lie derivative of phi along the Reeb field."""
    return S.h


def h_norms(S: ContactMetricStructure, points: np.ndarray) -> np.ndarray:
    """Frobenius norm of h with respect to g at each sample."""
    gv = S.g.values(points)
    hv = S.h.values(points)
    ginv = np.linalg.inv(gv)
    sq = np.einsum("nik,nij,nkl,njl->n", gv, hv, hv, ginv)
    return np.sqrt(np.maximum(sq, 0.0))


def is_K_contact(S: ContactMetricStructure, n_samples: int = 100,
                 seed: int | None = None) -> KContactReport:
    pts = S.chart.samples(n_samples, seed=seed)
    norms = h_norms(S, pts)
    max_norm = float(np.max(norms))
    return KContactReport(max_norm, n_samples, max_norm < H_VANISH_TOL)


# ---------------------------------------------------------------------------
# nullity-condition fitting
# ---------------------------------------------------------------------------


def fit_kappa_mu(S: ContactMetricStructure, n_samples: int = 50,
                 seed: int | None = None) -> KmuReport:
    """Least-squares (kappa, mu) over all samples and coordinate pairs."""
    pts = S.chart.samples(n_samples, seed=seed)
    d = S.chart.dim
    data = christoffel_batch(S.g, pts)
    riem = riemann_components(data)
    xv = S.xi.values(pts)
    ev = S.eta.values(pts)
    hv = S.h.values(pts)

    lhs = np.einsum("nlkij,nk->nlij", riem, xv)
    eye = np.eye(d)
    colA = np.einsum("nj,li->nlij", ev, eye) - np.einsum("ni,lj->nlij", ev, eye)
    colB = np.einsum("nj,nli->nlij", ev, hv) - np.einsum("ni,nlj->nlij", ev, hv)

    h_max = float(np.max(h_norms(S, pts)))
    b = lhs.ravel()
    if h_max < H_VANISH_TOL:
        a = colA.ravel()[:, None]
        sol, *_ = np.linalg.lstsq(a, b, rcond=None)
        kappa = float(sol[0])
        fitted = kappa * colA
        residual = float(np.max(np.abs(lhs - fitted)))
        return KmuReport(kappa=kappa, mu=None, residual=residual,
                         sasakian_flag=True, lam=None)
    a = np.stack([colA.ravel(), colB.ravel()], axis=1)
    sol, *_ = np.linalg.lstsq(a, b, rcond=None)
    kappa, mu = float(sol[0]), float(sol[1])
    fitted = kappa * colA + mu * colB
    residual = float(np.max(np.abs(lhs - fitted)))
    lam = math.sqrt(max(1.0 - kappa, 0.0))
    return KmuReport(kappa=kappa, mu=mu, residual=residual,
                     sasakian_flag=False, lam=lam)


def kappa_mu_after_rescale(kappa: float, mu: float | None, a: float
                           ) -> tuple[float, float | None]:
    """The transformation law of the nullity constants under a D_a rescale."""
    if a <= 0:
        raise GeometryError("rescale factor must be positive")
    kp = (kappa + a * a - 1.0) / (a * a)
    mp = None if mu is None else (mu + 2.0 * a - 2.0) / a
    return kp, mp


def d_homothety(S: ContactMetricStructure, a: float) -> ContactMetricStructure:
    """The rescaled structure (a eta, a g + a(a-1) eta (x) eta, phi)."""
    if a <= 0:
        raise GeometryError("d_homothety needs a positive factor")
    eta2 = S.eta.scale(Const(float(a)))
    correction = S.eta.outer(S.eta).scale(Const(float(a * (a - 1.0))))
    g2_raw = S.g.scale(Const(float(a))) + correction
    g2 = TensorField(S.chart, 0, 2, g2_raw.components, "symmetric")
    return ContactMetricStructure.build(S.chart, eta2, g2, S.phi)


def boeckx_index(kappa: float, mu: float) -> float:
    """(1 - mu/2) / sqrt(1 - kappa); undefined at kappa >= 1."""
    if kappa >= 1.0:
        raise SasakianDegeneracyError(
            "the index is undefined for kappa >= 1 (h vanishes there)"
        )
    return (1.0 - mu / 2.0) / math.sqrt(1.0 - kappa)


# ---------------------------------------------------------------------------
# eigenstructure of h
# ---------------------------------------------------------------------------


def h_eigendecomposition(S: ContactMetricStructure, point: np.ndarray,
                         tol: float = 1e-8) -> HEigenReport:
    """g-orthonormal eigenbasis of h at a point, grouped by eigenvalue.

    Eigenvalues are sorted descending and each vector's sign is fixed by
    making its first nonzero component positive.  Raises when h vanishes at
    the point, since the grouping is meaningless there.
    """
    p = S.chart.require_inside(point)
    gmat = S.g.values(p)
    hmat = S.h.values(p)
    xi = S.xi.values(p)
    hnorm = float(h_norms(S, p[None, :])[0])
    if hnorm < H_VANISH_TOL:
        raise SasakianDegeneracyError("h vanishes here; no eigenstructure to extract")

    sym = gmat @ hmat                     # g-self-adjointness makes this symmetric
    try:
        L = np.linalg.cholesky(gmat)
    except np.linalg.LinAlgError:
        raise DegenerateMetricError(
            "metric is not positive definite at the point") from None
    Linv = np.linalg.inv(L)
    reduced = Linv @ sym @ Linv.T
    w, u = np.linalg.eigh(0.5 * (reduced + reduced.T))
    vectors = (Linv.T @ u).T              # rows, g-orthonormal

    order = np.argsort(-w)
    w = w[order]
    vectors = vectors[order]
    for i in range(vectors.shape[0]):
        nz = np.nonzero(np.abs(vectors[i]) > 1e-12)[0]
        if nz.size and vectors[i, nz[0]] < 0:
            vectors[i] = -vectors[i]

    lam = float(np.max(np.abs(w)))
    plus, minus, zero = [], [], []
    spectrum_residual = 0.0
    for i, val in enumerate(w):
        dplus, dminus, dzero = abs(val - lam), abs(val + lam), abs(val)
        best = min(dplus, dminus, dzero)
        spectrum_residual = max(spectrum_residual, best)
        if best == dzero:
            zero.append(i)
        elif best == dplus:
            plus.append(i)
        else:
            minus.append(i)

    gram = vectors @ gmat @ vectors.T
    ortho_residual = float(np.max(np.abs(gram - np.eye(len(w)))))

    xi_res = 1.0
    xin = xi / math.sqrt(float(xi @ gmat @ xi))
    for i in zero:
        v = vectors[i]
        xi_res = min(xi_res, float(min(np.max(np.abs(v - xin)), np.max(np.abs(v + xin)))))

    return HEigenReport(
        eigenvalues=w, vectors=vectors, lam=lam,
        plus_indices=tuple(plus), minus_indices=tuple(minus),
        zero_indices=tuple(zero),
        spectrum_residual=spectrum_residual,
        orthonormality_residual=ortho_residual,
        xi_alignment_residual=xi_res,
    )


# ---------------------------------------------------------------------------
# the six curvature identities of a non-Sasakian nullity structure
# ---------------------------------------------------------------------------


def verify_kmu_curvature(S: ContactMetricStructure, kappa: float, mu: float,
                         n_samples: int = 50, seed: int | None = None
                         ) -> KmuCurvatureReport:
    """Residuals of the six eigenspace curvature identities.

    Arguments run over the +lam and -lam eigenbases of h at each sample.
    Writing P for a +lam eigenvector and M for a -lam one, the identities
    compared are

      1. R(P1,P2)M    = (k-m)[g(phi P2, M) phi P1 - g(phi P1, M) phi P2]
      2. R(M1,M2)P    = (k-m)[g(phi M2, P) phi M1 - g(phi M1, P) phi M2]
      3. R(P,M1)M2    = k g(phi P, M2) phi M1 + m g(phi P, M1) phi M2
      4. R(P1,M)P2    = -k g(phi M, P2) phi P1 - m g(phi M, P1) phi P2
      5. R(P1,P2)P3   = [2(1+lam)-m][g(P2,P3) P1 - g(P1,P3) P2]
      6. R(M1,M2)M3   = [2(1-lam)-m][g(M2,M3) M1 - g(M1,M3) M2]

    with k = kappa and m = mu.
    """
    pts = S.chart.samples(n_samples, seed=seed)
    data = christoffel_batch(S.g, pts)
    riem_all = riemann_components(data)
    lam = math.sqrt(max(1.0 - kappa, 0.0))
    res = [0.0] * 6

    for idx in range(pts.shape[0]):
        p = pts[idx]
        eig = h_eigendecomposition(S, p)
        Ps = [eig.vectors[i] for i in eig.plus_indices]
        Ms = [eig.vectors[i] for i in eig.minus_indices]
        gmat = data.g[idx]
        phimat = S.phi.values(p)
        riem = riem_all[idx]

        def R(X, Y, Z):
            return np.einsum("lkij,k,i,j->l", riem, Z, X, Y)

        def gp(X, Y):
            return float(X @ gmat @ Y)

        def ph(X):
            return phimat @ X

        for P1 in Ps:
            for P2 in Ps:
                for M in Ms:
                    lhs = R(P1, P2, M)
                    rhs = (kappa - mu) * (gp(ph(P2), M) * ph(P1) - gp(ph(P1), M) * ph(P2))
                    res[0] = max(res[0], float(np.max(np.abs(lhs - rhs))))
        for M1 in Ms:
            for M2 in Ms:
                for P in Ps:
                    lhs = R(M1, M2, P)
                    rhs = (kappa - mu) * (gp(ph(M2), P) * ph(M1) - gp(ph(M1), P) * ph(M2))
                    res[1] = max(res[1], float(np.max(np.abs(lhs - rhs))))
        for P in Ps:
            for M1 in Ms:
                for M2 in Ms:
                    lhs = R(P, M1, M2)
                    rhs = kappa * gp(ph(P), M2) * ph(M1) + mu * gp(ph(P), M1) * ph(M2)
                    res[2] = max(res[2], float(np.max(np.abs(lhs - rhs))))
        for P1 in Ps:
            for M in Ms:
                for P2 in Ps:
                    lhs = R(P1, M, P2)
                    rhs = -kappa * gp(ph(M), P2) * ph(P1) - mu * gp(ph(M), P1) * ph(P2)
                    res[3] = max(res[3], float(np.max(np.abs(lhs - rhs))))
        c5 = 2.0 * (1.0 + lam) - mu
        for P1 in Ps:
            for P2 in Ps:
                for P3 in Ps:
                    lhs = R(P1, P2, P3)
                    rhs = c5 * (gp(P2, P3) * P1 - gp(P1, P3) * P2)
                    res[4] = max(res[4], float(np.max(np.abs(lhs - rhs))))
        c6 = 2.0 * (1.0 - lam) - mu
        for M1 in Ms:
            for M2 in Ms:
                for M3 in Ms:
                    lhs = R(M1, M2, M3)
                    rhs = c6 * (gp(M2, M3) * M1 - gp(M1, M3) * M2)
                    res[5] = max(res[5], float(np.max(np.abs(lhs - rhs))))

    return KmuCurvatureReport(tuple(res), n_samples)


# ---------------------------------------------------------------------------
# eta-Einstein fitting and structure isomorphism
# ---------------------------------------------------------------------------


def eta_einstein_fit(S: ContactMetricStructure, n_samples: int = 50,
                     seed: int | None = None) -> EtaEinsteinReport:
    """Least-squares (alpha, beta) in Ric = alpha g + beta eta (x) eta."""
    pts = S.chart.samples(n_samples, seed=seed)
    data = christoffel_batch(S.g, pts)
    ric = ricci_components(data)
    gv = data.g
    ev = S.eta.values(pts)
    outer = np.einsum("ni,nj->nij", ev, ev)
    a = np.stack([gv.ravel(), outer.ravel()], axis=1)
    sol, *_ = np.linalg.lstsq(a, ric.ravel(), rcond=None)
    alpha, beta = float(sol[0]), float(sol[1])
    residual = float(np.max(np.abs(ric - alpha * gv - beta * outer)))
    return EtaEinsteinReport(alpha, beta, residual)


def verify_structure_isomorphism(F: SmoothMap, S1: ContactMetricStructure,
                                 S2: ContactMetricStructure, n_samples: int = 50,
                                 seed: int | None = None) -> IsomorphismReport:
    """Residuals of F* eta2 = eta1 and F* g2 = g1 over source samples."""
    if F.source != S1.chart or F.target != S2.chart:
        raise ChartMismatchError("map does not connect the two structure charts")
    pts = S1.chart.samples(n_samples, seed=seed)
    eta_pull = pullback(F, S2.eta)
    g_pull = pullback(F, S2.g)
    r_eta = float(np.max(np.abs(eta_pull.values(pts) - S1.eta.values(pts))))
    r_g = float(np.max(np.abs(g_pull.values(pts) - S1.g.values(pts))))
    return IsomorphismReport(r_eta, r_g, n_samples)

"""Scalar and tensor fields on a chart, and the multilinear calculus.

Components are expression trees (:mod:`metsymp.expressions`); every numeric
derivative is taken by evaluating those trees on second-order jets.  The
first-order operators below (exterior derivative, bracket, Lie derivative,
pullback) build their results symbolically, so derived fields remain fields
and can be differentiated again without loss.

Convention.  Forms are stored as fully antisymmetric component arrays and
evaluated by plain contraction, and both the wedge product and the exterior
derivative carry the alternating-average normalization:

    (a ^ b) = Alt(a x b),
    (d a)_{i0..ik} = (1/(k+1)) * sum_m (-1)^m  d_{i_m} a_{i0..skip m..ik}.

Under this normalization a contact metric structure satisfies
``d eta(X, Y) = g(X, phi Y)`` with the classical unit constants, which is
what every curvature identity verified by this package expects.  The
package-wide consequences of the choice (for the interior-product form of
the Cartan identity, and for which rescaling of a radial field satisfies
the expansion property of a symplectic form) are exercised explicitly in
the test suite.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .charts import Chart
from .errors import ChartMismatchError, RankError, SingularMatrixError
from .expressions import Const, Coord, Expr, ZERO, as_expr
from .jets import Jet2, coordinate_jets

__all__ = [
    "ScalarField",
    "TensorField",
    "SmoothMap",
    "jet_eval",
    "exterior_derivative",
    "wedge",
    "interior_product",
    "lie_bracket",
    "lie_derivative",
    "pullback",
    "contract",
    "raise_index",
    "lower_index",
    "inverse_metric",
    "pointwise_solve",
]


# ---------------------------------------------------------------------------
# scalar fields
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ScalarField:
    """A scalar component function on a chart."""

    chart: Chart
    expr: Expr

    def jet(self, point: np.ndarray) -> Jet2:
        """Second-order jet at a single point of the chart domain."""
        p = self.chart.require_inside(point)
        return self.expr.evaluate(coordinate_jets(p), {})

    def jets(self, points: np.ndarray) -> Jet2:
        """Batched jet over ``(n, dim)`` sample points (no domain check)."""
        return self.expr.evaluate(coordinate_jets(np.asarray(points, dtype=float)), {})

    def values(self, points: np.ndarray) -> np.ndarray:
        return self.jets(points).value

    def diff(self, i: int) -> "ScalarField":
        return ScalarField(self.chart, self.expr.diff(i))


def jet_eval(f: ScalarField, point: np.ndarray) -> Jet2:
    """Taylor data of ``f`` at ``point`` to order two, by jet arithmetic."""
    return f.jet(point)


def coordinate_field(chart: Chart, i: int) -> ScalarField:
    """The i-th coordinate function as a scalar field."""
    return ScalarField(chart, Coord(i, chart.coord_names[i]))


# ---------------------------------------------------------------------------
# tensor fields
# ---------------------------------------------------------------------------


def _expr_array(shape: tuple[int, ...]) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    arr[...] = ZERO
    return arr


def _as_expr_array(components, shape: tuple[int, ...]) -> np.ndarray:
    arr = np.empty(shape, dtype=object)
    src = np.asarray(components, dtype=object)
    if src.shape != shape:
        raise RankError(f"component array has shape {src.shape}, expected {shape}")
    for idx in np.ndindex(shape):
        arr[idx] = as_expr(src[idx])
    return arr


def _symmetrize(arr: np.ndarray, sign: int) -> np.ndarray:
    """Canonical (anti)symmetrization of a pure covariant component array."""
    k = arr.ndim
    if k < 2:
        return arr
    out = _expr_array(arr.shape)
    perms = list(itertools.permutations(range(k)))
    factor = Const(1.0 / math.factorial(k))
    for idx in np.ndindex(arr.shape):
        total = ZERO
        for perm in perms:
            s = 1.0
            if sign < 0:
                s = _perm_sign(perm)
            term = arr[tuple(idx[p] for p in perm)]
            total = total + Const(s) * term if s != 1.0 else total + term
        out[idx] = factor * total
    return out


def _perm_sign(perm: Sequence[int]) -> float:
    sign = 1.0
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        length = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class TensorField:
    """Type (r, s) tensor field with expression components.

    Component array layout: the ``r`` contravariant slots come first, then
    the ``s`` covariant slots.  A declared ``sym`` tag ("symmetric" or
    "antisymmetric", applying to the covariant slots of a purely covariant
    tensor) is enforced structurally: components are canonicalized on
    construction.
    """

    __slots__ = ("chart", "r", "s", "components", "sym")

    def __init__(self, chart: Chart, r: int, s: int, components, sym: str = "none"):
        if r < 0 or s < 0:
            raise RankError("tensor ranks must be nonnegative")
        if sym not in ("none", "symmetric", "antisymmetric"):
            raise RankError(f"unknown symmetry tag {sym!r}")
        shape = (chart.dim,) * (r + s)
        arr = _as_expr_array(components, shape)
        if sym != "none":
            if r != 0 or s < 2:
                raise RankError("symmetry tags apply to purely covariant rank >= 2 tensors")
            arr = _symmetrize(arr, -1 if sym == "antisymmetric" else 1)
        arr.setflags(write=False)
        self.chart = chart
        self.r = r
        self.s = s
        self.components = arr
        self.sym = sym

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_scalar(chart: Chart, expr) -> "TensorField":
        return TensorField(chart, 0, 0, np.asarray(as_expr(expr), dtype=object).reshape(()))

    @staticmethod
    def vector(chart: Chart, components) -> "TensorField":
        return TensorField(chart, 1, 0, components)

    @staticmethod
    def covector(chart: Chart, components) -> "TensorField":
        return TensorField(chart, 0, 1, components)

    @staticmethod
    def coordinate_vector(chart: Chart, i: int) -> "TensorField":
        comps = _expr_array((chart.dim,))
        comps[i] = Const(1.0)
        return TensorField(chart, 1, 0, comps)

    @staticmethod
    def zero(chart: Chart, r: int, s: int, sym: str = "none") -> "TensorField":
        return TensorField(chart, r, s, _expr_array((chart.dim,) * (r + s)), sym)

    # -- algebra -------------------------------------------------------------

    def _check_same_type(self, other: "TensorField"):
        if self.chart is not other.chart and self.chart != other.chart:
            raise ChartMismatchError("tensor fields live on different charts")
        if (self.r, self.s) != (other.r, other.s):
            raise RankError(f"rank mismatch: ({self.r},{self.s}) vs ({other.r},{other.s})")

    def __add__(self, other: "TensorField") -> "TensorField":
        self._check_same_type(other)
        out = _expr_array(self.components.shape)
        for idx in np.ndindex(out.shape):
            out[idx] = self.components[idx] + other.components[idx]
        sym = self.sym if self.sym == other.sym else "none"
        return TensorField(self.chart, self.r, self.s, out, sym)

    def __sub__(self, other: "TensorField") -> "TensorField":
        return self + other.scale(-1.0)

    def scale(self, factor) -> "TensorField":
        f = as_expr(factor)
        out = _expr_array(self.components.shape)
        for idx in np.ndindex(out.shape):
            out[idx] = f * self.components[idx]
        return TensorField(self.chart, self.r, self.s, out, self.sym)

    def outer(self, other: "TensorField") -> "TensorField":
        """Tensor product; contravariant slots of both factors come first."""
        if self.chart != other.chart:
            raise ChartMismatchError("tensor fields live on different charts")
        r, s = self.r + other.r, self.s + other.s
        d = self.chart.dim
        out = _expr_array((d,) * (r + s))
        for idx_a in np.ndindex(self.components.shape):
            ea = self.components[idx_a]
            if ea.is_zero():
                continue
            a_contra, a_cov = idx_a[: self.r], idx_a[self.r:]
            for idx_b in np.ndindex(other.components.shape):
                eb = other.components[idx_b]
                if eb.is_zero():
                    continue
                b_contra, b_cov = idx_b[: other.r], idx_b[other.r:]
                out[a_contra + b_contra + a_cov + b_cov] = ea * eb
        return TensorField(self.chart, r, s, out)

    # -- evaluation ----------------------------------------------------------

    def values(self, points: np.ndarray) -> np.ndarray:
        """Component values, shape ``batch + (dim,)*(r+s)``."""
        pts = np.asarray(points, dtype=float)
        jets = coordinate_jets(pts)
        batch = pts.shape[:-1]
        memo: dict = {}
        out = np.zeros(batch + self.components.shape)
        for idx in np.ndindex(self.components.shape):
            expr = self.components[idx]
            if expr.is_zero():
                continue
            out[(Ellipsis,) + idx] = expr.evaluate(jets, memo).value
        return out

    def jet_blocks(self, points: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Values, first and second partials of all components.

        Shapes: ``batch + comp``, ``batch + comp + (d,)`` and
        ``batch + comp + (d, d)`` where ``comp = (dim,)*(r+s)``.
        """
        pts = np.asarray(points, dtype=float)
        jets = coordinate_jets(pts)
        batch = pts.shape[:-1]
        d = self.chart.dim
        comp = self.components.shape
        vals = np.zeros(batch + comp)
        grads = np.zeros(batch + comp + (d,))
        hesses = np.zeros(batch + comp + (d, d))
        memo: dict = {}
        for idx in np.ndindex(comp):
            expr = self.components[idx]
            if expr.is_zero():
                continue
            j = expr.evaluate(jets, memo)
            sel = (Ellipsis,) + idx
            vals[sel] = j.value
            grads[sel + (slice(None),)] = j.grad
            hesses[sel + (slice(None), slice(None))] = j.hess
        return vals, grads, hesses

    def __repr__(self):
        return f"TensorField(r={self.r}, s={self.s}, chart={self.chart.coord_names})"


# ---------------------------------------------------------------------------
# smooth maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmoothMap:
    """A map between charts, one coordinate expression per target slot."""

    source: Chart
    target: Chart
    exprs: tuple[Expr, ...]

    def __post_init__(self):
        if len(self.exprs) != self.target.dim:
            raise RankError(
                f"map provides {len(self.exprs)} expressions for a "
                f"{self.target.dim}-dimensional target"
            )
        object.__setattr__(self, "exprs", tuple(as_expr(e) for e in self.exprs))

    def __call__(self, points: np.ndarray) -> np.ndarray:
        jets = coordinate_jets(np.asarray(points, dtype=float))
        memo: dict = {}
        cols = [e.evaluate(jets, memo).value for e in self.exprs]
        return np.stack(np.broadcast_arrays(*cols), axis=-1)

    def compose(self, inner: "SmoothMap") -> "SmoothMap":
        """The composite self after inner (inner runs first)."""
        if inner.target != self.source:
            raise ChartMismatchError("charts do not line up for composition")
        return SmoothMap(inner.source, self.target,
                         tuple(e.subs(inner.exprs) for e in self.exprs))

    @staticmethod
    def identity(chart: Chart) -> "SmoothMap":
        return SmoothMap(chart, chart,
                         tuple(Coord(i, chart.coord_names[i]) for i in range(chart.dim)))


# ---------------------------------------------------------------------------
# exterior calculus
# ---------------------------------------------------------------------------


def _require_form(alpha: TensorField, what: str = "argument"):
    if alpha.r != 0:
        raise RankError(f"{what} must be purely covariant, got r={alpha.r}")
    if alpha.s >= 2 and alpha.sym != "antisymmetric":
        raise RankError(f"{what} must carry the antisymmetric tag")


def exterior_derivative(alpha: TensorField) -> TensorField:
    """Exterior derivative of a k-form, alternating-average normalization."""
    _require_form(alpha, "exterior derivative argument")
    k = alpha.s
    d = alpha.chart.dim
    if k >= d:
        raise RankError(f"cannot take d of a {k}-form on a {d}-dimensional chart")
    out = _expr_array((d,) * (k + 1))
    inv = Const(1.0 / (k + 1))
    for idx in np.ndindex(out.shape):
        total = ZERO
        for m in range(k + 1):
            rest = idx[:m] + idx[m + 1:]
            term = alpha.components[rest].diff(idx[m]) if k > 0 else alpha.components[()].diff(idx[m])
            total = total + term if m % 2 == 0 else total - term
        out[idx] = inv * total
    sym = "antisymmetric" if k + 1 >= 2 else "none"
    return TensorField(alpha.chart, 0, k + 1, out, sym)


def wedge(alpha: TensorField, beta: TensorField) -> TensorField:
    """Wedge product Alt(alpha x beta)."""
    _require_form(alpha, "wedge factor")
    _require_form(beta, "wedge factor")
    if alpha.chart != beta.chart:
        raise ChartMismatchError("wedge factors live on different charts")
    k, l = alpha.s, beta.s
    d = alpha.chart.dim
    if k + l > d:
        raise RankError(f"wedge of a {k}-form and a {l}-form overflows dimension {d}")
    raw = alpha.outer(beta)
    if k + l < 2:
        return TensorField(alpha.chart, 0, k + l, raw.components)
    comps = _symmetrize(raw.components, -1)
    return TensorField(alpha.chart, 0, k + l, comps, "antisymmetric")


def interior_product(X: TensorField, alpha: TensorField) -> TensorField:
    """Contraction of a vector field into the first slot of a form."""
    if X.r != 1 or X.s != 0:
        raise RankError("interior product needs a vector field in the first argument")
    _require_form(alpha, "interior product form")
    if X.chart != alpha.chart:
        raise ChartMismatchError("vector and form live on different charts")
    if alpha.s == 0:
        raise RankError("cannot contract a vector into a 0-form")
    d = alpha.chart.dim
    k = alpha.s
    out = _expr_array((d,) * (k - 1))
    for idx in np.ndindex(out.shape):
        total = ZERO
        for a in range(d):
            total = total + X.components[a] * alpha.components[(a,) + idx]
        out[idx] = total
    sym = "antisymmetric" if k - 1 >= 2 else "none"
    return TensorField(alpha.chart, 0, k - 1, out, sym)


# ---------------------------------------------------------------------------
# Lie calculus
# ---------------------------------------------------------------------------


def lie_bracket(X: TensorField, Y: TensorField) -> TensorField:
    """[X, Y]^k = X^i d_i Y^k - Y^i d_i X^k."""
    for V in (X, Y):
        if V.r != 1 or V.s != 0:
            raise RankError("lie_bracket needs two vector fields")
    if X.chart != Y.chart:
        raise ChartMismatchError("bracket arguments live on different charts")
    d = X.chart.dim
    out = _expr_array((d,))
    for k in range(d):
        total = ZERO
        for i in range(d):
            total = total + X.components[i] * Y.components[k].diff(i)
            total = total - Y.components[i] * X.components[k].diff(i)
        out[k] = total
    return TensorField(X.chart, 1, 0, out)


def lie_derivative(X: TensorField, T: TensorField) -> TensorField:
    """Lie derivative of any (r, s) tensor field along a vector field."""
    if X.r != 1 or X.s != 0:
        raise RankError("lie_derivative direction must be a vector field")
    if X.chart != T.chart:
        raise ChartMismatchError("direction and tensor live on different charts")
    d = T.chart.dim
    shape = T.components.shape
    out = _expr_array(shape)
    for idx in np.ndindex(shape):
        total = ZERO
        for a in range(d):
            total = total + X.components[a] * T.components[idx].diff(a)
        # contravariant slots pick up -dX corrections
        for p in range(T.r):
            for a in range(d):
                swapped = idx[:p] + (a,) + idx[p + 1:]
                total = total - X.components[idx[p]].diff(a) * T.components[swapped]
        # covariant slots pick up +dX corrections
        for q in range(T.s):
            slot = T.r + q
            for a in range(d):
                swapped = idx[:slot] + (a,) + idx[slot + 1:]
                total = total + X.components[a].diff(idx[slot]) * T.components[swapped]
        out[idx] = total
    return TensorField(T.chart, T.r, T.s, out, T.sym)


# ---------------------------------------------------------------------------
# pullback
# ---------------------------------------------------------------------------


def pullback(F: SmoothMap, T: TensorField) -> TensorField:
    """Pullback of a purely covariant tensor field along a smooth map."""
    if T.r != 0:
        raise RankError("only purely covariant tensors can be pulled back")
    if T.chart != F.target:
        raise ChartMismatchError("tensor does not live on the map's target chart")
    s = T.s
    d_src = F.source.dim
    d_tgt = F.target.dim
    jac = [[F.exprs[j].diff(i) for j in range(d_tgt)] for i in range(d_src)]
    out = _expr_array((d_src,) * s)
    for idx in np.ndindex(out.shape):
        total = ZERO
        for jdx in np.ndindex(T.components.shape):
            comp = T.components[jdx]
            if comp.is_zero():
                continue
            factor = comp.subs(F.exprs)
            dead = False
            for slot in range(s):
                entry = jac[idx[slot]][jdx[slot]]
                if entry.is_zero():
                    dead = True
                    break
                factor = factor * entry
            if not dead:
                total = total + factor
        out[idx] = total
    return TensorField(F.source, 0, s, out, T.sym)


# ---------------------------------------------------------------------------
# contractions, index shuffling, pointwise linear algebra
# ---------------------------------------------------------------------------


def contract(T: TensorField, contra_slot: int, cov_slot: int) -> TensorField:
    """Trace one contravariant slot against one covariant slot."""
    if not (0 <= contra_slot < T.r):
        raise RankError(f"no contravariant slot {contra_slot} on a ({T.r},{T.s}) tensor")
    if not (0 <= cov_slot < T.s):
        raise RankError(f"no covariant slot {cov_slot} on a ({T.r},{T.s}) tensor")
    d = T.chart.dim
    axis_a = contra_slot
    axis_b = T.r + cov_slot
    shape = (d,) * (T.r + T.s - 2)
    out = _expr_array(shape)
    for idx in np.ndindex(shape):
        total = ZERO
        for a in range(d):
            full = list(idx)
            full.insert(axis_a, a)
            full.insert(axis_b, a)
            total = total + T.components[tuple(full)]
        out[idx] = total
    return TensorField(T.chart, T.r - 1, T.s - 1, out)


def _minor(matrix: list[list[Expr]], row: int, col: int) -> list[list[Expr]]:
    return [
        [matrix[i][j] for j in range(len(matrix)) if j != col]
        for i in range(len(matrix)) if i != row
    ]


def det_expr(matrix: list[list[Expr]]) -> Expr:
    n = len(matrix)
    if n == 1:
        return matrix[0][0]
    total = ZERO
    for j in range(n):
        entry = matrix[0][j]
        if entry.is_zero():
            continue
        cof = det_expr(_minor(matrix, 0, j))
        term = entry * cof
        total = total + term if j % 2 == 0 else total - term
    return total


def inverse_matrix_exprs(matrix: list[list[Expr]]) -> list[list[Expr]]:
    """Symbolic inverse via the adjugate; fine for the dimensions used here."""
    n = len(matrix)
    det = det_expr(matrix)
    inv: list[list[Expr]] = [[ZERO] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            cof = det_expr(_minor(matrix, j, i))
            signed = cof if (i + j) % 2 == 0 else -cof
            inv[i][j] = signed / det
    return inv


# keyed by object identity; the key object is retained alongside the value
# so a recycled id can never alias a dead metric's cache slot
_INVERSE_CACHE: dict[int, tuple["TensorField", "TensorField"]] = {}


def inverse_metric(g: TensorField) -> TensorField:
    """Inverse metric as a (2, 0) tensor field (cached per field object)."""
    if (g.r, g.s) != (0, 2):
        raise RankError("inverse_metric needs a (0,2) tensor field")
    cached = _INVERSE_CACHE.get(id(g))
    if cached is not None and cached[0] is g:
        return cached[1]
    d = g.chart.dim
    mat = [[g.components[i, j] for j in range(d)] for i in range(d)]
    inv = inverse_matrix_exprs(mat)
    out = _expr_array((d, d))
    for i in range(d):
        for j in range(d):
            out[i, j] = inv[i][j]
    result = TensorField(g.chart, 2, 0, out)
    _INVERSE_CACHE[id(g)] = (g, result)
    return result


def raise_index(g: TensorField, T: TensorField, cov_slot: int) -> TensorField:
    """Convert one covariant slot to contravariant using the metric."""
    ginv = inverse_metric(g)
    if not (0 <= cov_slot < T.s):
        raise RankError(f"no covariant slot {cov_slot}")
    d = T.chart.dim
    shape = T.components.shape
    axis = T.r + cov_slot
    out_shape = (d,) * (T.r + 1 + T.s - 1)
    out = _expr_array(out_shape)
    for idx in np.ndindex(out_shape):
        new_contra = idx[: T.r + 1]
        new_cov = idx[T.r + 1:]
        raised = new_contra[-1]
        total = ZERO
        for a in range(d):
            old_idx = list(new_contra[:-1]) + list(new_cov)
            old_idx.insert(axis, a)
            comp = T.components[tuple(old_idx)]
            if comp.is_zero():
                continue
            total = total + ginv.components[raised, a] * comp
        out[idx] = total
    return TensorField(T.chart, T.r + 1, T.s - 1, out)


def lower_index(g: TensorField, T: TensorField, contra_slot: int) -> TensorField:
    """Convert one contravariant slot to covariant using the metric."""
    if (g.r, g.s) != (0, 2):
        raise RankError("lower_index needs a (0,2) metric")
    if not (0 <= contra_slot < T.r):
        raise RankError(f"no contravariant slot {contra_slot}")
    d = T.chart.dim
    out_shape = (d,) * (T.r - 1 + T.s + 1)
    out = _expr_array(out_shape)
    for idx in np.ndindex(out_shape):
        new_contra = idx[: T.r - 1]
        new_cov = idx[T.r - 1:]
        lowered = new_cov[0]
        total = ZERO
        for a in range(d):
            old_idx = list(new_contra) + list(new_cov[1:])
            old_idx.insert(contra_slot, a)
            comp = T.components[tuple(old_idx)]
            if comp.is_zero():
                continue
            total = total + g.components[lowered, a] * comp
        out[idx] = total
    return TensorField(T.chart, T.r - 1, T.s + 1, out)


def pointwise_solve(A: TensorField, b: TensorField, point: np.ndarray,
                    cond_limit: float = 1e12) -> np.ndarray:
    """Solve A(p) x = b(p) exactly, refusing ill-conditioned systems."""
    if (A.r, A.s) not in ((1, 1), (0, 2), (2, 0)):
        raise RankError("pointwise_solve needs a square matrix field")
    if b.r + b.s != 1:
        raise RankError("pointwise_solve needs a vector or covector right-hand side")
    p = np.asarray(point, dtype=float)
    amat = A.values(p)
    bvec = b.values(p)
    cond = np.linalg.cond(amat)
    if not np.isfinite(cond) or cond > cond_limit:
        raise SingularMatrixError(f"matrix is singular at the point (cond estimate {cond:.3e})")
    return np.linalg.solve(amat, bvec)

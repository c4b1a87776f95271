"""Epipolar cubic curves, six-point invariants, and the k=7 certificate.

Two independent constructions of the right/left epipolar curves of six
point pairs are provided: the determinant of the stacked nullspace images
(`kappa_cubic`) and the hexahedral combination of the classical six-point
scalar invariants and covariant cubics (`hexahedral_cubic`).  On generic
input both cut the same curve, which is the basis of the 14-value
rank-deficiency certificate for seven pairs.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from . import exact as ex
from .exact import as_fraction
from .forms import (
    cubic_eval,
    cubic_from_terms,
    det_of_linear_columns,
    form_is_zero,
    linear_triple_product,
)
from .projective import (
    PROJ_TOL,
    canonical,
    coerce,
    is_exact,
    pfloat,
    proportional,
    rank_exact,
    rank_numeric,
)
from .exact import cross3
from .zmatrix import PointPairConfig

__all__ = [
    "CubicCurve",
    "CobleData",
    "CURVE_TOL",
    "coble_data",
    "hexahedral_cubic",
    "kappa_cubic",
    "restricted_map_image",
    "third_intersection",
]

CURVE_TOL = 1e-7   # membership: |C(p)| <= tol * ||C|| * ||p||^3

# Index patterns of the five summands of each scalar invariant / covariant
# cubic of six plane points.  A scalar term ((i,j),(k,l),(r,s)) stands for
# [ijr][kls] - [ijs][klr]; the matching cubic term is [iju][klu][rsu].
# Indices are 1-based.
COBLE_TERMS = {
    "a": (((2, 5), (1, 3), (4, 6)), ((5, 1), (4, 2), (3, 6)), ((1, 4), (3, 5), (2, 6)),
          ((4, 3), (2, 1), (5, 6)), ((3, 2), (5, 4), (1, 6))),
    "b": (((5, 3), (1, 2), (4, 6)), ((1, 4), (2, 3), (5, 6)), ((2, 5), (3, 4), (1, 6)),
          ((3, 1), (4, 5), (2, 6)), ((4, 2), (5, 1), (3, 6))),
    "c": (((5, 3), (4, 1), (2, 6)), ((3, 4), (2, 5), (1, 6)), ((4, 2), (1, 3), (5, 6)),
          ((2, 1), (5, 4), (3, 6)), ((1, 5), (3, 2), (4, 6))),
    "d": (((4, 5), (3, 1), (2, 6)), ((5, 3), (2, 4), (1, 6)), ((4, 1), (2, 5), (3, 6)),
          ((3, 2), (1, 5), (4, 6)), ((2, 1), (4, 3), (5, 6))),
    "e": (((3, 1), (2, 4), (5, 6)), ((1, 2), (5, 3), (4, 6)), ((2, 5), (4, 1), (3, 6)),
          ((5, 4), (3, 2), (1, 6)), ((4, 3), (1, 5), (2, 6))),
    "f": (((4, 2), (3, 5), (1, 6)), ((2, 3), (1, 4), (5, 6)), ((3, 1), (5, 2), (4, 6)),
          ((1, 5), (4, 3), (2, 6)), ((5, 4), (2, 1), (3, 6))),
}
COBLE_LETTERS = "abcdef"


@dataclass(frozen=True)
class CubicCurve:
    """A plane cubic as a 10-coefficient vector up to scale."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = coerce(self.coeffs)
        if c.shape != (10,):
            raise ValueError("cubic curves need 10 coefficients")
        object.__setattr__(self, "coeffs", c)

    @property
    def exact(self) -> bool:
        return is_exact(self.coeffs)

    def is_zero(self, tol: float = 0.0) -> bool:
        return form_is_zero(self.coeffs, tol)

    def __call__(self, u):
        return cubic_eval(self.coeffs, coerce(u))

    def contains(self, u, tol: float = CURVE_TOL) -> bool:
        u = coerce(u)
        if self.exact and is_exact(u):
            return self(u) == 0
        cf = pfloat(self.coeffs)
        uf = pfloat(u)
        val = cubic_eval(cf, uf)
        bound = tol * np.linalg.norm(cf) * np.linalg.norm(uf) ** 3
        return abs(val) <= bound

    def proportional_to(self, other, tol: float = 0.0) -> bool:
        other = other.coeffs if isinstance(other, CubicCurve) else other
        if self.exact and is_exact(coerce(other)) and tol == 0.0:
            return proportional(self.coeffs, other)
        return proportional(pfloat(self.coeffs), pfloat(other),
                            tol if tol > 0 else PROJ_TOL)

    def normalized(self) -> "CubicCurve":
        return CubicCurve(canonical(self.coeffs))

    def as_float(self) -> "CubicCurve":
        return CubicCurve(pfloat(self.coeffs, complex_=False)) if self.exact else self


def _brackets(points, exact: bool) -> dict:
    """All determinants det[u_i u_j u_k] of six points, sorted 1-based keys."""
    out = {}
    for i, j, k in itertools.combinations(range(1, 7), 3):
        m = [points[i - 1], points[j - 1], points[k - 1]]
        if exact:
            out[(i, j, k)] = ex.bareiss_det(np.array([list(r) for r in m], dtype=object).T)
        else:
            arr = np.array([pfloat(r) if np.iscomplexobj(np.asarray(r)) else
                            np.asarray(r, dtype=float) for r in m])
            det = np.linalg.det(arr.T.astype(complex))
            out[(i, j, k)] = complex(det) if np.iscomplexobj(arr) else float(det.real)
    return out


def _bracket(table, i, j, k):
    """Signed lookup of det[u_i u_j u_k] from the sorted-key table."""
    trip = (i, j, k)
    order = tuple(sorted(trip))
    val = table[order]
    perm = [order.index(t) for t in trip]
    inversions = sum(1 for a in range(3) for b in range(a + 1, 3)
                     if perm[a] > perm[b])
    return -val if inversions % 2 else val


@dataclass(frozen=True)
class CobleData:
    """Scalar invariants and covariant cubics of six plane points."""

    scalars: dict
    cubics: dict   # letter -> CubicCurve
    points: tuple
    exact: bool

    def scalar_vector(self) -> np.ndarray:
        vals = [self.scalars[c] for c in COBLE_LETTERS]
        return np.array(vals, dtype=object) if self.exact else np.array(vals, dtype=float)


def coble_data(points) -> CobleData:
    """The six scalar invariants and six covariant cubics of six points.

    The cubics all vanish on the input points; repeated points degenerate
    the brackets and are reported with a warning (values still computed).
    """
    points = [coerce(p) for p in points]
    if len(points) != 6:
        raise ValueError("exactly six points required")
    exact = all(is_exact(p) for p in points)
    for i, j in itertools.combinations(range(6), 2):
        same = proportional(points[i], points[j]) if exact \
            else proportional(pfloat(points[i]), pfloat(points[j]), PROJ_TOL)
        if same:
            warnings.warn("repeated points: bracket invariants are degenerate",
                          stacklevel=2)
            break
    table = _brackets(points, exact)
    scalars, cubics = {}, {}
    for letter, pattern in COBLE_TERMS.items():
        sval = 0
        terms: dict = {}
        for (i, j), (k, l), (r, s) in pattern:
            sval += (_bracket(table, i, j, r) * _bracket(table, k, l, s)
                     - _bracket(table, i, j, s) * _bracket(table, k, l, r))
            lf1 = cross3(points[i - 1], points[j - 1])
            lf2 = cross3(points[k - 1], points[l - 1])
            lf3 = cross3(points[r - 1], points[s - 1])
            for key, c in linear_triple_product(lf1, lf2, lf3).items():
                terms[key] = terms.get(key, 0) + c
        scalars[letter] = sval
        cubics[letter] = CubicCurve(cubic_from_terms(terms, exact=exact))
    return CobleData(scalars=scalars, cubics=cubics, points=tuple(points), exact=exact)


def hexahedral_cubic(cfg: PointPairConfig, side: str) -> CubicCurve:
    """Epipolar cubic of six pairs from the invariant-weighted covariants.

    side "x": the x-side covariant cubics weighted by the y-side scalars,
    and symmetrically for side "y".  Raises when the combination collapses
    to the zero polynomial.
    """
    if cfg.k != 6:
        raise ValueError("hexahedral construction needs exactly 6 pairs")
    if side not in ("x", "y"):
        raise ValueError("side must be 'x' or 'y'")
    own = coble_data(cfg.xs() if side == "x" else cfg.ys())
    other = coble_data(cfg.ys() if side == "x" else cfg.xs())
    total = None
    for letter in COBLE_LETTERS:
        term = other.scalars[letter] * own.cubics[letter].coeffs
        total = term if total is None else total + term
    curve = CubicCurve(total)
    if curve.is_zero():
        raise ValueError("configuration degenerate for hexahedral form")
    return curve


def kappa_cubic(basis, side: str) -> CubicCurve:
    """Epipolar cubic from a nullspace basis M1, M2, M3.

    side "x": det[M1 x | M2 x | M3 x] = 0; side "y" uses the matrix with
    rows y^T M_j (equivalently columns M_j^T y).  Raises when the
    determinant vanishes identically, which happens exactly when the
    spanned plane meets the rank-one locus badly.
    """
    if len(basis) != 3:
        raise ValueError("kappa construction needs a 3-dimensional nullspace")
    basis = [coerce(b) for b in basis]
    if side == "x":
        cols = [[b[i, :] for i in range(3)] for b in basis]
    elif side == "y":
        cols = [[b[:, i] for i in range(3)] for b in basis]
    else:
        raise ValueError("side must be 'x' or 'y'")
    curve = CubicCurve(det_of_linear_columns(cols))
    if curve.is_zero():
        raise ValueError("plane meets the rank-one locus: determinant is zero")
    return curve


def restricted_map_image(basis, x):
    """Image of a curve point under the map induced by a nullspace plane.

    For x on the x-side curve, [M1 x | M2 x | M3 x] has rank two and the
    unique y with y^T M_j x = 0 for all j spans its left kernel.
    """
    basis = [coerce(b) for b in basis]
    x = coerce(x)
    cols = [b @ x for b in basis]
    exact = all(is_exact(c) for c in cols)
    if exact:
        stacked = np.array([list(c) for c in cols], dtype=object).T
        r = rank_exact(stacked)
    else:
        stacked = np.array([pfloat(c) for c in cols]).T
        r = rank_numeric(stacked)
    if r == 3:
        raise ValueError("point is not on the curve: stacked map has rank 3")
    if r < 2:
        raise ValueError("indeterminate at x: every induced map has x as base point")
    if exact:
        for i, j in itertools.combinations(range(3), 2):
            y = cross3(cols[i], cols[j])
            if any(v != 0 for v in y):
                return canonical(y)
        raise AssertionError("rank-two stack with all pairwise crosses zero")
    crosses = [np.cross(np.asarray(cols[i]), np.asarray(cols[j]))
               for i, j in itertools.combinations(range(3), 2)]
    return max(crosses, key=lambda v: np.linalg.norm(v))


@dataclass(frozen=True, eq=False)
class SurfaceReport:
    """The four equations cutting the curve model inside P^5.

    The blown-up surfaces of the two point sets satisfy the cubic-sum and
    coordinate-sum equations plus one invariant-weighted hyperplane each;
    their intersection is the common model of both epipolar curves.
    """

    weights_x: np.ndarray     # coefficients of the x-side hyperplane
    weights_y: np.ndarray
    coble_x: CobleData
    coble_y: CobleData

    def parameter_point(self, u):
        """(a_x(u) : ... : f_x(u)), the x-side parameterization of the model."""
        vals = [self.coble_x.cubics[c](u) for c in COBLE_LETTERS]
        return np.array(vals, dtype=object if self.coble_x.exact else None)


def hexahedral_surface_report(cfg: PointPairConfig) -> SurfaceReport:
    """Equations of the curve model in P^5 for six pairs, with sanity checks.

    Verifies on deterministic sample points that the x-side
    parameterization satisfies the coordinate-sum, cubic-sum and x-weight
    equations identically (the y-weight equation then cuts out exactly
    the image of the x-side epipolar curve).
    """
    if cfg.k != 6:
        raise ValueError("surface report needs exactly 6 pairs")
    cob_x = coble_data(cfg.xs())
    cob_y = coble_data(cfg.ys())
    report = SurfaceReport(weights_x=cob_x.scalar_vector(),
                           weights_y=cob_y.scalar_vector(),
                           coble_x=cob_x, coble_y=cob_y)
    if cfg.exact:
        from .exact import exact_array

        for probe in ((1, 2, 3), (2, -1, 5), (-3, 7, 2)):
            z = report.parameter_point(exact_array(probe))
            if sum(z) != 0 or sum(v**3 for v in z) != 0 or \
                    sum(w * v for w, v in zip(report.weights_x, z)) != 0:
                raise AssertionError("parameterization violates the surface equations")
    return report


def third_intersection(curve: CubicCurve, p, q):
    """Third point where the chord through two curve points meets the cubic.

    Exact whenever the inputs are: with g(p) = g(q) = 0 the restriction
    g(s p + t q) reduces to alpha s^2 t + beta s t^2, leaving the third
    root at beta p - alpha q.
    """
    p, q = coerce(p), coerce(q)
    if proportional(p, q) if (is_exact(p) and is_exact(q)) else proportional(pfloat(p), pfloat(q), PROJ_TOL):
        raise ValueError("chord endpoints coincide")
    if curve(p) != 0 or curve(q) != 0:
        raise ValueError("chord endpoints must lie on the curve")
    f1 = as_fraction(curve(p + q))
    f2 = as_fraction(curve(p - q))
    alpha = (f1 - f2) / 2
    beta = (f1 + f2) / 2
    if alpha == 0 and beta == 0:
        raise ValueError("chord lies on the curve")
    if alpha == 0 or beta == 0:
        raise ValueError("chord is tangent at an endpoint")
    point = np.array([beta * as_fraction(a) - alpha * as_fraction(b)
                      for a, b in zip(p, q)], dtype=object)
    return canonical(point)

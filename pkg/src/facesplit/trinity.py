"""Lines of 3x3 matrices, quadrics through camera centers, Cremona maps.

A generic line in the projectivized space of 3x3 matrices meets the
determinant hypersurface in three rank-two matrices.  This module walks
all legs of the resulting correspondence:

* line -> Cremona map (cross product of the two matrix pencils),
* Cremona map -> line (orthogonal complement of the sampled graph),
* rank-two member -> canonical camera pair,
* line + member + cameras -> quadric through both centers,
* quadric + cameras -> Cremona map (canonical-frame formula).

Exact inputs stay exact wherever the rank-two members are rational;
irrational members are carried in complex floats, and certificates are
arranged upstream so they never need them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

import numpy as np

from . import exact as ex
from .exact import as_fraction, cross3, is_exact
from .forms import quad_eval, quad_gram_to_coeffs
from .projective import (
    PROJ_TOL,
    RANK_TOL,
    canonical,
    coerce,
    kernel_right_left,
    pfloat,
    proportional,
    rank_exact,
    rank_numeric,
    right_kernel,
    skew_matrix,
)
from .zmatrix import PointPairConfig, build_z, unvec9, vec9

__all__ = [
    "LineInDeterminantalVariety",
    "NonGenericLineError",
    "RankTwoMember",
    "MatrixLine",
    "matrix_line",
    "rank_two_on_line",
    "CremonaMap",
    "line_to_cremona",
    "cremona_to_line",
    "CameraPair",
    "cameras_from_f",
    "fundamental_matrix",
    "Quadric3",
    "quadric_from_line",
    "cremona_from_quadric",
    "is_p_generic",
    "standard_involution",
]


class LineInDeterminantalVariety(ValueError):
    """The determinant vanishes identically on the line."""


class NonGenericLineError(ValueError):
    """The line does not meet the determinant surface in 3 distinct rank-2 points."""


@dataclass(frozen=True)
class RankTwoMember:
    """A rank-two matrix s*B1 + t*B2 on a line, with its pencil parameter."""

    param: tuple
    matrix: np.ndarray
    exact: bool

    @property
    def epipoles(self):
        """(right kernel, left kernel) of the member."""
        return kernel_right_left(self.matrix)


@dataclass(frozen=True, eq=False)
class MatrixLine:
    """Span of two independent 3x3 matrices, rank-two members precomputed."""

    basis: tuple
    det_coeffs: tuple       # det(s B1 + t B2) = c0 s^3 + c1 s^2 t + c2 s t^2 + c3 t^3
    members: tuple          # three RankTwoMember when generic, else shorter
    generic: bool
    failure: str | None

    @property
    def exact(self) -> bool:
        return all(is_exact(b) for b in self.basis)

    def require_generic(self):
        if not self.generic:
            raise NonGenericLineError(self.failure or "line is not generic")

    def canonical_plane(self) -> np.ndarray:
        """RREF of stacked vec rows: canonical representative of the span."""
        rows = np.array([list(vec9(b)) for b in self.basis], dtype=object)
        r, _ = ex.rref(rows)
        return r

    def same_line(self, other: "MatrixLine") -> bool:
        a, b = self.canonical_plane(), other.canonical_plane()
        return a.shape == b.shape and bool(np.equal(a, b).all())

    def transpose(self) -> "MatrixLine":
        return matrix_line(self.basis[0].T, self.basis[1].T)

    def contains(self, m, tol: float = 0.0) -> bool:
        rows = [list(vec9(b)) for b in self.basis] + [list(vec9(coerce(m)))]
        if self.exact and is_exact(coerce(m)):
            return ex.bareiss_rank(np.array(rows, dtype=object)) == 2
        return rank_numeric(np.array([pfloat(r) for r in rows]),
                            tol if tol > 0 else RANK_TOL) == 2


def _det_pencil_coeffs(b1, b2):
    """Coefficients of det(s B1 + t B2) by multilinear column expansion."""
    exact = is_exact(b1) and is_exact(b2)
    cols1 = [b1[:, j] for j in range(3)]
    cols2 = [b2[:, j] for j in range(3)]
    coeffs = [0, 0, 0, 0]
    for subset_size in range(4):
        for subset in itertools.combinations(range(3), subset_size):
            cols = [cols2[j] if j in subset else cols1[j] for j in range(3)]
            m = np.array([list(c) for c in cols], dtype=object).T if exact \
                else np.array(cols, dtype=complex).T
            d = ex.bareiss_det(m) if exact else complex(np.linalg.det(m))
            coeffs[subset_size] += d
    return tuple(coeffs)


def _polish_root(coeffs_f, lam, steps: int = 3):
    """A few Newton steps on c0 + c1 x + c2 x^2 + c3 x^3 in complex floats."""
    c0, c1, c2, c3 = coeffs_f
    for _ in range(steps):
        p = c0 + lam * (c1 + lam * (c2 + lam * c3))
        dp = c1 + lam * (2 * c2 + 3 * lam * c3)
        if dp == 0:
            break
        lam = lam - p / dp
    return lam


def _pencil_roots_exact(coeffs):
    """(rational roots with multiplicity, inf multiplicity, residual complex roots)."""
    import sympy

    c0, c1, c2, c3 = [as_fraction(c) for c in coeffs]
    lam = sympy.Symbol("lam")
    poly = sympy.Poly(c3 * lam**3 + c2 * lam**2 + c1 * lam + c0, lam, domain="QQ")
    if poly.is_zero:
        raise LineInDeterminantalVariety("determinant vanishes identically on the line")
    inf_mult = 3 - poly.degree()
    ground = poly.ground_roots()
    rational = {Fraction(int(sympy.Rational(r).p), int(sympy.Rational(r).q)): m
                for r, m in ground.items()}
    deflated = poly
    for r, m in ground.items():
        for _ in range(m):
            deflated = deflated.quo(sympy.Poly(lam - r, lam, domain="QQ"))
    # ground_roots is complete over Q, so the deflated part has no rational root
    residual = []
    if deflated.degree() == 2:
        a, b, c = [complex(v) for v in deflated.all_coeffs()]
        sq = np.sqrt(complex(b * b - 4 * a * c))
        residual = [(-b + sq) / (2 * a), (-b - sq) / (2 * a)]
    elif deflated.degree() == 3:
        residual = list(np.roots([complex(v) for v in deflated.all_coeffs()]))
    elif deflated.degree() not in (0,):
        raise AssertionError("unexpected residual degree after rational deflation")
    return rational, inf_mult, residual


def matrix_line(b1, b2) -> MatrixLine:
    """Build a MatrixLine from two independent matrices, members eagerly.

    Raises on a dependent basis or a line inside the determinant surface;
    non-genericity (repeated or rank-one members) is recorded on the line
    and raised lazily by the operations that need genericity.
    """
    b1, b2 = coerce(b1), coerce(b2)
    exact = is_exact(b1) and is_exact(b2)
    stacked = np.array([list(vec9(b1)), list(vec9(b2))], dtype=object) if exact \
        else np.array([pfloat(vec9(b1)), pfloat(vec9(b2))])
    rank = ex.bareiss_rank(stacked) if exact else rank_numeric(stacked)
    if rank != 2:
        raise ValueError("dependent basis: the two matrices do not span a line")
    if exact:
        b1 = unvec9(ex.primitive(vec9(b1)))
        b2 = unvec9(ex.primitive(vec9(b2)))
    coeffs = _det_pencil_coeffs(b1, b2)
    members: list[RankTwoMember] = []
    failure = None
    if exact:
        rational, inf_mult, residual = _pencil_roots_exact(coeffs)
        if inf_mult >= 1:
            members.append(RankTwoMember(param=(0, 1), matrix=b2, exact=True))
        for lam, _mult in sorted(rational.items()):
            mat = unvec9(ex.primitive(vec9(lam.denominator * b1 + lam.numerator * b2)))
            members.append(RankTwoMember(param=(lam.denominator, lam.numerator),
                                         matrix=mat, exact=True))
        coeffs_f = [complex(c) for c in coeffs]
        for lam in residual:
            lam = _polish_root(coeffs_f, lam)
            mat = pfloat(b1) + lam * pfloat(b2)
            members.append(RankTwoMember(param=(1.0 + 0j, lam), matrix=mat, exact=False))
        # a repeated root of a rational cubic is rational, so multiplicity
        # information from the ground roots (plus infinity) is complete
        if inf_mult > 1 or any(m > 1 for m in rational.values()):
            failure = "repeated rank-two member: line is tangent to the determinant surface"
    else:
        cf = [complex(c) for c in coeffs]
        if max(abs(c) for c in cf) == 0:
            raise LineInDeterminantalVariety("determinant vanishes identically on the line")
        poly = np.array([cf[3], cf[2], cf[1], cf[0]])
        lead = np.max(np.abs(poly))
        roots = list(np.roots(poly / lead))
        for lam in roots:
            lam = _polish_root(cf, lam)
            members.append(RankTwoMember(param=(1.0 + 0j, lam),
                                         matrix=pfloat(b1) + lam * pfloat(b2),
                                         exact=False))
        if len(roots) < 3:
            members.insert(0, RankTwoMember(param=(0, 1), matrix=pfloat(b2), exact=False))
        if len(members) == 3:
            pts = [m.param[1] if m.param[0] != 0 else np.inf for m in members]
            fin = [p for p in pts if p is not np.inf]
            if len(fin) >= 2 and min(abs(a - b) for a, b in itertools.combinations(fin, 2)) \
                    <= 1e-9 * (1 + max(abs(p) for p in fin)):
                failure = "repeated rank-two member"
    if failure is None and len(members) != 3:
        failure = "line does not meet the determinant surface in three points"
    if failure is None:
        for m in members:
            r = rank_exact(m.matrix) if m.exact else rank_numeric(m.matrix)
            if r <= 1:
                failure = "rank-one member on the line"
                break
    return MatrixLine(basis=(b1, b2), det_coeffs=coeffs, members=tuple(members),
                      generic=failure is None, failure=failure)


def rank_two_on_line(line: MatrixLine):
    """The three rank-two members of a generic line, verified rank 2."""
    line.require_generic()
    return line.members


@dataclass(frozen=True, eq=False)
class CremonaMap:
    """Quadratic Cremona transformation as three ternary quadratic forms.

    `grams` stacks the three symmetric coefficient matrices; base points
    and exceptional lines may mix exact and complex-float entries when
    the underlying matrix line has irrational rank-two members.
    """

    grams: tuple
    base_dom: tuple | None = None
    base_cod: tuple | None = None
    exc_dom: tuple | None = None
    exc_cod: tuple | None = None
    line: MatrixLine | None = None

    @property
    def exact(self) -> bool:
        return all(is_exact(g) for g in self.grams)

    def __call__(self, x):
        x = coerce(x)
        if self.exact and is_exact(x):
            return np.array([quad_eval(g, x) for g in self.grams], dtype=object)
        xf = pfloat(x)
        return np.array([quad_eval(pfloat(g), xf) for g in self.grams])

    def coeff_vector(self) -> np.ndarray:
        """18-vector of stacked quadratic form coefficients, for comparisons."""
        parts = [quad_gram_to_coeffs(g) for g in self.grams]
        if self.exact:
            return np.array([v for p in parts for v in p], dtype=object)
        return np.concatenate([pfloat(p) for p in parts])

    def proportional_to(self, other, tol: float = 0.0) -> bool:
        a, b = self.coeff_vector(), other.coeff_vector()
        if is_exact(a) and is_exact(b) and tol == 0.0:
            return proportional(a, b)
        return proportional(pfloat(a), pfloat(b), tol if tol > 0 else PROJ_TOL)

    def inverse(self) -> "CremonaMap":
        line = self.line if self.line is not None else cremona_to_line(self)
        return line_to_cremona(line.transpose())


def line_to_cremona(line: MatrixLine) -> CremonaMap:
    """The Cremona map whose graph is cut out by the line.

    The image of x is the left kernel of [B1 x | B2 x], written as the
    cross product of the two columns; its coordinates are quadratic forms
    in x.  Base points are the right kernels of the three rank-two
    members, codomain base points the left kernels.
    """
    line.require_generic()
    b1, b2 = line.basis
    exact = line.exact
    half = Fraction(1, 2) if exact else 0.5
    grams = []
    for (a, b) in ((1, 2), (2, 0), (0, 1)):
        n = np.outer(b1[a, :], b2[b, :]) - np.outer(b1[b, :], b2[a, :])
        grams.append((n + n.T) * half)
    base_dom, base_cod = [], []
    for m in line.members:
        e_x, e_y = m.epipoles
        base_dom.append(e_x)
        base_cod.append(e_y)
    exc_dom, exc_cod = [], []
    for i in range(3):
        j, k = [t for t in range(3) if t != i]
        exc_dom.append(_cross_mixed(base_dom[j], base_dom[k]))
        exc_cod.append(_cross_mixed(base_cod[j], base_cod[k]))
    return CremonaMap(grams=tuple(grams), base_dom=tuple(base_dom),
                      base_cod=tuple(base_cod), exc_dom=tuple(exc_dom),
                      exc_cod=tuple(exc_cod), line=line)


def _cross_mixed(a, b):
    if is_exact(coerce(a)) and is_exact(coerce(b)):
        return cross3(coerce(a), coerce(b))
    return np.cross(pfloat(a), pfloat(b))


# spread points with no three collinear among the early entries, so the
# sampled graph generically spans the full 7-dimensional space
_SAMPLE_POOL = [(1, 2, 3), (1, -1, 2), (2, 1, -1), (3, -2, 1), (1, 5, -3),
                (2, -3, 5), (5, 1, 2), (3, 4, -5), (1, -4, -3), (7, 2, -5),
                (2, 7, 3), (5, -3, -2), (1, 1, 1), (4, -1, 3), (3, 5, 7),
                (11, 2, 1), (1, -7, 4), (6, 5, -1), (2, 9, -7), (8, -3, 1)]


def cremona_to_line(f: CremonaMap) -> MatrixLine:
    """Recover the matrix line of a Cremona map from its sampled graph.

    Stacks rows x^T (x) f(x)^T for enough sample points and takes the
    exact nullspace, which must be two-dimensional (the graph spans a
    7-dimensional space of matrices); anything else means the quadratic
    triple is degenerate.
    """
    pairs = []
    for p in _SAMPLE_POOL:
        x = ex.exact_array(p) if f.exact else np.array(p, dtype=float)
        y = f(x)
        nonzero = any(v != 0 for v in y) if f.exact else np.linalg.norm(pfloat(y)) > 0
        if not nonzero:
            continue
        pairs.append((x, y))
        if len(pairs) >= 12:
            break
    if len(pairs) < 9:
        raise ValueError("degenerate map: not enough valid graph samples")
    rows = [np.kron(x, y) for x, y in pairs]
    if f.exact:
        z = np.array([list(r) for r in rows], dtype=object)
        basis = ex.nullspace(z)
        if len(basis) != 2:
            raise ValueError(
                f"degenerate map: sampled span has dimension {9 - len(basis)}, expected 7")
        return matrix_line(unvec9(basis[0]), unvec9(basis[1]))
    z = np.array([pfloat(r) for r in rows])
    nullity = z.shape[1] - rank_numeric(z)
    if nullity != 2:
        raise ValueError(
            f"degenerate map: sampled span has dimension {9 - nullity}, expected 7")
    _, _, vh = np.linalg.svd(z)
    return matrix_line(unvec9(np.conj(vh[-1])), unvec9(np.conj(vh[-2])))


@dataclass(frozen=True, eq=False)
class CameraPair:
    """Two rank-three 3x4 projections with distinct centers."""

    a1: np.ndarray
    a2: np.ndarray
    c1: np.ndarray
    c2: np.ndarray

    @property
    def exact(self) -> bool:
        return is_exact(self.a1) and is_exact(self.a2)

    def project1(self, p):
        return self.a1 @ coerce(p)

    def project2(self, p):
        return self.a2 @ coerce(p)


def fundamental_matrix(cams: CameraPair) -> np.ndarray:
    """Fundamental matrix of a camera pair from the stacked 6x6 minors.

    Entry (a, b) is the determinant of [[A1, e_b, 0], [A2, 0, e_a]]; the
    resulting bilinear form vanishes on all corresponding image pairs.
    """
    exact = cams.exact
    f = [[None] * 3 for _ in range(3)]
    zero3 = [0, 0, 0]
    for a in range(3):
        for b in range(3):
            rows = []
            for i in range(3):
                rows.append(list(cams.a1[i, :]) + [1 if i == b else 0, 0])
            for i in range(3):
                rows.append(list(cams.a2[i, :]) + [0, 1 if i == a else 0])
            m = np.array(rows, dtype=object) if exact else np.array(rows, dtype=complex)
            f[a][b] = ex.bareiss_det(m) if exact else complex(np.linalg.det(m))
    mat = np.array(f, dtype=object) if exact else np.array(f, dtype=complex)
    if exact:
        mat = unvec9(ex.primitive(vec9(mat)))
    return mat


def cameras_from_f(f_mat) -> CameraPair:
    """Canonical camera pair A1 = [I | 0], A2 = [[e_y]_x F | e_y] for rank-two F.

    The construction is verified by recomputing the fundamental matrix
    from the stacked camera minors and checking proportionality to F.
    """
    f_mat = coerce(f_mat)
    exact = is_exact(f_mat)
    r = rank_exact(f_mat) if exact else rank_numeric(f_mat)
    if r != 2:
        raise ValueError(f"matrix has rank {r}, expected 2")
    e_x, e_y = kernel_right_left(f_mat)
    s = skew_matrix(e_y)
    left = s @ f_mat
    a2 = np.concatenate([left, np.asarray(e_y).reshape(3, 1)], axis=1)
    if exact:
        one, zero = 1, 0
        a1 = np.array([[one, zero, zero, zero],
                       [zero, one, zero, zero],
                       [zero, zero, one, zero]], dtype=object)
        c1 = np.array([0, 0, 0, 1], dtype=object)
        if ex.bareiss_rank(a2) != 3:
            raise ValueError("degenerate canonical second camera (isotropic epipole)")
        c2 = right_kernel(a2)
    else:
        a1 = np.concatenate([np.eye(3, dtype=complex), np.zeros((3, 1), dtype=complex)],
                            axis=1)
        c1 = np.array([0, 0, 0, 1], dtype=complex)
        if rank_numeric(a2) != 3:
            raise ValueError("degenerate canonical second camera (isotropic epipole)")
        c2 = right_kernel(a2)
    cams = CameraPair(a1=a1, a2=a2, c1=c1, c2=c2)
    check = fundamental_matrix(cams)
    if exact:
        if not proportional(vec9(check), vec9(f_mat)):
            raise AssertionError("camera construction failed to reproduce F")
    else:
        if not proportional(pfloat(vec9(check)), pfloat(vec9(f_mat)), 1e-7):
            raise AssertionError("camera construction failed to reproduce F")
    return cams


@dataclass(frozen=True, eq=False)
class Quadric3:
    """Symmetric 4x4 form on P^3, up to scale."""

    gram: np.ndarray
    permissible: bool | None = None

    @property
    def exact(self) -> bool:
        return is_exact(self.gram)

    def __call__(self, p):
        p = coerce(p)
        if self.exact and is_exact(p):
            return quad_eval(self.gram, p)
        return quad_eval(pfloat(self.gram), pfloat(p))

    def contains(self, p, tol: float = 1e-9) -> bool:
        p = coerce(p)
        if self.exact and is_exact(p):
            return self(p) == 0
        gf, pf2 = pfloat(self.gram), pfloat(p)
        return abs(quad_eval(gf, pf2)) <= tol * np.linalg.norm(gf) * np.linalg.norm(pf2) ** 2

    def proportional_to(self, other, tol: float = 0.0) -> bool:
        other_g = other.gram if isinstance(other, Quadric3) else coerce(other)
        a, b = self.gram.ravel(), np.asarray(other_g).ravel()
        if is_exact(self.gram) and is_exact(coerce(other_g)) and tol == 0.0:
            return proportional(a, b)
        return proportional(pfloat(a), pfloat(b), tol if tol > 0 else PROJ_TOL)


def quadric_from_line(line: MatrixLine, f_mat, cams: CameraPair) -> Quadric3:
    """Quadric through both camera centers associated to a line through F.

    Symmetric part of A2^T M A1 for any M on the line independent of F.
    The centers are checked to lie on the result; permissibility (smooth
    and baseline-free) is recorded on the returned quadric.
    """
    f_mat = coerce(f_mat)
    if not line.contains(f_mat, tol=0.0 if (line.exact and is_exact(f_mat)) else RANK_TOL):
        raise ValueError("F does not lie on the line")
    b1, b2 = line.basis
    exact = line.exact and cams.exact and is_exact(f_mat)
    if proportional(vec9(b1), vec9(f_mat)) if (is_exact(b1) and is_exact(f_mat)) \
            else proportional(pfloat(vec9(b1)), pfloat(vec9(f_mat)), PROJ_TOL):
        m = b2
    else:
        m = b1
    raw = (cams.a2.T @ (m if exact else pfloat(m)) @ cams.a1) if exact \
        else (pfloat(cams.a2).T @ pfloat(m) @ pfloat(cams.a1))
    half = Fraction(1, 2) if exact else 0.5
    gram = (raw + raw.T) * half
    if exact and all(v == 0 for v in gram.ravel()):
        raise ValueError("chosen M is proportional to F: quadric degenerates to zero")
    q = Quadric3(gram=gram)
    for c in (cams.c1, cams.c2):
        ok = q(c) == 0 if exact else abs(q(c)) <= 1e-9 * np.linalg.norm(pfloat(gram)) * \
            np.linalg.norm(pfloat(c)) ** 2
        if not ok:
            raise AssertionError("internal consistency: camera center not on quadric")
    if exact:
        det = ex.bareiss_det(gram)
        baseline = (cams.c1 @ gram @ cams.c2)
        permissible = det != 0 and baseline != 0
    else:
        gf = pfloat(gram)
        det = np.linalg.det(gf)
        baseline = pfloat(cams.c1) @ gf @ pfloat(cams.c2)
        scale = np.linalg.norm(gf)
        permissible = abs(det) > 1e-9 * scale ** 4 and abs(baseline) > 1e-9 * scale * \
            np.linalg.norm(pfloat(cams.c1)) * np.linalg.norm(pfloat(cams.c2))
    return Quadric3(gram=gram, permissible=bool(permissible))


def _exact_sqrt(fr: Fraction):
    """Square root of a nonnegative Fraction when it is a perfect square."""
    if fr < 0:
        return None
    n, d = fr.numerator, fr.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def _line_quadric_points(a_vec, b_gram, exact: bool):
    """The two points of {a . x = 0} cap {x^T B x = 0} in P^2."""
    if exact:
        span = ex.nullspace(np.array([list(a_vec)], dtype=object))
        v1, v2 = span
        q11 = v1 @ b_gram @ v1
        q22 = v2 @ b_gram @ v2
        q12 = v1 @ b_gram @ v2
        # roots of q11 s^2 + 2 q12 s t + q22 t^2
        if q11 == 0 and q22 == 0 and q12 == 0:
            raise ValueError("degenerate ruling: conic contains the whole line")
        if q11 == 0:
            pts = [(1, 0), (as_fraction(-q22), as_fraction(2 * q12))] if q12 != 0 \
                else [(1, 0), (1, 0)]
            out = [canonical(np.array([s * a + t * b for a, b in zip(v1, v2)],
                                      dtype=object))
                   for s, t in pts]
            return out
        disc = as_fraction(q12) ** 2 - as_fraction(q11) * as_fraction(q22)
        root = _exact_sqrt(disc)
        if root is not None:
            sols = [((-as_fraction(q12) + root), as_fraction(q11)),
                    ((-as_fraction(q12) - root), as_fraction(q11))]
            return [canonical(np.array([s * a + t * b for a, b in zip(v1, v2)],
                                       dtype=object))
                    for s, t in sols]
        q11f, q12f, q22f = complex(q11), complex(q12), complex(q22)
        sq = np.sqrt(complex(q12f * q12f - q11f * q22f))
        sols = [(-q12f + sq, q11f), (-q12f - sq, q11f)]
        v1f, v2f = pfloat(v1), pfloat(v2)
        return [s * v1f + t * v2f for s, t in sols]
    av = pfloat(a_vec)
    bg = pfloat(b_gram)
    _, _, vh = np.linalg.svd(av.reshape(1, 3))
    v1, v2 = np.conj(vh[1]), np.conj(vh[2])
    q11, q22, q12 = v1 @ bg @ v1, v2 @ bg @ v2, v1 @ bg @ v2
    if abs(q11) < 1e-14 * np.linalg.norm(bg):
        v1, v2 = v2, v1
        q11, q22 = q22, q11
    sq = np.sqrt(q12 * q12 - q11 * q22)
    return [(-q12 + sq) * v1 + q11 * v2, (-q12 - sq) * v1 + q11 * v2]


def cremona_from_quadric(quadric: Quadric3, cams: CameraPair) -> CremonaMap:
    """Cremona map induced by a permissible quadric through both centers.

    Conjugates to the canonical frame (centers at the first two coordinate
    points, projections dropping one coordinate), where the quadric reads
    q(u) = u1 * a + b and the map is (-b(x) : x2 a(x) : x3 a(x)), then maps
    the result back through the frame changes.
    """
    exact = quadric.exact and cams.exact
    gram = quadric.gram if exact else pfloat(quadric.gram)
    c1 = cams.c1 if exact else pfloat(cams.c1)
    c2 = cams.c2 if exact else pfloat(cams.c2)
    q1, q2 = quadric(cams.c1), quadric(cams.c2)
    scale = 1 if exact else np.linalg.norm(pfloat(gram))
    if (q1 != 0 if exact else abs(q1) > 1e-9 * scale * np.linalg.norm(c1) ** 2):
        raise ValueError("quadric does not pass through the first center")
    if (q2 != 0 if exact else abs(q2) > 1e-9 * scale * np.linalg.norm(c2) ** 2):
        raise ValueError("quadric does not pass through the second center")
    baseline = c1 @ gram @ c2
    if (baseline == 0 if exact else abs(baseline) <= 1e-9 * scale *
            np.linalg.norm(c1) * np.linalg.norm(c2)):
        raise ValueError("not permissible: quadric contains the baseline")
    det = ex.bareiss_det(gram) if exact else np.linalg.det(gram)
    if (det == 0 if exact else abs(det) <= 1e-12 * scale ** 4):
        raise ValueError("not permissible: quadric is singular")

    # frame: columns c1, c2 completed by standard basis vectors
    n = 4
    basis_cols = None
    for i, j in itertools.combinations(range(n), 2):
        cols = [c1, c2,
                np.array([1 if t == i else 0 for t in range(n)],
                         dtype=object if exact else float),
                np.array([1 if t == j else 0 for t in range(n)],
                         dtype=object if exact else float)]
        g4 = np.array([list(c) for c in cols], dtype=object).T if exact \
            else np.array(cols, dtype=complex).T
        d = ex.bareiss_det(g4) if exact else np.linalg.det(g4)
        if (d != 0 if exact else abs(d) > 1e-6 * np.linalg.norm(g4) ** 4):
            basis_cols = g4
            break
    g4 = basis_cols
    a1g = (cams.a1 if exact else pfloat(cams.a1)) @ g4
    a2g = (cams.a2 if exact else pfloat(cams.a2)) @ g4
    k1 = a1g[:, [1, 2, 3]]
    k2 = a2g[:, [0, 2, 3]]
    qb = g4.T @ gram @ g4

    def _canonical_grams(av, bg):
        e2 = np.array([0, 1, 0], dtype=object if exact else complex)
        e3 = np.array([0, 0, 1], dtype=object if exact else complex)
        half = Fraction(1, 2) if exact else 0.5
        g_b = -bg
        g_2 = (np.outer(e2, av) + np.outer(av, e2)) * half
        g_3 = (np.outer(e3, av) + np.outer(av, e3)) * half
        return [g_b, g_2, g_3]

    av = 2 * qb[0, [1, 2, 3]]
    bg = qb[[1, 2, 3]][:, [1, 2, 3]]
    grams_bar = _canonical_grams(av, bg)
    k1i = ex.inverse(k1) if exact else np.linalg.inv(k1)
    grams_conj = [k1i.T @ g @ k1i for g in grams_bar]
    grams = []
    for row in range(3):
        total = None
        for j in range(3):
            term = k2[row, j] * grams_conj[j]
            total = term if total is None else total + term
        grams.append(total)

    # base points: pi1(c2) plus the two rulings through c1, pulled back by K1;
    # exact quadrics can still have irrational rulings, which stay float
    def _mapped_points(points, k):
        out = []
        for pt in points:
            if is_exact(np.asarray(pt)):
                out.append(canonical(k @ pt))
            else:
                out.append(pfloat(k) @ np.asarray(pt, dtype=complex))
        return out

    base_dom = [canonical((cams.a1 if exact else pfloat(cams.a1)) @ c2)]
    base_dom += _mapped_points(_line_quadric_points(av, bg, exact), k1)
    avp = 2 * qb[1, [0, 2, 3]]
    bgp = qb[[0, 2, 3]][:, [0, 2, 3]]
    base_cod = [canonical((cams.a2 if exact else pfloat(cams.a2)) @ c1)]
    base_cod += _mapped_points(_line_quadric_points(avp, bgp, exact), k2)
    exc_dom, exc_cod = [], []
    for i in range(3):
        j, k = [t for t in range(3) if t != i]
        exc_dom.append(_cross_mixed(base_dom[j], base_dom[k]))
        exc_cod.append(_cross_mixed(base_cod[j], base_cod[k]))
    return CremonaMap(grams=tuple(grams), base_dom=tuple(base_dom),
                      base_cod=tuple(base_cod), exc_dom=tuple(exc_dom),
                      exc_cod=tuple(exc_cod))


def is_p_generic(line: MatrixLine, cfg: PointPairConfig) -> bool:
    """True when no rank-two member annihilates an input point on either side.

    Requires the line to be generic and contained in the nullspace of the
    configuration's face-splitting matrix.
    """
    line.require_generic()
    z = build_z(cfg)
    for b in line.basis:
        for (x, y) in cfg.pairs:
            val = y @ (b if is_exact(b) and cfg.exact else pfloat(b)) @ x \
                if cfg.exact and is_exact(b) else pfloat(y) @ pfloat(b) @ pfloat(x)
            ok = val == 0 if (cfg.exact and is_exact(b)) else abs(val) <= 1e-9 * \
                np.linalg.norm(pfloat(b)) * np.linalg.norm(pfloat(x)) * np.linalg.norm(pfloat(y))
            if not ok:
                raise ValueError("line is not contained in the configuration nullspace")
    for member in line.members:
        mat = member.matrix
        exact = member.exact and cfg.exact
        for (x, y) in cfg.pairs:
            if exact:
                if not any(v != 0 for v in mat @ x):
                    return False
                if not any(v != 0 for v in y @ mat):
                    return False
            else:
                mf = pfloat(mat)
                xf, yf = pfloat(x), pfloat(y)
                scale = np.linalg.norm(mf)
                if np.linalg.norm(mf @ xf) <= 1e-9 * scale * np.linalg.norm(xf):
                    return False
                if np.linalg.norm(yf @ mf) <= 1e-9 * scale * np.linalg.norm(yf):
                    return False
    return True


def conjugate_cremona(h1, f: CremonaMap, h2) -> CremonaMap:
    """The map x -> h1 f(h2 x) as a CremonaMap (grams pulled back and mixed)."""
    h1, h2 = coerce(h1), coerce(h2)
    exact = f.exact and is_exact(h1) and is_exact(h2)
    pulled = [h2.T @ (g if exact else pfloat(g)) @ h2 for g in
              (f.grams if exact else [pfloat(g) for g in f.grams])]
    grams = []
    for k in range(3):
        total = None
        for j in range(3):
            term = h1[k, j] * pulled[j]
            total = term if total is None else total + term
        grams.append(total)
    base_dom = base_cod = None
    if f.base_dom is not None and exact:
        h2i = ex.inverse(h2)
        base_dom = tuple(canonical(h2i @ b) if is_exact(coerce(b)) else
                         pfloat(h2i) @ pfloat(b) for b in f.base_dom)
        base_cod = tuple(canonical(h1 @ b) if is_exact(coerce(b)) else
                         pfloat(h1) @ pfloat(b) for b in f.base_cod)
    return CremonaMap(grams=tuple(grams), base_dom=base_dom, base_cod=base_cod)


def standard_involution() -> CremonaMap:
    """The involution (x1 : x2 : x3) -> (x2 x3 : x1 x3 : x1 x2)."""
    h = Fraction(1, 2)
    z = Fraction(0)
    g1 = np.array([[z, z, z], [z, z, h], [z, h, z]], dtype=object)
    g2 = np.array([[z, z, h], [z, z, z], [h, z, z]], dtype=object)
    g3 = np.array([[z, h, z], [h, z, z], [z, z, z]], dtype=object)
    e = [ex.exact_array([1, 0, 0]), ex.exact_array([0, 1, 0]), ex.exact_array([0, 0, 1])]
    return CremonaMap(grams=(g1, g2, g3), base_dom=tuple(e), base_cod=tuple(e),
                      exc_dom=tuple(e), exc_cod=tuple(e))

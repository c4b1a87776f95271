"""Point-pair configurations and their face-splitting matrix.

A configuration of k point pairs (x_i, y_i) in P^2 x P^2 yields the k x 9
matrix Z whose i-th row is the Kronecker product x_i^T (x) y_i^T, laid out
x-major: row[3b + a] = x[b] * y[a].  With vec(M) the column-concatenation
of a 3x3 matrix M this makes

    row . vec(M) = y^T M x,

so nullspace vectors of Z reshape (column-major) to the matrices M with
y_i^T M x_i = 0 for every pair.  That orientation is fixed once here and
relied on by every other module.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import exact as ex
from .projective import coerce, is_exact, pfloat, rank_exact

__all__ = [
    "PointPairConfig",
    "vec9",
    "unvec9",
    "build_z",
    "rank_and_nullspace",
    "maximal_minors_vanish",
    "is_semi_generic",
    "span_contains_rank_one",
]


@dataclass(frozen=True)
class PointPairConfig:
    """Ordered list of k point pairs in P^2 x P^2, 2 <= k <= 9."""

    pairs: tuple

    def __post_init__(self):
        pairs = tuple((coerce(x), coerce(y)) for x, y in self.pairs)
        if not 2 <= len(pairs) <= 9:
            raise ValueError(f"k = {len(pairs)} out of range 2..9")
        for x, y in pairs:
            if x.shape != (3,) or y.shape != (3,):
                raise ValueError("points must be 3-vectors")
            if not any(v != 0 for v in x) or not any(v != 0 for v in y):
                raise ValueError("zero vector in configuration")
        object.__setattr__(self, "pairs", pairs)

    @property
    def k(self) -> int:
        return len(self.pairs)

    @property
    def exact(self) -> bool:
        return all(is_exact(x) and is_exact(y) for x, y in self.pairs)

    def xs(self) -> list:
        return [x for x, _ in self.pairs]

    def ys(self) -> list:
        return [y for _, y in self.pairs]

    def drop(self, i: int) -> "PointPairConfig":
        """Configuration with the i-th pair removed (0-based)."""
        return PointPairConfig(tuple(p for j, p in enumerate(self.pairs) if j != i))

    def select(self, indices) -> "PointPairConfig":
        return PointPairConfig(tuple(self.pairs[i] for i in indices))

    def to_float(self) -> "PointPairConfig":
        return PointPairConfig(tuple((pfloat(x, complex_=False), pfloat(y, complex_=False))
                                     for x, y in self.pairs))

    @classmethod
    def from_matrices(cls, x_cols, y_cols) -> "PointPairConfig":
        """Build from 3xk matrices whose columns are the points."""
        x_cols = coerce(x_cols)
        y_cols = coerce(y_cols)
        return cls(tuple((x_cols[:, i], y_cols[:, i]) for i in range(x_cols.shape[1])))


def vec9(m) -> np.ndarray:
    """Column-major vectorization of a 3x3 matrix."""
    return np.asarray(m).flatten(order="F")


def unvec9(v) -> np.ndarray:
    """Inverse of :func:`vec9`."""
    return np.asarray(v).reshape(3, 3, order="F")


def build_z(cfg: PointPairConfig) -> np.ndarray:
    """The k x 9 face-splitting matrix with rows x_i^T (x) y_i^T."""
    rows = [np.kron(x, y) for x, y in cfg.pairs]
    if cfg.exact:
        return np.array([list(r) for r in rows], dtype=object)
    return np.array([pfloat(r, complex_=False) for r in rows])


def rank_and_nullspace(z: np.ndarray):
    """Rank of Z and a canonical basis of its right nullspace as matrices.

    Exact input gives the exact rank and primitive integer basis matrices;
    numeric input uses the SVD (rank threshold, right singular vectors).
    """
    z = coerce(z)
    if is_exact(z):
        basis = ex.nullspace(z)
        rank = z.shape[1] - len(basis)
        return rank, tuple(unvec9(v) for v in basis)
    zf = pfloat(z, complex_=False)
    _, s, vh = np.linalg.svd(zf)
    rank = int(np.sum(s >= 1e-8 * s[0])) if s.size and s[0] > 0 else 0
    return rank, tuple(unvec9(vh[i]) for i in range(rank, 9))


def maximal_minors_vanish(z: np.ndarray) -> bool:
    """True iff every k x k minor of the exact k x 9 matrix Z is zero.

    Cross-checked against rank(Z) < k, which is equivalent.
    """
    z = coerce(z)
    if not is_exact(z):
        raise TypeError("maximal minors require exact scalars")
    k = z.shape[0]
    all_zero = True
    for cols in itertools.combinations(range(z.shape[1]), k):
        if ex.bareiss_det(z[:, cols]) != 0:
            all_zero = False
            break
    deficient = rank_exact(z) < k
    if all_zero != deficient:
        raise AssertionError("minor test disagrees with rank, this is a bug")
    return all_zero


def _minor_forms(basis):
    """The nine 2x2-minor forms of a0*B0 + ... as polynomial coefficient dicts.

    Returns a list of dicts mapping exponent tuples (over len(basis)
    variables) to integer coefficients; a combination is rank <= 1 exactly
    when all nine forms vanish on it.
    """
    d = len(basis)
    idx = [(r, c) for r in range(3) for c in range(3)]
    minors = [((0, 1), (0, 1)), ((0, 1), (0, 2)), ((0, 1), (1, 2)),
              ((0, 2), (0, 1)), ((0, 2), (0, 2)), ((0, 2), (1, 2)),
              ((1, 2), (0, 1)), ((1, 2), (0, 2)), ((1, 2), (1, 2))]
    forms = []
    for (r1, r2), (c1, c2) in minors:
        coeffs = {}
        for i in range(d):
            for j in range(i, d):
                # coefficient of a_i a_j in det of the 2x2 block
                bi, bj = basis[i], basis[j]
                val = bi[r1][c1] * bj[r2][c2] - bi[r1][c2] * bj[r2][c1]
                if i != j:
                    val += bj[r1][c1] * bi[r2][c2] - bj[r1][c2] * bi[r2][c1]
                if val != 0:
                    e = [0] * d
                    e[i] += 1
                    e[j] += 1
                    coeffs[tuple(e)] = coeffs.get(tuple(e), 0) + val
        forms.append({k: v for k, v in coeffs.items() if v != 0})
    return forms


def span_contains_rank_one(basis) -> bool:
    """Exact test: does the span of the given 3x3 matrices contain a rank-one?

    Decides whether the nine 2x2-minor forms have a common projective zero.
    Dimension 1 is a rank check, dimension 2 a binary-form gcd, dimension 3
    a Groebner-basis zero-dimensionality test.  Higher dimensions are not
    decided here (returns None).
    """
    import sympy

    d = len(basis)
    basis = [coerce(b) for b in basis]
    if d == 0:
        return False
    if d == 1:
        return rank_exact(basis[0]) <= 1
    if d > 3:
        return None
    forms = _minor_forms(basis)
    if all(not f for f in forms):
        return True   # every member has rank <= 1
    syms = sympy.symbols(f"a0:{d}")
    polys = []
    for f in forms:
        if not f:
            continue
        expr = sympy.Integer(0)
        for e, c in f.items():
            term = sympy.Integer(c)
            for s, p in zip(syms, e):
                term *= s ** p
            expr += term
        polys.append(sympy.Poly(expr, *syms, domain="QQ"))
    if d == 2:
        g = polys[0]
        for p in polys[1:]:
            g = g.gcd(p)
            if g.total_degree() == 0:
                return False
        return g.total_degree() > 0
    gb = sympy.groebner(polys, *syms, order="grevlex")
    lead = [p.monoms()[0] for p in gb.polys]
    for i in range(d):
        pure = any(sum(e) == e[i] > 0 for e in lead)
        if not pure:
            return True   # no pure power of a_i leads: positive-dimensional cone
    return False


def is_semi_generic(cfg: PointPairConfig) -> bool:
    """Proxy test for semi-genericity of a configuration.

    The defining property (every (k-1)-subset fully generic) has no known
    effective criterion; this is a documented sufficient-signal heuristic:
    every (k-1)-subset must have a full-rank Z, and no subset nullspace may
    contain a rank-one matrix.  The rank-one check is exact for nullspace
    dimension <= 3 (minor ideal), and falls back to inspecting the basis
    elements and their pairwise sums above that.
    """
    if not 3 <= cfg.k <= 9:
        raise ValueError("semi-genericity proxy needs 3 <= k <= 9")
    if not cfg.exact:
        raise TypeError("semi-genericity proxy requires exact scalars")
    for i in range(cfg.k):
        sub = cfg.drop(i)
        z = build_z(sub)
        rank, basis = rank_and_nullspace(z)
        if rank < sub.k:
            return False
        for b in basis:
            if rank_exact(b) <= 1:
                return False
        for a, b in itertools.combinations(basis, 2):
            if rank_exact(a + b) <= 1:
                return False
        exact_answer = span_contains_rank_one(list(basis))
        if exact_answer:
            return False
    return True

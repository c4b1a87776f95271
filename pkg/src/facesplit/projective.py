"""Projective points and 3x3 matrix utilities over both backends.

Points in P^2 / P^3 are plain numpy vectors, exact (object dtype with
int/Fraction entries) or numeric (float64/complex128), identified up to
scale.  The exact backend is used by every certificate; the numeric one
by root finding and SVD-based ranks.

Tolerance conventions (see also :data:`PROJ_TOL`, :data:`RANK_TOL`):
projective equality uses relative tolerance 1e-9, numeric rank uses a
1e-8 singular-value ratio threshold.
"""

from __future__ import annotations

import numpy as np

from .exact import (
    bareiss_rank,
    exact_array,
    is_exact,
    nullspace,
    primitive,
    to_float,
)

__all__ = [
    "PROJ_TOL",
    "RANK_TOL",
    "proj_equal",
    "proportional",
    "canonical",
    "skew_matrix",
    "rank_exact",
    "rank_numeric",
    "matrix_rank",
    "kernel_right_left",
    "right_kernel",
    "left_kernel",
    "pfloat",
    "coerce",
]

PROJ_TOL = 1e-9   # relative tolerance for projective equality of numeric vectors
RANK_TOL = 1e-8   # singular-value ratio threshold for numeric rank


def coerce(v) -> np.ndarray:
    """Normalize input: integer-dtype data becomes exact, floats stay numeric."""
    a = np.asarray(v)
    if a.dtype == object:
        return a
    if np.issubdtype(a.dtype, np.integer):
        return exact_array(a.tolist())
    return a


def pfloat(v, complex_: bool = True) -> np.ndarray:
    """Numeric copy of a possibly exact vector/matrix."""
    return to_float(np.asarray(v), complex_=complex_)


def proportional(p, q, tol: float = PROJ_TOL) -> bool:
    """True when two same-length coefficient vectors agree up to scale.

    Exact inputs are compared exactly (all 2x2 cross minors vanish);
    numeric inputs use ``|p_i q_j - p_j q_i| <= tol * |p| * |q|``.
    """
    p = coerce(p).ravel()
    q = coerce(q).ravel()
    if p.shape != q.shape:
        raise ValueError("dimension mismatch")
    if is_exact(p) and is_exact(q):
        for i in range(len(p)):
            for j in range(i + 1, len(q)):
                if p[i] * q[j] - p[j] * q[i] != 0:
                    return False
        return True
    pf, qf = pfloat(p), pfloat(q)
    scale = np.linalg.norm(pf) * np.linalg.norm(qf)
    if scale == 0:
        return False
    outer = np.outer(pf, qf)
    m = np.abs(outer - outer.T)  # entries p_i q_j - p_j q_i
    return float(np.max(m)) <= tol * scale


def proj_equal(p, q, tol: float = 0.0) -> bool:
    """Projective equality of two points, exact when tol == 0.

    For exact scalars tol must be 0; numeric points are compared with a
    relative tolerance (default :data:`PROJ_TOL` when tol is given as 0).
    """
    p = coerce(p)
    q = coerce(q)
    if p.shape != q.shape:
        raise ValueError("dimension mismatch")
    if is_exact(p) and is_exact(q):
        if tol != 0.0:
            raise ValueError("exact scalars require tol = 0")
        return proportional(p, q)
    return proportional(p, q, tol if tol > 0 else PROJ_TOL)


def canonical(v):
    """Canonical representative up to scale.

    Exact: primitive integer vector with positive leading entry.
    Numeric: first (relatively) nonzero coordinate normalized to 1.
    """
    v = coerce(v)
    if is_exact(v):
        return primitive(v)
    vf = pfloat(v)
    norm = np.max(np.abs(vf))
    if norm == 0:
        raise ValueError("zero vector")
    lead = next(x for x in vf.ravel() if abs(x) > 1e-12 * norm)
    out = vf / lead
    return out.real if np.allclose(out.imag, 0, atol=1e-12) else out


def skew_matrix(a) -> np.ndarray:
    """Skew matrix [a]_x with [a]_x b = a x b for all b."""
    a = coerce(a)
    if not any(v != 0 for v in a.ravel()):
        raise ValueError("zero vector")
    z = 0 if is_exact(a) else type(a.ravel()[0])(0)
    rows = [[z, -a[2], a[1]],
            [a[2], z, -a[0]],
            [-a[1], a[0], z]]
    return np.array(rows, dtype=object if is_exact(a) else None)


def rank_exact(m: np.ndarray) -> int:
    """Exact rank of a matrix of exact scalars (fraction-free elimination)."""
    m = coerce(m)
    if not is_exact(m):
        raise TypeError("rank_exact requires exact scalars")
    return bareiss_rank(m)


def rank_numeric(m: np.ndarray, tol: float = RANK_TOL) -> int:
    """Numeric rank: number of singular values >= tol * sigma_max."""
    mf = pfloat(m)
    if not np.any(mf):
        return 0
    s = np.linalg.svd(mf, compute_uv=False)
    return int(np.sum(s >= tol * s[0]))


def matrix_rank(m: np.ndarray, tol: float = RANK_TOL) -> int:
    """Backend-dispatching rank."""
    m = coerce(m)
    return rank_exact(m) if is_exact(m) else rank_numeric(m, tol)


def right_kernel(m: np.ndarray):
    """One spanning vector of the right kernel (rank n-1 expected)."""
    m = coerce(m)
    if is_exact(m):
        basis = nullspace(m)
        if len(basis) != 1:
            raise ValueError(f"kernel dimension {len(basis)} != 1")
        return basis[0]
    mf = pfloat(m)
    _, s, vh = np.linalg.svd(mf)
    if s[-2] < RANK_TOL * s[0]:
        raise ValueError("kernel dimension > 1")
    return np.conj(vh[-1])


def left_kernel(m: np.ndarray):
    return right_kernel(coerce(m).T)


def kernel_right_left(m: np.ndarray):
    """Right and left kernel vectors (e_x, e_y) of a rank-two 3x3 matrix."""
    m = coerce(m)
    r = matrix_rank(m)
    if r != 2:
        raise ValueError(f"matrix has rank {r}, expected 2")
    return right_kernel(m), left_kernel(m)

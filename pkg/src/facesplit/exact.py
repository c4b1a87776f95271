"""Exact rational linear algebra on numpy object arrays.

Exact matrices and vectors are numpy arrays with ``dtype=object`` whose
entries are Python ``int`` or ``fractions.Fraction``.  Every routine in
this module is exact: no floating point is ever introduced.  Numeric
(float/complex) counterparts live in :mod:`facesplit.projective`.

Rank and determinant use fraction-free (Bareiss) elimination on integer
rows; nullspaces come from a reduced row echelon form over Q and are
returned as primitive integer vectors, which makes every basis canonical
and reproducible.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

__all__ = [
    "exact_array",
    "is_exact",
    "as_fraction",
    "to_float",
    "primitive",
    "row_to_int",
    "bareiss_rank",
    "bareiss_det",
    "rref",
    "nullspace",
    "solve",
    "inverse",
    "mat_rank",
    "cross3",
]


def exact_array(data) -> np.ndarray:
    """Build an object-dtype array of int/Fraction entries from nested data.

    Accepts ints, Fractions and strings like ``"-3/7"``; rejects floats,
    which would silently break exactness.
    """
    def conv(v):
        if isinstance(v, (list, tuple, np.ndarray)):
            return [conv(w) for w in v]
        if isinstance(v, Fraction):
            return v if v.denominator != 1 else int(v)
        if isinstance(v, (int, np.integer)):
            return int(v)
        if isinstance(v, str):
            f = Fraction(v)
            return int(f) if f.denominator == 1 else f
        raise TypeError(f"not an exact scalar: {v!r}")

    arr = np.array(conv(data), dtype=object)
    return arr


def is_exact(a) -> bool:
    """True when `a` is an object-dtype (exact) array."""
    return isinstance(a, np.ndarray) and a.dtype == object


def as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    raise TypeError(f"not an exact scalar: {v!r}")


def to_float(a: np.ndarray, complex_: bool = False) -> np.ndarray:
    """Convert an exact (or numeric) array to float64/complex128.

    Complex input stays complex even when complex_ is False (no silent
    truncation of imaginary parts).
    """
    a = np.asarray(a)
    if is_exact(a):
        dt = np.complex128 if complex_ else np.float64
        flat = [complex(v) if complex_ else float(v) for v in a.ravel()]
        return np.array(flat, dtype=dt).reshape(a.shape)
    if complex_ or np.iscomplexobj(a):
        return np.asarray(a, dtype=np.complex128)
    return np.asarray(a, dtype=np.float64)


def primitive(vec) -> np.ndarray:
    """Canonical exact representative: primitive integer vector, positive lead.

    Divides out the gcd after clearing denominators and flips sign so the
    first nonzero entry is positive.  Raises on the zero vector.
    """
    flat = [as_fraction(v) for v in np.asarray(vec, dtype=object).ravel()]
    den = 1
    for f in flat:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in flat]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    ints = [v // g for v in ints]
    lead = next(v for v in ints if v != 0)
    if lead < 0:
        ints = [-v for v in ints]
    out = np.array(ints, dtype=object)
    return out.reshape(np.shape(vec))


def row_to_int(row) -> list[int]:
    """Clear denominators of one row (content is kept, sign preserved)."""
    fr = [as_fraction(v) for v in row]
    den = 1
    for f in fr:
        den = lcm(den, f.denominator)
    return [int(f * den) for f in fr]


def _int_rows(m: np.ndarray) -> list[list[int]]:
    return [row_to_int(row) for row in m]


def bareiss_rank(m: np.ndarray) -> int:
    """Rank by fraction-free Gaussian (Bareiss) elimination, any shape."""
    a = _int_rows(m)
    nrows = len(a)
    if nrows == 0:
        return 0
    ncols = len(a[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if a[r][col] != 0), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        p = a[rank][col]
        for r in range(rank + 1, nrows):
            for c in range(col + 1, ncols):
                a[r][c] = (p * a[r][c] - a[r][col] * a[rank][c]) // prev
            a[r][col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def bareiss_det(m: np.ndarray) -> Fraction:
    """Exact determinant of a square matrix (Bareiss on cleared rows)."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = []
    scale = Fraction(1)
    for row in m:
        fr = [as_fraction(v) for v in row]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        scale /= den
        a.append([int(f * den) for f in fr])
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((r for r in range(k, n) if a[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        p = a[k][k]
        for r in range(k + 1, n):
            for c in range(k + 1, n):
                a[r][c] = (p * a[r][c] - a[r][k] * a[k][c]) // prev
            a[r][k] = 0
        prev = p
    val = scale * sign * a[n - 1][n - 1]
    return int(val) if val.denominator == 1 else val


def rref(m: np.ndarray) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over Q; returns (R, pivot columns)."""
    a = [[as_fraction(v) for v in row] for row in m]
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [v / p for v in a[r]]
        for i in range(nrows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return np.array(a, dtype=object), pivots


def nullspace(m: np.ndarray) -> list[np.ndarray]:
    """Canonical exact basis of the right nullspace, primitive integer vectors.

    One basis vector per free column of the RREF, in column order.
    """
    R, pivots = rref(m)
    ncols = m.shape[1]
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -as_fraction(R[r][fc])
        basis.append(primitive(np.array(v, dtype=object)))
    return basis


def solve(m: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact solution of a square nonsingular system m x = b."""
    n = len(m)
    aug = np.concatenate([m, np.asarray(b, dtype=object).reshape(n, 1)], axis=1)
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular system")
    return np.array([R[i][n] for i in range(n)], dtype=object)


def inverse(m: np.ndarray) -> np.ndarray:
    """Exact inverse of a square nonsingular matrix."""
    n = len(m)
    eye = np.array([[Fraction(int(i == j)) for j in range(n)] for i in range(n)],
                   dtype=object)
    aug = np.concatenate([np.asarray(m, dtype=object), eye], axis=1)
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


def mat_rank(m: np.ndarray) -> int:
    """Alias kept for call sites that read better with a generic name."""
    return bareiss_rank(m)


def cross3(a, b) -> np.ndarray:
    """Cross product that works for exact and numeric 3-vectors alike."""
    out = [a[1] * b[2] - a[2] * b[1],
           a[2] * b[0] - a[0] * b[2],
           a[0] * b[1] - a[1] * b[0]]
    if isinstance(out[0], (int, Fraction)):
        return np.array(out, dtype=object)
    return np.array(out)

"""Ternary linear, quadratic and cubic form helpers.

Cubic forms are 10-coefficient vectors in the fixed monomial order

    u1^3, u1^2 u2, u1^2 u3, u1 u2^2, u1 u2 u3, u1 u3^2,
    u2^3, u2^2 u3, u2 u3^2, u3^3

shared by every construction path, so proportionality of curves reduces
to proportionality of coefficient vectors.  Quadratic forms are carried
as symmetric 3x3 Gram matrices (Fraction halves keep them exact).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .exact import is_exact
from .projective import coerce, pfloat

__all__ = [
    "CUBIC_MONOMIALS",
    "QUAD_MONOMIALS",
    "cubic_eval",
    "cubic_from_terms",
    "linear_triple_product",
    "det_of_linear_columns",
    "quad_eval",
    "quad_gram_to_coeffs",
    "quad_conjugate",
    "transform_cubic",
    "form_is_zero",
]

CUBIC_MONOMIALS = ((3, 0, 0), (2, 1, 0), (2, 0, 1), (1, 2, 0), (1, 1, 1),
                   (1, 0, 2), (0, 3, 0), (0, 2, 1), (0, 1, 2), (0, 0, 3))
_CUBIC_INDEX = {m: i for i, m in enumerate(CUBIC_MONOMIALS)}

QUAD_MONOMIALS = ((2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1), (0, 0, 2))


def _zero(exact: bool):
    return 0 if exact else 0.0


def cubic_from_terms(terms: dict, exact: bool = True) -> np.ndarray:
    """Assemble a 10-vector from an exponent-tuple -> coefficient dict."""
    out = [_zero(exact)] * 10
    for mono, c in terms.items():
        out[_CUBIC_INDEX[mono]] += c
    return np.array(out, dtype=object if exact else None)


def cubic_eval(coeffs, u):
    """Evaluate a cubic coefficient vector at a 3-vector."""
    total = None
    for c, (i, j, k) in zip(coeffs, CUBIC_MONOMIALS):
        term = c * u[0] ** i * u[1] ** j * u[2] ** k
        total = term if total is None else total + term
    return total


def linear_triple_product(l1, l2, l3) -> dict:
    """Expand the product of three linear forms into a monomial dict."""
    terms: dict = {}
    for a in range(3):
        ca = l1[a]
        if ca == 0:
            continue
        for b in range(3):
            cb = l2[b]
            if cb == 0:
                continue
            cab = ca * cb
            for c in range(3):
                cc = l3[c]
                if cc == 0:
                    continue
                e = [0, 0, 0]
                e[a] += 1
                e[b] += 1
                e[c] += 1
                key = tuple(e)
                terms[key] = terms.get(key, 0) + cab * cc
    return terms


_PERMS = (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
          ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1))


def det_of_linear_columns(col_forms) -> np.ndarray:
    """Cubic form det[L1(u) L2(u) L3(u)] where column j has rows linear in u.

    `col_forms[j][i]` is the coefficient 3-vector of the (i, j) entry.
    """
    exact = all(is_exact(coerce(row)) for col in col_forms for row in col)
    terms: dict = {}
    for perm, sign in _PERMS:
        prod = linear_triple_product(col_forms[0][perm[0]],
                                     col_forms[1][perm[1]],
                                     col_forms[2][perm[2]])
        for key, c in prod.items():
            terms[key] = terms.get(key, 0) + sign * c
    return cubic_from_terms(terms, exact=exact)


def quad_eval(gram, x):
    """x^T G x for a 3x3 (or 4x4) Gram matrix."""
    return x @ gram @ x


def quad_gram_to_coeffs(gram) -> np.ndarray:
    """Gram matrix to the 6-vector over :data:`QUAD_MONOMIALS`."""
    g = np.asarray(gram)
    out = [g[0][0], 2 * g[0][1], 2 * g[0][2], g[1][1], 2 * g[1][2], g[2][2]]
    return np.array(out, dtype=object if is_exact(g) else None)


def quad_conjugate(gram, h) -> np.ndarray:
    """Gram of the form pulled back along x -> h x (i.e. h^T G h)."""
    return np.asarray(h).T @ np.asarray(gram) @ np.asarray(h)


def transform_cubic(coeffs, h) -> np.ndarray:
    """Coefficients of u -> g(h u) for a cubic coefficient vector g.

    Each monomial of g becomes a product of three rows of h viewed as
    linear forms; exactness is preserved for exact inputs.
    """
    h = coerce(h)
    exact = is_exact(h) and is_exact(coerce(coeffs))
    terms: dict = {}
    for c, (i, j, k) in zip(coeffs, CUBIC_MONOMIALS):
        if c == 0:
            continue
        rows = [h[0, :]] * i + [h[1, :]] * j + [h[2, :]] * k
        for key, v in linear_triple_product(*rows).items():
            terms[key] = terms.get(key, 0) + c * v
    return cubic_from_terms(terms, exact=exact)


def form_is_zero(coeffs, tol: float = 0.0) -> bool:
    c = np.asarray(coeffs)
    if is_exact(c):
        return all(v == 0 for v in c.ravel())
    cf = pfloat(c)
    return bool(np.max(np.abs(cf)) <= tol)

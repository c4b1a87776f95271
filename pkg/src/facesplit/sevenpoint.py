"""The 14-value certificate and epipole intersection for seven pairs.

For seven pairs, deleting pair i leaves six pairs with hexahedral curves
g_x^i, g_y^i; rank deficiency of Z_7 forces all fourteen evaluations
g_x^i(x_i), g_y^i(y_i) to vanish and the seven curves on each side to
coincide.  The vanishing is necessary unconditionally (the values lie in
the ideal of maximal minors) but only sufficient under semi-genericity,
so the certificate reports the exact rank as the verdict and flags the
degenerate all-zero / full-rank combination as inconclusive.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass

import numpy as np

from . import exact as ex
from .cubics import COBLE_LETTERS, COBLE_TERMS, CubicCurve, hexahedral_cubic
from .projective import pfloat, proportional
from .trinity import matrix_line, rank_two_on_line
from .zmatrix import PointPairConfig, build_z, is_semi_generic, rank_and_nullspace

__all__ = [
    "Certificate7",
    "certificate_values",
    "certificate_residuals",
    "rank7_certify",
    "epipoles_by_intersection",
]


def _bracket_table(points, exact: bool) -> dict:
    out = {}
    n = len(points)
    for i, j, k in itertools.combinations(range(n), 3):
        if exact:
            m = np.array([list(points[i]), list(points[j]), list(points[k])],
                         dtype=object).T
            out[(i, j, k)] = ex.bareiss_det(m)
        else:
            m = np.array([points[i], points[j], points[k]], dtype=float).T
            out[(i, j, k)] = float(np.linalg.det(m))
    return out


def _bk(table, i, j, k):
    trip = (i, j, k)
    order = tuple(sorted(trip))
    val = table[order]
    perm = [order.index(t) for t in trip]
    inv = sum(1 for a in range(3) for b in range(a + 1, 3) if perm[a] > perm[b])
    return -val if inv % 2 else val


def certificate_values(cfg: PointPairConfig):
    """The 14 evaluations g_x^i(x_i), g_y^i(y_i) straight from brackets.

    All determinants live inside the two 7-point bracket tables, so no
    curve expansion is needed; exact input gives exact values.
    """
    if cfg.k != 7:
        raise ValueError("certificate values need exactly 7 pairs")
    exact = cfg.exact
    xs = cfg.xs() if exact else [pfloat(x, complex_=False) for x in cfg.xs()]
    ys = cfg.ys() if exact else [pfloat(y, complex_=False) for y in cfg.ys()]
    tx = _bracket_table(xs, exact)
    ty = _bracket_table(ys, exact)
    vals_x, vals_y = [], []
    for i in range(7):
        rest = [j for j in range(7) if j != i]   # local 1..6 -> rest[local-1]
        vx = 0
        vy = 0
        for letter in COBLE_LETTERS:
            sc_y = 0
            sc_x = 0
            cube_x = 0
            cube_y = 0
            for (a, b), (c, d), (r, s) in COBLE_TERMS[letter]:
                ga, gb, gc, gd, gr, gs = (rest[a - 1], rest[b - 1], rest[c - 1],
                                          rest[d - 1], rest[r - 1], rest[s - 1])
                sc_y += (_bk(ty, ga, gb, gr) * _bk(ty, gc, gd, gs)
                         - _bk(ty, ga, gb, gs) * _bk(ty, gc, gd, gr))
                sc_x += (_bk(tx, ga, gb, gr) * _bk(tx, gc, gd, gs)
                         - _bk(tx, ga, gb, gs) * _bk(tx, gc, gd, gr))
                cube_x += _bk(tx, ga, gb, i) * _bk(tx, gc, gd, i) * _bk(tx, gr, gs, i)
                cube_y += _bk(ty, ga, gb, i) * _bk(ty, gc, gd, i) * _bk(ty, gr, gs, i)
            vx += sc_y * cube_x
            vy += sc_x * cube_y
        vals_x.append(vx)
        vals_y.append(vy)
    return tuple(vals_x), tuple(vals_y)


def certificate_residuals(cfg: PointPairConfig):
    """Scale-free float residuals of the 14 certificate values.

    Each value is normalized by the norm of its hatted curve and the cubed
    norm of the evaluated point, matching the curve-membership convention.
    """
    if cfg.k != 7:
        raise ValueError("certificate residuals need exactly 7 pairs")
    cfgf = cfg.to_float()
    res_x, res_y = [], []
    for i in range(7):
        sub = cfgf.drop(i)
        gx = hexahedral_cubic(sub, "x")
        gy = hexahedral_cubic(sub, "y")
        x = pfloat(cfgf.pairs[i][0], complex_=False)
        y = pfloat(cfgf.pairs[i][1], complex_=False)
        nx = np.linalg.norm(pfloat(gx.coeffs, complex_=False))
        ny = np.linalg.norm(pfloat(gy.coeffs, complex_=False))
        res_x.append(abs(gx(x)) / (nx * np.linalg.norm(x) ** 3))
        res_y.append(abs(gy(y)) / (ny * np.linalg.norm(y) ** 3))
    return tuple(res_x), tuple(res_y)


@dataclass(frozen=True, eq=False)
class Certificate7:
    """Everything the seven-pair decision rests on, JSON-serializable."""

    values_x: tuple
    values_y: tuple
    values_all_zero: bool
    curves_x: tuple            # CubicCurve or None per dropped index
    curves_y: tuple
    curves_x_equal: tuple      # per-index: proportional to the first usable curve
    curves_y_equal: tuple
    x_curves_coincide: bool
    y_curves_coincide: bool
    rank: int
    nullspace: tuple
    semi_generic: bool
    deficient: bool
    inconclusive: bool
    flags: tuple


def _curve_family(cfg: PointPairConfig, side: str):
    curves = []
    flags = []
    for i in range(7):
        try:
            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                curves.append(hexahedral_cubic(cfg.drop(i), side))
        except ValueError:
            curves.append(None)
            flags.append(f"degenerate {side}-curve with pair {i} dropped")
    reference = next((c for c in curves if c is not None), None)
    equal = []
    for c in curves:
        if c is None or reference is None:
            equal.append(False)
        else:
            equal.append(c.proportional_to(reference))
    coincide = all(equal) and reference is not None
    return tuple(curves), tuple(equal), coincide, flags


def rank7_certify(cfg: PointPairConfig) -> Certificate7:
    """Exact rank-deficiency certificate for seven pairs.

    The verdict is rank(Z_7) < 7; the 14 values and curve coincidences
    are reported alongside it, with a flag when the all-zero value
    pattern fails to be conclusive (degenerate configurations).
    """
    if cfg.k != 7:
        raise ValueError("certificate requires exactly 7 pairs")
    if not cfg.exact:
        raise TypeError("certificate requires exact scalars; use numeric checks for floats")
    vals_x, vals_y = certificate_values(cfg)
    all_zero = all(v == 0 for v in vals_x) and all(v == 0 for v in vals_y)
    curves_x, eq_x, coincide_x, flags_x = _curve_family(cfg, "x")
    curves_y, eq_y, coincide_y, flags_y = _curve_family(cfg, "y")
    rank, basis = rank_and_nullspace(build_z(cfg))
    semi = is_semi_generic(cfg)
    deficient = rank < 7
    flags = list(flags_x + flags_y)
    inconclusive = all_zero and not deficient
    if inconclusive:
        flags.append("degenerate: 14-test inconclusive")
    if deficient and not all_zero:
        flags.append("deficient but nonzero certificate values, this contradicts "
                     "the necessity guarantee")
    return Certificate7(values_x=vals_x, values_y=vals_y, values_all_zero=all_zero,
                        curves_x=curves_x, curves_y=curves_y,
                        curves_x_equal=eq_x, curves_y_equal=eq_y,
                        x_curves_coincide=coincide_x, y_curves_coincide=coincide_y,
                        rank=rank, nullspace=tuple(basis), semi_generic=semi,
                        deficient=deficient, inconclusive=inconclusive,
                        flags=tuple(flags))


def _curve_to_sympy(curve: CubicCurve, syms):
    import sympy

    u1, u2, u3 = syms
    expr = sympy.Integer(0)
    from .forms import CUBIC_MONOMIALS

    for c, (i, j, k) in zip(curve.coeffs, CUBIC_MONOMIALS):
        if c == 0:
            continue
        expr += sympy.Rational(str(c)) * u1**i * u2**j * u3**k
    return expr


def _intersect_two_cubics(c1: CubicCurve, c2: CubicCurve):
    """Complex intersection points of two cubics via a u1-resultant.

    Falls back to a fixed unimodular coordinate change when a leading
    u1^3 coefficient vanishes; returns candidate points in the original
    coordinates.
    """
    import sympy

    from .forms import transform_cubic

    h = None
    a1, a2 = c1, c2
    if a1.coeffs[0] == 0 or a2.coeffs[0] == 0:
        h = ex.exact_array([[1, 1, 2], [0, 1, 1], [1, 0, 2]])   # det 1, fixed change
        assert ex.bareiss_det(h) != 0
        a1 = CubicCurve(transform_cubic(a1.coeffs, h))
        a2 = CubicCurve(transform_cubic(a2.coeffs, h))
        if a1.coeffs[0] == 0 or a2.coeffs[0] == 0:
            h2 = ex.exact_array([[2, 1, 1], [1, 2, 0], [1, 1, 1]])
            assert ex.bareiss_det(h2) != 0
            a1 = CubicCurve(transform_cubic(c1.coeffs, h2))
            a2 = CubicCurve(transform_cubic(c2.coeffs, h2))
            h = h2
    syms = sympy.symbols("u1 u2 u3")
    e1 = _curve_to_sympy(a1, syms)
    e2 = _curve_to_sympy(a2, syms)
    res = sympy.resultant(sympy.Poly(e1, syms[0]), sympy.Poly(e2, syms[0]))
    rp = sympy.Poly(sympy.expand(res), syms[1], syms[2])
    # binary form of degree 9 in (u2, u3); collect the dehomogenized roots
    coeffs = [0] * 10
    for (d2, d3), c in zip(rp.monoms(), rp.coeffs()):
        coeffs[9 - d2] = float(c)
    roots23 = []
    poly = np.trim_zeros(np.array(coeffs, dtype=complex), "f")
    if len(poly) > 1:
        lead = np.max(np.abs(poly))
        roots23 = [(r, 1.0) for r in np.roots(poly / lead)]
    if abs(coeffs[0]) == 0:
        roots23.append((1.0, 0.0))
    a1f = pfloat(a1.coeffs, complex_=False)
    pts = []
    for (r2, r3) in roots23:
        cube = [complex(v) for v in _restrict_u1(a1f, r2, r3)]
        arr = np.trim_zeros(np.array(cube, dtype=complex), "f")
        if len(arr) <= 1:
            continue
        for r1 in np.roots(arr / np.max(np.abs(arr))):
            pts.append(np.array([r1, r2, r3], dtype=complex))
    if h is not None:
        hf = pfloat(h)
        pts = [hf @ p for p in pts]
    return pts


def _restrict_u1(coeffs_f, u2, u3):
    """Coefficients (u1^3 .. u1^0) of a cubic evaluated at fixed (u2, u3)."""
    from .forms import CUBIC_MONOMIALS

    out = [0j, 0j, 0j, 0j]
    for c, (i, j, k) in zip(coeffs_f, CUBIC_MONOMIALS):
        out[3 - i] += complex(c) * u2**j * u3**k
    return out


def epipoles_by_intersection(cfg: PointPairConfig, tol: float = 1e-6):
    """The three possible epipoles per side of seven generic pairs.

    Intersects the first two hatted curves on each side and keeps the
    points lying on all seven; exactly three must survive.  The result is
    cross-validated against the kernels of the rank-two members of the
    nullspace line.
    """
    if cfg.k != 7:
        raise ValueError("epipole intersection needs exactly 7 pairs")
    rank, basis = rank_and_nullspace(build_z(cfg))
    if rank != 7 or len(basis) != 2:
        raise ValueError("configuration not generic enough: rank(Z_7) != 7")
    out = {}
    for side in ("x", "y"):
        curves = []
        for i in range(7):
            curves.append(hexahedral_cubic(cfg.drop(i), side))
        pts = _intersect_two_cubics(curves[0], curves[1])
        survivors = []
        for p in pts:
            norm = np.linalg.norm(p)
            if norm == 0:
                continue
            p = p / norm
            if all(c.as_float().contains(p, tol=tol) for c in curves):
                if not any(proportional(p, q, 1e-6) for q in survivors):
                    survivors.append(p)
        if len(survivors) != 3:
            raise ValueError(
                f"configuration not generic enough: {len(survivors)} common points "
                f"on the {side}-side curves, expected 3")
        out[side] = survivors
    line = matrix_line(basis[0], basis[1])
    if line.generic:
        for member in rank_two_on_line(line):
            e_x, e_y = member.epipoles
            if not any(proportional(pfloat(e_x), p, 1e-6) for p in out["x"]):
                raise AssertionError("intersection epipoles disagree with line kernels")
            if not any(proportional(pfloat(e_y), p, 1e-6) for p in out["y"]):
                raise AssertionError("intersection epipoles disagree with line kernels")
    return out["x"], out["y"]

"""Seeded generators for configurations with prescribed degeneracy.

Every mechanism is a pure function of its seed (bit-for-bit reproducible)
and returns the configuration together with the hidden ground truth that
certifies its label.  Exact mechanisms produce integer coordinates; the
curve-based seven-pair mechanism is float-typed because a rational point
on a generic cubic need not exist.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from . import exact as ex
from .cubics import kappa_cubic, restricted_map_image, third_intersection, hexahedral_cubic
from .exact import exact_array
from .projective import canonical, pfloat, proportional, rank_exact, rank_numeric
from .trinity import (
    CameraPair,
    Quadric3,
    conjugate_cremona,
    fundamental_matrix,
    standard_involution,
)
from .zmatrix import PointPairConfig, build_z, rank_and_nullspace, vec9

__all__ = [
    "GenSpec",
    "generate",
    "gen_k8_cremona",
    "gen_k8_quadric",
    "gen_k7",
    "gen_k7_chord",
    "gen_k9",
    "gen_k6_octad",
    "gen_homography",
    "gen_collinear",
    "gen_random",
    "rank_two_member_through",
]

MECHANISMS = ("cremona8", "quadric8", "cubic7", "rankT9", "homography",
              "collinear-side", "random", "octad6", "chord7")


@dataclass(frozen=True)
class GenSpec:
    """Mechanism, seed and optional parameters selecting a generator run."""

    mechanism: str
    seed: int
    k: int | None = None
    param: int | None = None

    def __post_init__(self):
        if self.mechanism not in MECHANISMS:
            raise ValueError(f"unknown mechanism {self.mechanism!r}")


def generate(spec: GenSpec):
    """Dispatch a GenSpec to its generator; returns (config, truth dict)."""
    m = spec.mechanism
    if m == "cremona8":
        cfg, f = gen_k8_cremona(spec.seed)
        return cfg, {"mechanism": m, "cremona": f}
    if m == "quadric8":
        cfg, q, cams = gen_k8_quadric(spec.seed)
        return cfg, {"mechanism": m, "quadric": q, "cams": cams}
    if m == "cubic7":
        cfg, truth = gen_k7(spec.seed)
        truth["mechanism"] = m
        return cfg, truth
    if m == "chord7":
        cfg, truth = gen_k7_chord(spec.seed)
        truth["mechanism"] = m
        return cfg, truth
    if m == "rankT9":
        if spec.param not in (1, 2, 3):
            raise ValueError("rankT9 needs param r in {1, 2, 3}")
        cfg, t = gen_k9(spec.seed, spec.param)
        return cfg, {"mechanism": m, "T": t, "r": spec.param}
    if m == "octad6":
        cfg, truth = gen_k6_octad(spec.seed)
        truth["mechanism"] = m
        return cfg, truth
    if m == "homography":
        cfg, h = gen_homography(spec.seed, k=spec.k or 7)
        return cfg, {"mechanism": m, "H": h}
    if m == "collinear-side":
        cfg, v = gen_collinear(spec.seed, k=spec.k or 7)
        return cfg, {"mechanism": m, "line_normal": v}
    cfg = gen_random(spec.seed, k=spec.k or 9)
    return cfg, {"mechanism": "random"}


def _distinct_sides(pairs) -> bool:
    xs = [x for x, _ in pairs]
    ys = [y for _, y in pairs]
    for pts in (xs, ys):
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if proportional(pts[i], pts[j]):
                    return False
    return True


def _vec(rng, lo=-9, hi=9, n=3):
    while True:
        v = [rng.randint(lo, hi) for _ in range(n)]
        if any(v):
            return exact_array(v)


def _invertible(rng, n=3, lo=-5, hi=5):
    while True:
        m = exact_array([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if ex.bareiss_det(m) != 0:
            return m


def gen_k8_cremona(seed: int):
    """Eight pairs on the graph of a random Cremona map; rank(Z_8) <= 7.

    The map is a random homography conjugate of the standard involution;
    sample points are kept off its exceptional lines.
    """
    rng = random.Random(seed)
    h1 = _invertible(rng)
    h2 = _invertible(rng)
    f = conjugate_cremona(h1, standard_involution(), h2)
    pairs = []
    while len(pairs) < 8:
        x = _vec(rng)
        if any(v == 0 for v in h2 @ x):   # exceptional lines of the conjugate
            continue
        y = f(x)
        if not any(v != 0 for v in y):
            continue
        x, y = canonical(x), canonical(y)
        if any(proportional(x, px) for px, _ in pairs):
            continue
        pairs.append((x, y))
    return PointPairConfig(tuple(pairs)), f


def _chord_point(rng, gram, p0):
    """Rational point on the quadric via the chord through a known point."""
    while True:
        d = _vec(rng, n=4)
        dqd = d @ gram @ d
        pqd = p0 @ gram @ d
        p = dqd * p0 - 2 * pqd * d
        if any(v != 0 for v in p) and not proportional(p, p0):
            return canonical(p)


def _camera_at(rng, center):
    """Random exact rank-3 camera with the prescribed kernel."""
    rows = ex.nullspace(np.array([list(center)], dtype=object))
    n = np.array([list(r) for r in rows], dtype=object)
    r3 = _invertible(rng)
    return r3 @ n


def gen_k8_quadric(seed: int):
    """Eight pairs projected from rational points of a random smooth quadric.

    Returns the configuration with its ground truth (quadric, cameras).
    """
    rng = random.Random(seed)
    q0 = exact_array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, -1, 0], [0, 0, 0, -1]])
    p_base = exact_array([1, 0, 1, 0])
    for _ in range(200):
        r4 = _invertible(rng, n=4, lo=-3, hi=3)
        gram = r4.T @ q0 @ r4
        p0 = canonical(ex.inverse(r4) @ p_base)
        c1 = _chord_point(rng, gram, p0)
        c2 = _chord_point(rng, gram, p0)
        if proportional(c1, c2) or (c1 @ gram @ c2) == 0:
            continue
        a1 = _camera_at(rng, c1)
        a2 = _camera_at(rng, c2)
        cams = CameraPair(a1=a1, a2=a2, c1=c1, c2=c2)
        pts, pairs = [], []
        ok = True
        for _ in range(8):
            for _try in range(50):
                p = _chord_point(rng, gram, p0)
                if any(proportional(p, q) for q in pts) or proportional(p, c1) \
                        or proportional(p, c2):
                    continue
                pts.append(p)
                break
            else:
                ok = False
                break
            x = a1 @ pts[-1]
            y = a2 @ pts[-1]
            if not any(v != 0 for v in x) or not any(v != 0 for v in y):
                ok = False
                break
            pairs.append((canonical(x), canonical(y)))
        if not ok or not _distinct_sides(pairs):
            continue
        cfg = PointPairConfig(tuple(pairs))
        rank, basis = rank_and_nullspace(build_z(cfg))
        if rank != 7 or len(basis) != 2:
            continue
        return cfg, Quadric3(gram=gram), cams
    raise RuntimeError("quadric generator failed to find a valid sample")


def gen_k7(seed: int):
    """Float seven-pair sample: six exact pairs plus a curve point and image.

    The seventh point is a real root of the x-side epipolar cubic cut by a
    random rational line; its partner is the restricted-map image.  The
    output is float-typed (a rational curve point need not exist) and is
    numerically rank six.
    """
    rng = random.Random(seed)
    for _ in range(300):
        pairs = tuple((_vec(rng), _vec(rng)) for _ in range(6))
        if not _distinct_sides(pairs):
            continue
        try:
            cfg6 = PointPairConfig(pairs)
            rank, basis = rank_and_nullspace(build_z(cfg6))
            if rank != 6 or len(basis) != 3:
                continue
            gx = hexahedral_cubic(cfg6, "x").as_float()
        except ValueError:
            continue
        basis_f = [pfloat(b, complex_=False) for b in basis]
        x7 = None
        for _try in range(20):
            p = pfloat(_vec(rng), complex_=False)
            q = pfloat(_vec(rng), complex_=False)
            c3 = gx(q)
            c0 = gx(p)
            s1 = gx(p + q)
            s2 = gx(p - q)
            c2 = (s1 + s2) / 2 - c0
            c1 = (s1 - s2) / 2 - c3
            if abs(c3) < 1e-12:
                continue
            roots = np.roots([c3, c2, c1, c0])
            real = [r for r in roots if abs(r.imag) <= 1e-9 * (1 + abs(r))]
            if not real:
                continue
            lam = float(sorted(real, key=lambda r: abs(r))[0].real)
            cand = p + lam * q
            if np.linalg.norm(cand) < 1e-9:
                continue
            x7 = cand / np.linalg.norm(cand)
            break
        if x7 is None:
            continue
        try:
            y7 = restricted_map_image(basis_f, x7)
        except ValueError:
            continue
        y7 = y7 / np.linalg.norm(y7)
        cfg7 = PointPairConfig(tuple((pfloat(x, complex_=False), pfloat(y, complex_=False))
                                     for x, y in pairs) + ((x7, y7),))
        z = pfloat(build_z(cfg7), complex_=False)
        if rank_numeric(z) != 6:
            continue
        if any(rank_numeric(pfloat(build_z(cfg7.drop(i)), complex_=False)) != 6
               for i in range(7)):
            continue
        return cfg7, {"six_exact": cfg6, "x7": x7, "y7": y7,
                      "label": "numerically deficient"}
    raise RuntimeError("cubic7 generator failed to find a valid sample")


def gen_k7_chord(seed: int):
    """Exact deficient seven-pair sample via the chord trick.

    The seventh x-point is the third intersection of the epipolar cubic
    with a chord through two input points, hence rational; the partner is
    the exact restricted-map image.  A second chord point is recorded so
    callers can pick a rational rank-two member away from the inputs.
    """
    rng = random.Random(seed)
    for _ in range(500):
        pairs = tuple((_vec(rng, lo=-6, hi=6), _vec(rng, lo=-6, hi=6)) for _ in range(6))
        if not _distinct_sides(pairs):
            continue
        try:
            cfg6 = PointPairConfig(pairs)
        except ValueError:
            continue
        rank, basis = rank_and_nullspace(build_z(cfg6))
        if rank != 6 or len(basis) != 3:
            continue
        try:
            curve = kappa_cubic(basis, "x")
        except ValueError:
            continue
        idx = list(range(6))
        rng.shuffle(idx)
        chords = [(idx[0], idx[1]), (idx[2], idx[3]), (idx[4], idx[5]),
                  (idx[0], idx[2]), (idx[1], idx[3])]
        found = []
        for a, b in chords:
            try:
                pt = third_intersection(curve, cfg6.pairs[a][0], cfg6.pairs[b][0])
            except ValueError:
                continue
            if any(proportional(pt, x) for x, _ in pairs) or \
                    any(proportional(pt, f) for f in found):
                continue
            found.append(pt)
            if len(found) == 2:
                break
        if len(found) < 2:
            continue
        x7, x_extra = found
        try:
            y7 = restricted_map_image(basis, x7)
        except ValueError:
            continue
        cfg7 = PointPairConfig(cfg6.pairs + ((x7, y7),))
        if not _distinct_sides(cfg7.pairs):
            continue
        rank7, basis7 = rank_and_nullspace(build_z(cfg7))
        if rank7 != 6:
            continue
        if any(rank_exact(build_z(cfg7.drop(i))) != 6 for i in range(7)):
            continue
        return cfg7, {"six_exact": cfg6, "x7": x7, "y7": y7, "extra_curve_point": x_extra,
                      "nullspace": tuple(basis7)}
    raise RuntimeError("chord7 generator failed to find a valid sample")


def rank_two_member_through(basis, x):
    """The nullspace-plane member annihilating a given curve point.

    Solves for the unique combination of the basis with M x = 0; the
    result has rank two with right kernel x when x is a smooth curve
    point.
    """
    cols = np.array([list(b @ x) for b in basis], dtype=object).T
    combo = ex.nullspace(cols)
    if len(combo) != 1:
        raise ValueError("point does not determine a unique member")
    coeffs = combo[0]
    total = None
    for c, b in zip(coeffs, basis):
        term = c * b
        total = term if total is None else total + term
    m = ex.exact_array([[v for v in row] for row in total])
    if rank_exact(m) != 2:
        raise ValueError("member through the point is not rank two")
    return np.asarray(total)


def gen_k9(seed: int, r: int):
    """Nine pairs with a prescribed rank-r nullspace witness, exact.

    r = 2, 3 place y_i on the line with normal T x_i; r = 1 uses the
    split construction (part of the x's on one line, the complementary
    y's on another) so the nullspace stays one-dimensional.
    """
    rng = random.Random(seed)
    for _ in range(500):
        if r == 1:
            u, v = _vec(rng), _vec(rng)
            t_mat = np.outer(u, v)
            s = rng.randint(4, 5)
            on_x = set(rng.sample(range(9), s))
            vx = ex.nullspace(np.array([list(v)], dtype=object))
            uy = ex.nullspace(np.array([list(u)], dtype=object))
            pairs = []
            for i in range(9):
                if i in on_x:
                    a, b = rng.randint(-9, 9), rng.randint(-9, 9)
                    x = a * vx[0] + b * vx[1]
                    y = _vec(rng)
                else:
                    x = _vec(rng)
                    a, b = rng.randint(-9, 9), rng.randint(-9, 9)
                    y = a * uy[0] + b * uy[1]
                if not any(val != 0 for val in x) or not any(val != 0 for val in y):
                    break
                pairs.append((canonical(x), canonical(y)))
            if len(pairs) != 9:
                continue
        else:
            if r == 2:
                t_mat = np.outer(_vec(rng), _vec(rng)) + np.outer(_vec(rng), _vec(rng))
            else:
                t_mat = _invertible(rng, lo=-9, hi=9)
            if rank_exact(t_mat) != r:
                continue
            pairs = []
            for _i in range(9):
                for _try in range(50):
                    x = _vec(rng)
                    normal = t_mat @ x
                    if not any(val != 0 for val in normal):
                        continue
                    span = ex.nullspace(np.array([list(normal)], dtype=object))
                    a, b = rng.randint(-9, 9), rng.randint(-9, 9)
                    y = a * span[0] + b * span[1]
                    if any(val != 0 for val in y):
                        pairs.append((canonical(x), canonical(y)))
                        break
                else:
                    break
            if len(pairs) != 9:
                continue
        cfg = PointPairConfig(tuple(pairs))
        rank, basis = rank_and_nullspace(build_z(cfg))
        if rank != 8 or len(basis) != 1:
            continue
        if not proportional(vec9(basis[0]), vec9(t_mat)):
            continue
        return cfg, canonical(np.asarray(t_mat))
    raise RuntimeError("rankT9 generator failed to find a valid sample")


def gen_k6_octad(seed: int):
    """Six pairs whose reconstruction completes to a rational octad.

    The eight sign-flip points (+-q1 : +-q2 : +-q3 : +-q4) are the exact
    base locus of the net of diagonal quadrics through any one of them;
    two of them serve as camera centers, the remaining six project to the
    pairs.  Z_6 then has rank five.
    """
    rng = random.Random(seed)
    for _ in range(500):
        q = [rng.randint(1, 9) for _ in range(4)]
        signs = [(1, s2, s3, s4) for s2 in (1, -1) for s3 in (1, -1) for s4 in (1, -1)]
        pts = [exact_array([s[i] * q[i] for i in range(4)]) for s in signs]
        order = list(range(8))
        rng.shuffle(order)
        c1, c2 = pts[order[0]], pts[order[1]]
        world = [pts[i] for i in order[2:]]
        a1 = _camera_at(rng, c1)
        a2 = _camera_at(rng, c2)
        cams = CameraPair(a1=a1, a2=a2, c1=canonical(c1), c2=canonical(c2))
        pairs = []
        ok = True
        for p in world:
            x, y = a1 @ p, a2 @ p
            if not any(v != 0 for v in x) or not any(v != 0 for v in y):
                ok = False
                break
            pairs.append((canonical(x), canonical(y)))
        if not ok:
            continue
        if any(proportional(pairs[i][0], pairs[j][0])
               for i in range(6) for j in range(i + 1, 6)):
            continue
        cfg = PointPairConfig(tuple(pairs))
        rank, basis = rank_and_nullspace(build_z(cfg))
        if rank != 5 or len(basis) != 4:
            continue
        f_mat = fundamental_matrix(cams)
        if rank_exact(f_mat) != 2:
            continue
        annihilates = any(not any(v != 0 for v in f_mat @ x) or
                          not any(v != 0 for v in y @ f_mat) for x, y in pairs)
        if annihilates:
            continue
        return cfg, {"octad": tuple(canonical(p) for p in pts), "cams": cams,
                     "F": f_mat}
    raise RuntimeError("octad6 generator failed to find a valid sample")


def gen_homography(seed: int, k: int = 7, identity: bool = False):
    """k pairs related by a fixed homography y_i = H x_i (rank drops for k=7)."""
    rng = random.Random(seed)
    h = exact_array([[1, 0, 0], [0, 1, 0], [0, 0, 1]]) if identity else _invertible(rng)
    pairs = []
    while len(pairs) < k:
        x = _vec(rng)
        y = h @ x
        if not any(v != 0 for v in y):
            continue
        if any(proportional(x, px) for px, _ in pairs):
            continue
        pairs.append((canonical(x), canonical(y)))
    return PointPairConfig(tuple(pairs)), h


def gen_collinear(seed: int, k: int = 7, side: str = "x"):
    """k pairs with one side on a line (the other side random)."""
    rng = random.Random(seed)
    normal = _vec(rng)
    span = ex.nullspace(np.array([list(normal)], dtype=object))
    pairs = []
    while len(pairs) < k:
        a, b = rng.randint(-9, 9), rng.randint(-9, 9)
        on_line = a * span[0] + b * span[1]
        if not any(v != 0 for v in on_line):
            continue
        other = _vec(rng)
        pair = (canonical(on_line), other) if side == "x" else (other, canonical(on_line))
        if any(proportional(pair[0], px) for px, _ in pairs):
            continue
        pairs.append(pair)
    return PointPairConfig(tuple(pairs)), canonical(normal)


def gen_random(seed: int, k: int = 9) -> PointPairConfig:
    rng = random.Random(seed)
    return PointPairConfig(tuple((_vec(rng), _vec(rng)) for _ in range(k)))

"""Rank-deficiency certificate for nine point pairs.

Z_9 is square, so deficiency is det(Z_9) = 0; a nullspace generator T
with y_i^T T x_i = 0 is then classified by rank.  Rank one factors into a
pair of lines splitting the indices, rank two gives a homography between
the line pencils through the two kernel points, rank three is witnessed
by the bilinear residuals alone.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import exact as ex
from .projective import (
    canonical,
    coerce,
    kernel_right_left,
    proportional,
    rank_exact,
    skew_matrix,
)
from .zmatrix import PointPairConfig, build_z, rank_and_nullspace, vec9

__all__ = [
    "Case1Evidence",
    "Case2Evidence",
    "Case3Evidence",
    "Certificate9",
    "rank9_certify",
    "verify_case2_homography",
]


@dataclass(frozen=True, eq=False)
class Case1Evidence:
    """T = u v^T: lines with normals v (x side) and u (y side)."""

    line_x_normal: np.ndarray
    line_y_normal: np.ndarray
    memberships: tuple    # per index: "x", "y" or "both"


@dataclass(frozen=True, eq=False)
class Case2Evidence:
    """Rank-two T: kernel points and the pencil homography T [n]_x."""

    e: np.ndarray
    e_prime: np.ndarray
    n: np.ndarray
    homography: np.ndarray
    statuses: tuple       # per index: "verified", "skipped-x", "skipped-y"


@dataclass(frozen=True, eq=False)
class Case3Evidence:
    """Rank-three T: the bilinear residuals themselves."""

    residuals: tuple


@dataclass(frozen=True, eq=False)
class Certificate9:
    deficient: bool
    rank: int
    nullspace: tuple
    T: np.ndarray | None
    rank_T: int | None
    case: int | None
    evidence: object | None
    multiply_deficient: bool


def _case1(t_mat, cfg):
    col = next(j for j in range(3) if any(t_mat[i, j] != 0 for i in range(3)))
    u = canonical(t_mat[:, col])
    row = next(i for i in range(3) if u[i] != 0)
    v = canonical(t_mat[row, :])
    if not proportional(vec9(np.outer(u, v)), vec9(t_mat)):
        raise AssertionError("rank-one factorization failed")
    members = []
    for x, y in cfg.pairs:
        on_x = (v @ x) == 0
        on_y = (u @ y) == 0
        if not on_x and not on_y:
            raise AssertionError("case-1 membership violated, this is a bug")
        members.append("both" if on_x and on_y else ("x" if on_x else "y"))
    return Case1Evidence(line_x_normal=v, line_y_normal=u, memberships=tuple(members))


def verify_case2_homography(t_mat, cfg: PointPairConfig, n) -> Case2Evidence:
    """Per-index verification that T [n]_x maps pencil lines correctly.

    For every pair with x_i not the right kernel e and y_i not the left
    kernel e', the line normal [e']_x y_i must be proportional to
    (T [n]_x) ([e]_x x_i); the two kernel coincidences are skipped, which
    is the only failure mode of the pencil construction.
    """
    t_mat = coerce(t_mat)
    if rank_exact(t_mat) != 2:
        raise ValueError("case-2 verification needs a rank-two matrix")
    e, e_prime = kernel_right_left(t_mat)
    n = coerce(n)
    if (e @ n) == 0:
        raise ValueError("chosen line passes through e: e^T n = 0")
    hom = t_mat @ skew_matrix(n)
    statuses = []
    for x, y in cfg.pairs:
        if proportional(x, e):
            statuses.append("skipped-x")
            continue
        if proportional(y, e_prime):
            statuses.append("skipped-y")
            continue
        lhs = skew_matrix(e_prime) @ y
        rhs = hom @ (skew_matrix(e) @ x)
        if not proportional(lhs, rhs):
            statuses.append("failed")
        else:
            statuses.append("verified")
    return Case2Evidence(e=canonical(e), e_prime=canonical(e_prime), n=n,
                         homography=hom, statuses=tuple(statuses))


def _default_case2_n(e):
    if (e @ e) != 0:
        return e
    for i in range(3):
        n = ex.exact_array([1 if t == i else 0 for t in range(3)])
        if (e @ n) != 0:
            return n
    raise AssertionError("no coordinate vector meets e, impossible")


def rank9_certify(cfg: PointPairConfig) -> Certificate9:
    """Decide rank deficiency of Z_9 and classify the witness by rank.

    A nullspace of dimension greater than one is reported as multiply
    deficient with its basis and no single-case classification.
    """
    if cfg.k != 9:
        raise ValueError("certificate requires exactly 9 pairs")
    if not cfg.exact:
        raise TypeError("certificate requires exact scalars")
    z = build_z(cfg)
    rank, basis = rank_and_nullspace(z)
    if rank == 9:
        return Certificate9(deficient=False, rank=9, nullspace=(), T=None,
                            rank_T=None, case=None, evidence=None,
                            multiply_deficient=False)
    if len(basis) > 1:
        return Certificate9(deficient=True, rank=rank, nullspace=tuple(basis),
                            T=None, rank_T=None, case=None, evidence=None,
                            multiply_deficient=True)
    t_mat = basis[0]
    for x, y in cfg.pairs:
        if (y @ t_mat @ x) != 0:
            raise AssertionError("nullspace residual nonzero, this is a bug")
    r = rank_exact(t_mat)
    if r == 1:
        evidence = _case1(t_mat, cfg)
    elif r == 2:
        e, _ = kernel_right_left(t_mat)
        evidence = verify_case2_homography(t_mat, cfg, _default_case2_n(e))
    else:
        evidence = Case3Evidence(residuals=tuple(y @ t_mat @ x for x, y in cfg.pairs))
    return Certificate9(deficient=True, rank=rank, nullspace=(t_mat,), T=t_mat,
                        rank_T=r, case=r, evidence=evidence,
                        multiply_deficient=False)

import numpy as np
import pytest

from facesplit import (
    GenSpec,
    PointPairConfig,
    build_z,
    config_to_json,
    exact_array,
    gen_collinear,
    gen_homography,
    gen_k6_octad,
    gen_k7,
    gen_k7_chord,
    gen_k8_cremona,
    gen_k8_quadric,
    gen_k9,
    generate,
    line_to_cremona,
    matrix_line,
    proportional,
    quadric_from_line,
    rank_and_nullspace,
    rank_exact,
    rank_numeric,
    rank_two_on_line,
    standard_involution,
    fundamental_matrix,
)
from facesplit.projective import pfloat


def test_determinism_bit_for_bit():
    for spec in (GenSpec("cremona8", 5), GenSpec("quadric8", 5),
                 GenSpec("cubic7", 5), GenSpec("chord7", 5),
                 GenSpec("rankT9", 5, param=2), GenSpec("octad6", 5),
                 GenSpec("homography", 5, k=7), GenSpec("collinear-side", 5, k=7),
                 GenSpec("random", 5, k=8)):
        a, _ = generate(spec)
        b, _ = generate(spec)
        assert config_to_json(a) == config_to_json(b)


def test_unknown_mechanism_rejected():
    with pytest.raises(ValueError):
        GenSpec("nope", 1)
    with pytest.raises(ValueError):
        generate(GenSpec("rankT9", 1, param=7))


def test_cremona_identity_conjugate_column_structure():
    # with both homographies trivial the involution graph forces the first,
    # fifth and ninth columns of Z to coincide
    f = standard_involution()
    pts = [exact_array(p) for p in
           [(1, 2, 3), (2, -1, 4), (3, 5, -1), (1, -2, -3), (5, 1, 2),
            (2, 3, -5), (7, 1, 1), (1, 9, 2)]]
    cfg = PointPairConfig(tuple((p, f(p)) for p in pts))
    z = build_z(cfg)
    assert all(z[i][0] == z[i][4] == z[i][8] for i in range(8))
    assert rank_exact(z) <= 7


def test_cremona8_rank_and_recovery():
    for seed in (1, 2, 3):
        cfg, f = gen_k8_cremona(seed)
        rank, basis = rank_and_nullspace(build_z(cfg))
        assert rank <= 7 and len(basis) == 2
        recovered = line_to_cremona(matrix_line(basis[0], basis[1]))
        assert recovered.proportional_to(f)


def test_quadric8_roundtrip():
    cfg, quad, cams = gen_k8_quadric(4)
    rank, basis = rank_and_nullspace(build_z(cfg))
    assert rank == 7
    line = matrix_line(basis[0], basis[1])
    f = fundamental_matrix(cams)
    recovered = quadric_from_line(line, f, cams)
    assert recovered.proportional_to(quad)
    assert recovered.permissible


def test_cubic7_label_soundness():
    cfg, truth = gen_k7(6)
    assert not cfg.exact
    z = pfloat(build_z(cfg), complex_=False)
    assert rank_numeric(z) == 6
    for i in range(7):
        assert rank_numeric(pfloat(build_z(cfg.drop(i)), complex_=False)) == 6
    assert truth["label"] == "numerically deficient"


def test_chord7_label_soundness():
    cfg, truth = gen_k7_chord(8)
    assert cfg.exact
    assert rank_exact(build_z(cfg)) == 6
    for i in range(7):
        assert rank_exact(build_z(cfg.drop(i))) == 6


def test_rank9_label_soundness():
    for r in (1, 2, 3):
        cfg, t = gen_k9(9, r)
        assert rank_exact(t) == r
        rank, basis = rank_and_nullspace(build_z(cfg))
        assert rank == 8 and len(basis) == 1
        assert proportional(basis[0].ravel(), t.ravel())


def test_octad6_net_of_diagonal_quadrics():
    cfg, truth = gen_k6_octad(10)
    assert rank_exact(build_z(cfg)) == 5
    # the eight octad points are common zeros of three independent quadrics
    pts = truth["octad"]
    assert len(pts) == 8


def test_homography_and_collinear_rank_drop():
    cfg, h = gen_homography(11, k=7)
    assert rank_exact(build_z(cfg)) <= 6
    for x, y in cfg.pairs:
        assert proportional(h @ x, y)
    cfg, v = gen_collinear(12, k=7)
    assert rank_exact(build_z(cfg)) < 7
    for x, _ in cfg.pairs:
        assert (v @ x) == 0

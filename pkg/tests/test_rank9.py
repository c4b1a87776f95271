import pytest

from facesplit import (
    exact_array,
    gen_k9,
    proportional,
    rank9_certify,
    vec9,
    verify_case2_homography,
)
from facesplit.rank9 import Case1Evidence, Case2Evidence, Case3Evidence

from fixtures import (
    NINE_1,
    NINE_1_T,
    NINE_2,
    NINE_2B,
    NINE_2B_E,
    NINE_2B_T,
    NINE_2_T,
    NINE_3,
    NINE_3_T,
)


def test_rank_one_witness():
    cert = rank9_certify(NINE_1)
    assert cert.deficient and cert.rank_T == 1 and cert.case == 1
    assert proportional(vec9(cert.T), vec9(NINE_1_T))
    ev = cert.evidence
    assert isinstance(ev, Case1Evidence)
    assert proportional(ev.line_x_normal, exact_array([1, 0, 0]))
    assert proportional(ev.line_y_normal, exact_array([0, 1, 0]))
    assert all(m in ("x", "y", "both") for m in ev.memberships)


def test_rank_two_witness_and_skips():
    cert = rank9_certify(NINE_2)
    assert cert.deficient and cert.rank_T == 2
    assert proportional(vec9(cert.T), vec9(NINE_2_T))
    ev = verify_case2_homography(cert.T, NINE_2, exact_array([1, 2, 3]))
    assert proportional(ev.e, exact_array([1, 1, 0]))
    assert proportional(ev.e_prime, exact_array([1, 1, 0]))
    want = ["verified"] * 9
    want[4] = "skipped-x"   # x_5 is the right kernel
    want[6] = "skipped-y"   # y_7 is the left kernel
    assert list(ev.statuses) == want


def test_rank_two_witness_no_skips_with_kernel_line():
    cert = rank9_certify(NINE_2B)
    assert cert.rank_T == 2
    assert proportional(vec9(cert.T), vec9(NINE_2B_T))
    ev = verify_case2_homography(cert.T, NINE_2B, NINE_2B_E)
    assert list(ev.statuses) == ["verified"] * 9


def test_case2_choice_of_line_is_irrelevant():
    cert = rank9_certify(NINE_2B)
    e = cert.evidence.e
    import random

    rng = random.Random(61)
    tried = 0
    while tried < 5:
        n = exact_array([rng.randint(-5, 5) for _ in range(3)])
        if not any(n) or (e @ n) == 0:
            continue
        ev = verify_case2_homography(cert.T, NINE_2B, n)
        assert list(ev.statuses) == ["verified"] * 9
        tried += 1


def test_rank_three_witness():
    cert = rank9_certify(NINE_3)
    assert cert.deficient and cert.rank_T == 3
    assert proportional(vec9(cert.T), vec9(NINE_3_T))
    assert isinstance(cert.evidence, Case3Evidence)
    assert all(v == 0 for v in cert.evidence.residuals)


def test_case2_preconditions():
    with pytest.raises(ValueError, match="rank-two"):
        verify_case2_homography(NINE_3_T, NINE_3, exact_array([1, 0, 0]))
    cert = rank9_certify(NINE_2)
    bad_n = exact_array([1, -1, 5])   # orthogonal to e = (1,1,0)
    with pytest.raises(ValueError, match="passes through e"):
        verify_case2_homography(cert.T, NINE_2, bad_n)


def test_generator_roundtrip_all_ranks():
    for r in (1, 2, 3):
        for seed in (101, 202):
            cfg, t = gen_k9(seed, r)
            cert = rank9_certify(cfg)
            assert cert.deficient and cert.rank_T == r
            assert proportional(vec9(cert.T), vec9(t))
            if r == 2:
                assert isinstance(cert.evidence, Case2Evidence)
                assert all(s != "failed" for s in cert.evidence.statuses)


def test_full_rank_certificate():
    from facesplit import gen_random, rank_exact, build_z

    for seed in range(30):
        cfg = gen_random(seed, k=9)
        cert = rank9_certify(cfg)
        assert cert.deficient == (rank_exact(build_z(cfg)) < 9)
        if not cert.deficient:
            assert cert.T is None

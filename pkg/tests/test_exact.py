import random
from fractions import Fraction

import numpy as np
import pytest

from facesplit import exact_array
from facesplit.exact import (
    bareiss_det,
    bareiss_rank,
    inverse,
    nullspace,
    primitive,
    rref,
    solve,
    to_float,
)


def test_exact_array_parses_strings_and_rejects_floats():
    a = exact_array(["-3/7", 2, "5"])
    assert a[0] == Fraction(-3, 7) and a[1] == 2 and a[2] == 5
    with pytest.raises(TypeError):
        exact_array([1.5, 2, 3])


def test_rank_against_numpy_on_random_matrices():
    rng = random.Random(0)
    for _ in range(300):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = [[rng.randint(-10, 10) for _ in range(cols)] for _ in range(rows)]
        exact_rank = bareiss_rank(exact_array(m))
        float_rank = np.linalg.matrix_rank(np.array(m, dtype=float))
        assert exact_rank == float_rank


def test_det_matches_fraction_gauss():
    rng = random.Random(1)
    for _ in range(100):
        n = rng.randint(1, 5)
        m = [[Fraction(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(n)]
             for _ in range(n)]
        d = bareiss_det(exact_array(m))
        assert abs(float(d) - np.linalg.det(np.array(m, dtype=float))) < 1e-6 * max(
            1.0, abs(float(d)))


def test_nullspace_vectors_are_exact_kernel_elements():
    rng = random.Random(2)
    for _ in range(50):
        m = exact_array([[rng.randint(-5, 5) for _ in range(6)] for _ in range(3)])
        basis = nullspace(m)
        assert len(basis) == 6 - bareiss_rank(m)
        for v in basis:
            assert all(val == 0 for val in m @ v)


def test_rref_pivots_are_unit_columns():
    m = exact_array([[2, 4, 1], [1, 2, 0], [0, 0, 3]])
    r, pivots = rref(m)
    for i, c in enumerate(pivots):
        col = [r[j][c] for j in range(r.shape[0])]
        assert col[i] == 1 and all(col[j] == 0 for j in range(len(col)) if j != i)


def test_solve_and_inverse_roundtrip():
    m = exact_array([[2, 1, 0], [1, -1, 3], [0, 5, 1]])
    b = exact_array([1, 2, 3])
    x = solve(m, b)
    assert all(v == w for v, w in zip(m @ x, b))
    mi = inverse(m)
    eye = m @ mi
    assert all(eye[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))
    with pytest.raises(ValueError):
        inverse(exact_array([[1, 2], [2, 4]]))


def test_primitive_clears_denominators_and_signs():
    v = primitive(np.array([Fraction(-2, 3), Fraction(4, 3), 0], dtype=object))
    assert list(v) == [1, -2, 0]
    with pytest.raises(ValueError):
        primitive(exact_array([0, 0, 0]))


def test_to_float_preserves_complex():
    a = np.array([1 + 2j, 3.0])
    out = to_float(a, complex_=False)
    assert out.dtype == np.complex128 and out[0] == 1 + 2j

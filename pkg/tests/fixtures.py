"""Shared worked-example data used across the test suite.

QUAD8 is an eight-pair configuration projected from ten rational points
of the quadric x^2 + y^2 - z^2 - w^2 = 0; SIX_PAIRS / SEVEN_DEFICIENT a
six-pair configuration with known epipolar cubics and its rational
rank-dropping extension; SEVEN_GENERIC a full-rank seven-pair
configuration with three known rational fundamental matrices; NINE_*
nine-pair configurations with nullspace witnesses of each rank; DEGEN_*
seven-pair configurations whose 14 certificate values vanish although
the matrix has full rank.
"""

from facesplit import PointPairConfig, exact_array


def _cfg(xs, ys):
    return PointPairConfig(tuple((exact_array(x), exact_array(y))
                                 for x, y in zip(xs, ys)))


def _cfg_cols(x_cols, y_cols):
    return PointPairConfig.from_matrices(exact_array(x_cols), exact_array(y_cols))


# -- eight pairs from a quadric reconstruction --------------------------------

QUAD8_X = [(5, 12, 13), (1, 0, 5), (12, 5, 13), (3, 4, 5),
           (4, 3, 5), (-2, 4, 0), (-1, 3, 0), (2, 0, 4)]
QUAD8_Y = [(5, 12, 13), (13, -12, 5), (12, 5, 13), (3, 4, 5),
           (4, 3, 5), (3, -1, 0), (4, -2, 0), (5, -3, 4)]
QUAD8 = _cfg(QUAD8_X, QUAD8_Y)

QUAD8_M1 = exact_array([[-1, -1, 0], [1, -1, 0], [0, 0, 1]])
QUAD8_F = exact_array([[0, 0, 1], [0, 0, 1], [-1, -1, 0]])
QUAD8_F2 = exact_array([[-1, -1, 1], [1, -1, 1], [-1, -1, 1]])
QUAD8_F3 = exact_array([[-1, -1, -1], [1, -1, -1], [1, 1, 1]])

QUAD8_EPIPOLES = {
    "F": (exact_array([-1, 1, 0]), exact_array([1, -1, 0])),
    "F2": (exact_array([0, 1, 1]), exact_array([-1, 0, 1])),
    "F3": (exact_array([0, -1, 1]), exact_array([1, 0, 1])),
}

QUAD8_A1 = exact_array([[1, 0, 0, -1], [0, 1, 0, 0], [0, 0, 1, 0]])
QUAD8_A2 = exact_array([[1, 0, 0, 0], [0, 1, 0, -1], [0, 0, 1, 0]])
QUAD8_C1 = exact_array([1, 0, 0, 1])
QUAD8_C2 = exact_array([0, 1, 0, 1])
QUAD8_QUADRIC = exact_array([[1, 0, 0, 0], [0, 1, 0, 0],
                             [0, 0, -1, 0], [0, 0, 0, -1]])
QUAD8_WORLD = [exact_array(p) for p in
               [(5, 12, 13, 0), (13, 0, 5, 12), (12, 5, 13, 0), (3, 4, 5, 0),
                (4, 3, 5, 0), (3, 4, 0, 5), (4, 3, 0, 5), (5, 0, 4, 3)]]

# the unique Cremona map sending the x points to the y points:
# (x1^2 - x2^2 + x3^2 : x1^2 + 2 x1 x2 + x2^2 - x3^2 : 2 x1 x3)
QUAD8_CREMONA_COEFFS = exact_array(
    [1, 0, 0, -1, 0, 1,
     1, 2, 0, 1, 0, -1,
     0, 0, 2, 0, 0, 0])

# -- six pairs with printed epipolar cubics, and the rank-dropping 7th pair ---

SIX_X = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (3, 5, 1), (-7, 11, 1)]
SIX_Y = [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1), (7, -2, 1), (3, 13, 1)]
SIX_PAIRS = _cfg(SIX_X, SIX_Y)

GX_COEFFS = exact_array([447, 775, -4083, 113, -888, 3636, 118, -1521, 1403, 0])
GY_COEFFS = exact_array([447, -136, -3608, -12, 148, 3161, 118, -1478, 1360, 0])

X7 = exact_array([0, 1403, 118])
Y7 = exact_array([1802855, 1562942, 171287])
SEVEN_DEFICIENT = PointPairConfig(SIX_PAIRS.pairs + ((X7, Y7),))

# -- seven full-rank pairs with three rational fundamental matrices ----------

SEVEN_GENERIC = _cfg_cols(
    [[3, 2, 5, 0, 4, -20, -4], [0, 7, 3, 3, 2, 25, 7], [1, 1, 2, 1, 5, 12, 2]],
    [[0, -49, -15, -3, -5, 5, 7], [-1, 14, 25, 0, 10, 4, 4], [1, 9, 4, 1, 6, 2, 1]])

SEVEN_GENERIC_EX = [exact_array(p) for p in [(0, 0, 1), (-2, 3, 1), (4, 3, 4)]]
SEVEN_GENERIC_EY = [exact_array(p) for p in [(0, 0, 1), (-3, 4, 1), (3, 2, 2)]]

# -- nine-pair witnesses of every rank ----------------------------------------

NINE_1 = _cfg_cols(
    [[0, 0, 0, 0, 1, -1, 1, 1, 1], [1, 1, 1, -1, 1, 1, 0, 1, -1],
     [0, 1, 2, 1, 0, 1, 1, 1, -1]],
    [[-1, 1, 0, 0, 1, 1, 1, -1, 1], [0, 1, -1, 1, 0, 0, 0, 0, 0],
     [2, 1, 1, 1, 0, 1, 2, 1, 3]])
NINE_1_T = exact_array([[0, 0, 0], [1, 0, 0], [0, 0, 0]])

NINE_2 = _cfg_cols(
    [[1, 0, 0, 1, 1, 1, 0, 1, 2], [0, 1, 0, 1, 1, 0, 1, 2, 1],
     [0, 0, 1, 1, 0, 1, 1, 1, 1]],
    [[1, 0, 0, 1, 1, 0, 1, 2, 1], [0, 1, 0, 1, 0, 1, 1, 1, 4],
     [0, 0, 1, 1, 1, 1, 0, 1, 3]])
NINE_2_T = exact_array([[0, 0, -1], [0, 0, 1], [-1, 1, 0]])

NINE_2B = _cfg_cols(
    [[1, 1, 1, 1, 1, 1, 1, 1, 1], [0, 1, 0, 1, 2, 0, 2, -1, -1],
     [0, 0, 1, 1, 0, 2, 1, 1, -1]],
    [[1, 1, 1, 1, 1, 1, 1, 1, 1], [0, 1, 0, 1, 0, 2, 1, 1, -2],
     [0, 0, 1, 1, 2, 1, 2, -1, -1]])
NINE_2B_T = exact_array([[0, 2, 1], [-1, -1, 0], [-2, 0, 1]])
NINE_2B_E = exact_array([-1, 1, -2])

NINE_3 = _cfg_cols(
    [[1, 0, 0, 1, 1, 1, 0, 1, 2], [0, 1, 0, 1, 1, 0, 1, 2, -3],
     [0, 0, 1, 1, 0, 1, 1, 1, 1]],
    [[1, 0, 0, 1, 1, 0, 1, 2, 15], [0, 1, 0, 1, 0, 1, 1, 1, 4],
     [0, 0, 1, 1, 1, 1, 0, 0, -5]])
NINE_3_T = exact_array([[0, 1, -4], [1, 0, 3], [-4, 3, 0]])

# -- degenerate seven-pair configurations: values vanish, rank stays full -----

DEGEN_A = _cfg_cols(
    [[0, 1, 3, 4, 0, 0, 7], [0, 0, 0, 0, 1, 1, 0], [1, 0, 1, 1, 0, 0, 1]],
    [[0, 1, 4, 0, 9, 1, 0], [0, 0, 0, 1, 0, 0, 1], [1, 0, 1, 0, 1, 1, 0]])

DEGEN_B = _cfg_cols(
    [[1, 2, 5, 1, 2, 3, 7], [0, 0, 0, 0, 1, 2, 6], [1, 1, 1, 0, 1, 1, 1]],
    [[0, 0, 0, 0, 1, 3, 4], [1, 5, 1, 0, 2, 6, 8], [1, 1, 0, 1, 1, 1, 1]])

"""Rank-deficiency analysis of face-splitting point-pair matrices.

Decide, certify and synthesize configurations of k point pairs in
P^2 x P^2 (k = 6..9) whose k x 9 face-splitting matrix drops rank, via
the correspondence between matrix lines, quadrics through camera
centers, and quadratic Cremona transformations, the epipolar cubic
curves of six pairs, the 14-value seven-pair certificate, and the
rank-classified nine-pair witness.
"""

from .cubics import (
    CobleData,
    CubicCurve,
    coble_data,
    hexahedral_cubic,
    hexahedral_surface_report,
    kappa_cubic,
    restricted_map_image,
    third_intersection,
)
from .exact import exact_array
from .generate import (
    GenSpec,
    gen_collinear,
    gen_homography,
    gen_k6_octad,
    gen_k7,
    gen_k7_chord,
    gen_k8_cremona,
    gen_k8_quadric,
    gen_k9,
    gen_random,
    generate,
    rank_two_member_through,
)
from .projective import (
    PROJ_TOL,
    RANK_TOL,
    canonical,
    kernel_right_left,
    proj_equal,
    proportional,
    rank_exact,
    rank_numeric,
    skew_matrix,
)
from .rank9 import Certificate9, rank9_certify, verify_case2_homography
from .reconstruct import (
    Reconstruction,
    cayley_octad_membership,
    reconstruct_config,
    reconstruction_quadrics,
    triangulate,
)
from .serialize import config_from_json, config_to_json, load_config
from .sevenpoint import (
    Certificate7,
    certificate_residuals,
    certificate_values,
    epipoles_by_intersection,
    rank7_certify,
)
from .trinity import (
    CameraPair,
    CremonaMap,
    LineInDeterminantalVariety,
    MatrixLine,
    NonGenericLineError,
    Quadric3,
    cameras_from_f,
    conjugate_cremona,
    cremona_from_quadric,
    cremona_to_line,
    fundamental_matrix,
    is_p_generic,
    line_to_cremona,
    matrix_line,
    quadric_from_line,
    rank_two_on_line,
    standard_involution,
)
from .zmatrix import (
    PointPairConfig,
    build_z,
    is_semi_generic,
    maximal_minors_vanish,
    rank_and_nullspace,
    unvec9,
    vec9,
)

__version__ = "0.1.0"

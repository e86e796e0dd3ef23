"""Tree metrics, their weighted-tree realizations, and exact Lipschitz-free norms."""

from .embedding import TreeRealization, build_tree, l1_coordinates, realization_of
from .errors import *  # noqa: F401,F403
from .faces import (
    FaceRegion,
    QuadrupleReport,
    SymmetryReport,
    brute_symmetry,
    classify_nine,
    face_region,
    quadruple_faces,
)
from .freenorm import (
    Molecule,
    NormResult,
    cross_validate,
    cut_norm,
    discrete_norm,
    flow_norm,
    line_norm,
    line_positions,
    lp_norm,
    norm,
    three_point_norm,
    verify_certificate,
)
from .gluing import GluedSpace, check_gluing_bounds, decomposed_norm, validate_glued
from .metric import (
    FiniteMetric,
    FourPointVerdict,
    discrete_metric,
    four_point_check,
    gromov_product,
    line_metric,
    metric_from_points,
    parse_metric,
    read_metric,
    validate_metric,
)
from .scalar import EXACT, FLOAT, Arithmetic
from .tree import (
    WeightedTree,
    cut_sets,
    discrete_derivative,
    gap_weights,
    induced_metric,
    integrate_derivative,
    path_distance,
    reroot,
    to_dot,
    to_newick,
    tree_from_json,
    tree_to_json,
)

__version__ = "0.1.0"

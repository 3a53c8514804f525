"""Exact max-plus convexity: Caratheodory, Radon, Helly, Tverberg and Sierksma-type results with checkable certificates."""

from .bipartite import BipartiteGraph, HallViolation, max_matching, max_weight_assignment, semi_matching
from .caratheodory import (
    ColorfulInstance,
    NotInHull,
    Transversal,
    colorful,
    column_offsets,
    generalized_colorful,
    intersect_hulls,
    reduce_support,
)
from .certificates import RadonCertificate, TverbergCertificate
from .genpoly import GenPoly, GenPolyMatrix, RatFn, cramer_solve, determinant, max_nonzero_minor, monomial
from .maxplus import BOTTOM, Combination, PointSet, combine, lift, membership, point, project, scalar
from .oracles import OracleRefused, enumerate_all_tverberg, membership_oracle, tropical_system_feasible
from .plot import plot_svg, tropical_segment
from .radon_helly import HellyReport, TheoremViolation, helly_check, helly_point, radon, radon_conic
from .sierksma import (
    CoincidenceGraph,
    GenericityReport,
    NonGenericError,
    coincidence_graph,
    full_partition,
    genericity_check,
    partition_with_equal_neighborhoods,
    perturb,
    sierksma_count,
)
from .tverberg import RetryBudgetExhausted, find_colors, sarkaria_embed, tverberg, tverberg_conic

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "HallViolation",
    "max_matching",
    "max_weight_assignment",
    "semi_matching",
    "ColorfulInstance",
    "NotInHull",
    "Transversal",
    "colorful",
    "column_offsets",
    "generalized_colorful",
    "intersect_hulls",
    "reduce_support",
    "RadonCertificate",
    "TverbergCertificate",
    "GenPoly",
    "GenPolyMatrix",
    "RatFn",
    "cramer_solve",
    "determinant",
    "max_nonzero_minor",
    "monomial",
    "BOTTOM",
    "Combination",
    "PointSet",
    "combine",
    "lift",
    "membership",
    "point",
    "project",
    "scalar",
    "OracleRefused",
    "enumerate_all_tverberg",
    "membership_oracle",
    "tropical_system_feasible",
    "plot_svg",
    "tropical_segment",
    "HellyReport",
    "TheoremViolation",
    "helly_check",
    "helly_point",
    "radon",
    "radon_conic",
    "CoincidenceGraph",
    "GenericityReport",
    "NonGenericError",
    "coincidence_graph",
    "full_partition",
    "genericity_check",
    "partition_with_equal_neighborhoods",
    "perturb",
    "sierksma_count",
    "RetryBudgetExhausted",
    "find_colors",
    "sarkaria_embed",
    "tverberg",
    "tverberg_conic",
]

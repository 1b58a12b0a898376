"""Exact regularity, recursive regularity and floodlight assignments for
polyhedral subdivisions and fans."""

from recreg.rational import RatMatrix, det, rank, solve_linear, parse_rational
from recreg.complex import (
    PointConfiguration,
    Subdivision,
    Fan,
    Wall,
    Coarsening,
    InvalidComplex,
    validate_subdivision,
    validate_fan,
    walls,
    fan_from_section,
)
from recreg.lp import LinearProgram, LPOutcome, lp_solve, gordan, gordan_relaxed
from recreg.relaxation import (
    RelaxableSystem,
    RelaxationResult,
    minimum_relaxation,
    verify_dual_certificate,
)
from recreg.regularity import (
    HeightFunction,
    RegularityVerdict,
    FinestRegularCoarsening,
    regularity_system,
    is_regular,
    finest_regular_coarsening,
    restrict,
    lift_project_2d,
)
from recreg.rectree import RegularityTree, regularity_tree, is_recursively_regular
from recreg.visibility import (
    InFrontDigraph,
    CycleCertificate,
    infront_digraph,
    acyclic_in_direction,
    acyclic_all_directions,
    verify_cycle_certificate,
)
from recreg.floodlight import (
    Assignment,
    OverlapReport,
    overlap_check,
    line_assignment,
    covering_assignment,
    universality_search,
    uncovered_region_2d,
    sample_coverage,
    draw_samples,
    transportation,
)
from recreg.applications import (
    SpiderWeb,
    DirectionalGraph,
    spiderweb_redundant_cables,
    forcing_cycle,
    embed_drawable,
    check_embedding,
)
from recreg.matching import min_cost_assignment
from recreg.io import load, dump, encode, decode
from recreg.svg import emit_svg

__version__ = "0.1.0"

"""Domination polynomials of trees: exact computation, critical-vertex
decompositions, minimal-dominating-set reconfiguration and verification."""

from .analysis import analyze_sequence, avd_report, avd_via_critical, verify_tk_certificate
from .critical import critical_set, decompose, max_critical_matching
from .domination import (
    DomPoly,
    GuardExceeded,
    dom_poly_bruteforce,
    dom_poly_dp,
    domination_number,
    enumerate_dominating_sets,
    enumerate_minimal_dominating_sets,
    is_dominating,
    is_minimal_dominating,
    upper_domination_number,
)
from .reconfig import find_larger_minimal, make_minimal, reconfigure_a1, reconfigure_a2_subset
from .trees import Tree, build_t_k, path_tree, random_tree, root_at, star_tree, tree_from_edges, tree_from_prufer

__version__ = "0.1.0"

"""One-sided Ramanujan graph coverings, d-matching polynomials and representation checks."""

from .graph import OrientedMultigraph, classify, subdivide
from .poly import RatPoly, is_real_rooted, largest_root
from .matching import d_matching_poly, matching_poly
from .search import find_lift, find_lift_group, lift_regular_with_loops, rho

__all__ = [
    "OrientedMultigraph",
    "RatPoly",
    "classify",
    "d_matching_poly",
    "find_lift",
    "find_lift_group",
    "is_real_rooted",
    "largest_root",
    "lift_regular_with_loops",
    "matching_poly",
    "rho",
    "subdivide",
]

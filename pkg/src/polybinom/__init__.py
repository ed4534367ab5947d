"""Exact chromatic, flow, and order polynomials on desk-scale graphs and posets.

Computes the polynomials exactly, rewrites them in shifted binomial bases,
splits the resulting coefficient vectors into palindromic parts, and audits
the positivity and partial-sum inequalities those parts satisfy, with
independent brute-force oracles for every route.
"""

__version__ = "0.1.0"

from .decompositions import (
    ABDecomposition,
    CADecomposition,
    InequalityReport,
    SymmetricSplit,
    ab_decomposition,
    ca_decomposition,
    check_partial_sum_inequalities,
    symmetric_split,
)
from .errors import (
    CapExceeded,
    InputFormatError,
    NotApplicable,
    PolybinomError,
    VerificationFailed,
)
from .graphs import (
    Multigraph,
    Orientation,
    contract_edge,
    cyclomatic_number,
    delete_edge,
    enumerate_acyclic_orientations,
    enumerate_totally_cyclic_orientations,
    in_degree_sequence_count,
    orientation_to_poset,
)
from .polynomials import (
    Polynomial,
    StarVector,
    binomial_transform,
    interpolate,
    inverse_transform,
)
from .posets import (
    Poset,
    hstar_via_descents,
    omega_star,
    order_polytope_points,
    order_star_split,
    strict_order_poly,
)
from .chromatic import (
    ChromaticResult,
    chromatic_analysis,
    chromatic_polynomial,
    chromatic_star,
    monomial_inequality_forms,
    star_via_order_polynomials,
)
from .flows import (
    FlowResult,
    flow_analysis,
    integral_flow_count,
    kochol_orientation_counts,
    modular_flow_count,
)

__all__ = [
    "ABDecomposition",
    "CADecomposition",
    "CapExceeded",
    "ChromaticResult",
    "FlowResult",
    "InequalityReport",
    "InputFormatError",
    "Multigraph",
    "NotApplicable",
    "Orientation",
    "PolybinomError",
    "Polynomial",
    "Poset",
    "StarVector",
    "SymmetricSplit",
    "VerificationFailed",
    "ab_decomposition",
    "binomial_transform",
    "ca_decomposition",
    "check_partial_sum_inequalities",
    "chromatic_analysis",
    "chromatic_polynomial",
    "chromatic_star",
    "contract_edge",
    "cyclomatic_number",
    "delete_edge",
    "enumerate_acyclic_orientations",
    "enumerate_totally_cyclic_orientations",
    "flow_analysis",
    "hstar_via_descents",
    "in_degree_sequence_count",
    "integral_flow_count",
    "interpolate",
    "inverse_transform",
    "kochol_orientation_counts",
    "modular_flow_count",
    "monomial_inequality_forms",
    "omega_star",
    "order_polytope_points",
    "order_star_split",
    "orientation_to_poset",
    "star_via_order_polynomials",
    "strict_order_poly",
    "symmetric_split",
]

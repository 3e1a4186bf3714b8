"""branchsys: branching systems on the line, graph-algebra generator
actions, and transfer operators, with exact interval geometry.

The package turns a finite directed graph into concrete operators on
piecewise-polynomial functions over a finite union of rational
intervals: vertex projections, edge (partial) isometries and their
adjoints, and the transfer operator of the induced nonsingular self-map.
All support arithmetic is exact (Fraction endpoints); only function
values and integrals live in floating point, so the Cuntz-Krieger
relations can be *decided* at the level of sets and merely *probed*
numerically at the level of values.
"""

from .affine import AffinePiece, PAMap, affine_between
from .branching import (
    BranchingSystem,
    NonsingularSystem,
    Violation,
    build_default,
    nonsingular_map,
    validate_system,
)
from .errors import (
    BranchSysError,
    DegreeLimitError,
    InvalidSystemError,
    PieceLimitError,
    SchemaError,
    SupportError,
)
from .graphs import (
    ConditionKReport,
    DirectedGraph,
    Edge,
    VertexClassification,
    check_condition_k,
    classify_vertices,
    first_return_paths,
    parse_graph,
    random_graph,
)
from .intervals import Interval, IntervalSet, as_rational
from .ppoly import MAX_DEGREE, PPoly
from .quadrature import simpson_abs_integral, simpson_integral
from .representation import (
    Generator,
    RelationReport,
    apply_edge_isometry,
    apply_edge_isometry_adjoint,
    apply_vertex_projection,
    apply_word,
    parse_word,
    random_ppoly,
    verify_relations,
)
from .serialize import (
    load_ppoly,
    load_system,
    save_ppoly,
    save_system,
)
from .transfer import (
    TransferOperator,
    Trajectory,
    iterate,
    verify_duality,
    verify_square_identity,
)

__version__ = "0.1.0"

__all__ = [
    "AffinePiece",
    "PAMap",
    "affine_between",
    "BranchingSystem",
    "NonsingularSystem",
    "Violation",
    "build_default",
    "nonsingular_map",
    "validate_system",
    "BranchSysError",
    "DegreeLimitError",
    "InvalidSystemError",
    "PieceLimitError",
    "SchemaError",
    "SupportError",
    "ConditionKReport",
    "DirectedGraph",
    "Edge",
    "VertexClassification",
    "check_condition_k",
    "classify_vertices",
    "first_return_paths",
    "parse_graph",
    "random_graph",
    "Interval",
    "IntervalSet",
    "as_rational",
    "MAX_DEGREE",
    "PPoly",
    "simpson_abs_integral",
    "simpson_integral",
    "Generator",
    "RelationReport",
    "apply_edge_isometry",
    "apply_edge_isometry_adjoint",
    "apply_vertex_projection",
    "apply_word",
    "parse_word",
    "random_ppoly",
    "verify_relations",
    "load_ppoly",
    "load_system",
    "save_ppoly",
    "save_system",
    "TransferOperator",
    "Trajectory",
    "iterate",
    "verify_duality",
    "verify_square_identity",
    "__version__",
]

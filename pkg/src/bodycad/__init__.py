"""Infinitesimal rigidity of body-and-cad frameworks.

Rigid bodies in 3-space joined by pairwise coincidence, angular, and
distance constraints on points, lines, and planes.  The package builds the
exact rational rigidity matrix of such a framework, decides infinitesimal
rigidity from its rank, and independently checks the nested counting
condition on the constraint graph with pebble games and matroid
intersection.
"""

from .errors import (
    BodyCadError,
    DegenerateConstraint,
    DegenerateDirection,
    InputError,
    InvalidRadius,
    OracleTooLarge,
    UnsupportedCounts,
    ZeroDistance,
)
from .geometry import (
    Screw,
    TensorVec6,
    Vec3,
    Vec4,
    join4,
    orthogonal_pair,
    pair6,
    rat,
    screw_join_point,
    tensor6,
    triple_join,
    vec3,
    vec4,
)
from .model import (
    Body,
    CadConstraint,
    Framework,
    KINDS,
    KIND_NAMES,
    Line,
    Plane,
    TangencyConstraint,
    cad_graph_of,
    constraint,
    framework,
    framework_from_data,
    framework_to_data,
    primitive_graph_of,
    reduce_tangency,
    tangency,
    validate,
)
from .compiler import (
    PrimitiveRow,
    bar_row,
    bb_angular_fixed,
    bb_angular_parallel,
    bb_blind_orthogonal,
    bb_blind_parallel,
    compile_constraint,
    compile_framework,
)
from .rigidity import (
    RigidityMatrix,
    RigidityReport,
    analyze,
    assemble,
    audit_ranks,
    perturb_framework,
    rational_nullspace,
    rational_rank,
    trivial_basis,
)
from .sparsity import (
    BODY_CAD_COUNTS,
    Edge,
    MultiGraph,
    NestedCounts,
    SparsityCounts,
    graph_from_data,
    graph_to_data,
    matroid_intersect,
    multigraph,
    multigraph_of,
    nested_analysis,
    nested_bruteforce,
    pebble_components,
    pebble_decision,
    sparse_bruteforce,
)

__version__ = "0.1.0"

__all__ = [
    "BodyCadError",
    "DegenerateConstraint",
    "DegenerateDirection",
    "InputError",
    "InvalidRadius",
    "OracleTooLarge",
    "UnsupportedCounts",
    "ZeroDistance",
    "Screw",
    "TensorVec6",
    "Vec3",
    "Vec4",
    "join4",
    "orthogonal_pair",
    "pair6",
    "rat",
    "screw_join_point",
    "tensor6",
    "triple_join",
    "vec3",
    "vec4",
    "Body",
    "CadConstraint",
    "Framework",
    "KINDS",
    "KIND_NAMES",
    "Line",
    "Plane",
    "TangencyConstraint",
    "cad_graph_of",
    "constraint",
    "framework",
    "framework_from_data",
    "framework_to_data",
    "primitive_graph_of",
    "reduce_tangency",
    "tangency",
    "validate",
    "PrimitiveRow",
    "bar_row",
    "bb_angular_fixed",
    "bb_angular_parallel",
    "bb_blind_orthogonal",
    "bb_blind_parallel",
    "compile_constraint",
    "compile_framework",
    "RigidityMatrix",
    "RigidityReport",
    "analyze",
    "assemble",
    "audit_ranks",
    "perturb_framework",
    "rational_nullspace",
    "rational_rank",
    "trivial_basis",
    "BODY_CAD_COUNTS",
    "Edge",
    "MultiGraph",
    "NestedCounts",
    "SparsityCounts",
    "graph_from_data",
    "graph_to_data",
    "matroid_intersect",
    "multigraph",
    "multigraph_of",
    "nested_analysis",
    "nested_bruteforce",
    "pebble_components",
    "pebble_decision",
    "sparse_bruteforce",
]

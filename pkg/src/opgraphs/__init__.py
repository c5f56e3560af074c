"""Non-commutative operator graphs from covariant resolutions of identity."""
from .numerics import (
    DegenerateProjectorError,
    DimensionError,
    PreconditionError,
    ToleranceConfig,
    conjugate,
    gram_rank,
    hs_inner,
    is_unitary,
    orthonormal_span_basis,
    subspace_distance,
)
from .graph import (
    AnticliqueReport,
    OperatorGraph,
    build_graph,
    check_anticlique,
    check_covariance,
    check_graph_axioms,
    check_identity_partition,
)
from .circle import CircleInstance, Theorem1Report, circle_instance, verify_theorem1
from .heisenberg_weyl import HWInstance, Theorem2Report, hw_graph, hw_instance, verify_theorem2

__version__ = "0.1.0"

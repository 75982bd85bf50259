"""Graph complexes of decorated diagrams on a circle.

Exact rational computation of the odd- and even-type complexes: bases,
coboundary and boundary operators, cohomology dimensions and explicit
representatives, and the chord-diagram presentation of degree-0 homology.
"""

from .diagrams import (
    EVEN,
    ODD,
    ZERO,
    ZERO_VECTOR,
    Diagram,
    GraphVector,
    SignedDiagram,
    apply_move,
    canonicalize,
    decoration_sign,
    diagram,
    from_json,
    grading,
    graph_vector,
    is_admissible,
    is_degenerate,
    pairing,
    to_json,
    vector_add,
    vector_scale,
)
from .differential import contract_arc, contract_edge, delta, partial
from .enumeration import (
    ComplexBasis,
    basis_cache_load,
    basis_cache_store,
    enumerate_basis,
)
from .linalg import (
    RationalMatrix,
    cocycle_representative,
    cohomology_dim,
    express_in_support,
    homology_dim,
    in_image,
    kernel_basis,
    matrix_of_delta,
    matrix_of_partial,
    rank,
)
from .chordhom import (
    chord_quotient_dim,
    compare_homology,
    enumerate_chord_diagrams,
    four_t_generators,
    one_t_generators,
)

__version__ = "0.1.0"

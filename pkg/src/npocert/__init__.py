"""Certify NPO(k), the least order forcing k nonpositive adjacency eigenvalues,
and check the Laplacian degree bounds that follow from it."""

from .canon import canonical_form, canonical_graph, is_isomorphic
from .graph import (
    Graph,
    GraphError,
    add_vertex,
    complement,
    contains_subgraph,
    degrees,
    disjoint_union,
    induced_subgraph,
    permute,
)
from .graph6 import decode_graph6, encode_graph6
from .linalg import (
    ExactSymmetricMatrix,
    Inertia,
    Spectrum,
    exact_inertia,
    float_spectrum,
    inertia_additivity_check,
    interlacing_check,
    nonpositive_count,
    schur_complement,
)
from .search import (
    NpoCertificate,
    enumerate_all,
    frontier_search,
    known_bounds,
    lower_bound_witness,
    verify_value,
)

__version__ = "0.1.0"

"""Transition groups of context-free inverse graphs."""

from ._kernel import BACKEND
from .cone_system import (
    ConeLetter,
    ConeType,
    EndConeSystem,
    NotStabilized,
    VertexAddress,
    act_address,
    as_lazy_graph,
    cone_type,
    decode_vertex,
    encode_vertex,
    infer_system,
    neighbor_address,
    validate,
    verify_presentation,
)
from .core import (
    Alphabet,
    FiniteGraph,
    InputError,
    LazyInverseGraph,
    accepts,
    bfs,
    expand_ball,
    free_reduce,
    inverse_word,
    sphere_size,
    sphere_sizes,
    verify_isomorphic_balls,
    walk,
)
from .group import (
    EXCEEDS_U64,
    Ensemble,
    Finite,
    InfiniteCertified,
    Unknown,
    is_finite_group,
    is_identity,
    order,
    torsion_bound,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "Alphabet", "ConeLetter", "ConeType", "EXCEEDS_U64", "EndConeSystem", "Ensemble",
    "Finite", "FiniteGraph", "InfiniteCertified", "InputError", "LazyInverseGraph", "NotStabilized",
    "Unknown", "VertexAddress", "accepts", "act_address", "as_lazy_graph", "bfs", "cone_type",
    "decode_vertex", "encode_vertex", "expand_ball", "free_reduce", "infer_system", "inverse_word",
    "is_finite_group", "is_identity", "neighbor_address", "order", "sphere_size", "sphere_sizes",
    "torsion_bound", "validate", "verify_isomorphic_balls", "verify_presentation", "walk",
]

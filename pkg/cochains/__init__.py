"""Exact-rational discrete exterior calculus on abstract simplicial complexes."""

from cochains.errors import (
    AmbientMismatch,
    ComplexMismatch,
    DECError,
    DegreeMismatch,
    DuplicateVertex,
    FaceNotInAmbient,
    MissingVertexImage,
    NotSpanning,
    OverlapTooLarge,
    SimplexNotInComplex,
    SpanningViolation,
    VertexMismatch,
)
from cochains.maps import (
    SimplicialMap,
    collapse_map,
    compose,
    identity,
    permutation_map,
    pullback,
    pushforward,
    random_simplicial_map,
    validate,
)
from cochains.operators import (
    CupProduct,
    WedgeMethod,
    associator,
    cup,
    d,
    vertex_alternating_form,
    wedge,
    wedge_avg,
    wedge_perm,
)
from cochains.simplicial_core import (
    Chain,
    Cochain,
    OrientedSimplex,
    SimplicialComplex,
    boundary,
    canonicalize,
    evaluate,
    format_scalar,
    parse_scalar,
    permutation_sign,
)
from cochains.whitney_oracle import (
    EpsilonSign,
    PolyForm,
    base_integral,
    epsilon_sign,
    integrate,
    whitney,
    whitney_cochain,
    wilson_product,
)

"""Exact toric tools for auditing hyperbolicity of adjoint linear systems."""

from .divisors import (
    Divisor,
    NotCartier,
    canonical_divisor,
    cartier_data,
    h0,
    is_ample,
    is_gorenstein,
    is_gorenstein_fano,
    is_nef,
    linear_equivalence,
    polytope_of,
    prime_divisor,
    restrict_to_invariant_divisor,
)
from .fan import Fan, FanError, is_complete, is_simplicial, is_smooth, small_qfactorialization, star_fan, walls
from .polytope import LatticePolytope, face_fan, minkowski_cover

__version__ = "0.1.0"

__all__ = [
    "Divisor",
    "Fan",
    "FanError",
    "LatticePolytope",
    "NotCartier",
    "canonical_divisor",
    "cartier_data",
    "face_fan",
    "h0",
    "is_ample",
    "is_complete",
    "is_gorenstein",
    "is_gorenstein_fano",
    "is_nef",
    "is_simplicial",
    "is_smooth",
    "linear_equivalence",
    "minkowski_cover",
    "polytope_of",
    "prime_divisor",
    "restrict_to_invariant_divisor",
    "small_qfactorialization",
    "star_fan",
    "walls",
]

"""Periodic elements, additive decompositions and ring profiles for finite
rings, with decision procedures for ``ZZ`` and ``Z_n[t]``."""

from .decompose import (
    DecompositionCertificate,
    additive_rank,
    certificate_problems,
    matrix_split,
    poly_additive_decision,
    sum_search,
    torsion_sum_witness,
    verify_certificate,
    weak_split,
)
from .descriptors import (
    GroupRing,
    Integers,
    Matrix,
    Poly,
    PolyQuotient,
    Product,
    RingDescriptor,
    Triangular,
    Zn,
    galois_field,
)
from .dsl import format_element, format_ring, parse_element, parse_ring
from .groups import GroupTable, group_center, preset
from .orbit import (
    ElementClass,
    OrbitWitness,
    classify,
    combine_product_witness,
    frobenius_lift,
    idempotent_from,
    is_periodic,
    orbit_witness,
    poly_periodicity,
)
from .properties import RingProfile, has_strong_tpp, has_tpp, is_two_good, profile, unit_group_torsion
from .rings import Element, Ring, construct
from .structure import (
    augmentation,
    census,
    center,
    crt_split,
    ideal_closure,
    nil_ideals,
    quotient,
)

__version__ = "0.1.0"


def ring(spec: str) -> Ring:
    """Construct a ring from its spec string, e.g. ``ring("M2(Z4)")``."""
    return construct(parse_ring(spec))

__all__ = [
    "DecompositionCertificate",
    "additive_rank",
    "certificate_problems",
    "matrix_split",
    "poly_additive_decision",
    "sum_search",
    "torsion_sum_witness",
    "verify_certificate",
    "weak_split",
    "GroupRing",
    "Integers",
    "Matrix",
    "Poly",
    "PolyQuotient",
    "Product",
    "RingDescriptor",
    "Triangular",
    "Zn",
    "galois_field",
    "ElementClass",
    "OrbitWitness",
    "classify",
    "combine_product_witness",
    "frobenius_lift",
    "idempotent_from",
    "is_periodic",
    "orbit_witness",
    "poly_periodicity",
    "augmentation",
    "census",
    "center",
    "crt_split",
    "ideal_closure",
    "nil_ideals",
    "quotient",
    "format_element",
    "format_ring",
    "parse_element",
    "parse_ring",
    "GroupTable",
    "group_center",
    "preset",
    "RingProfile",
    "has_strong_tpp",
    "has_tpp",
    "is_two_good",
    "profile",
    "unit_group_torsion",
    "Element",
    "Ring",
    "construct",
    "ring",
    "__version__",
]

"""Neighborliness of centrally symmetric polytopes, decided exactly.

Build configurations, move between primal and transform sides, and certify
neighborliness through dominant subsets with rational LP witnesses.
"""
from .core import (
    DUAL_FACE_SCAN,
    DUAL_SIGN_ENUM,
    PRIMAL,
    PRIMAL_ORACLE,
    TRANSFORM,
    CsConfiguration,
    FaceCertificate,
    NeighborlinessReport,
    SignedSubset,
    antipodal_pair,
    is_antipodal_polytope,
    is_face_primal,
    max_neighborliness_primal,
)
from .dominance import (
    DominanceCertificate,
    euclidean_l1_distortion,
    is_dominant,
    max_neighborliness,
    min_dominant_size,
    s_max_norm,
    subspace_ratio,
)
from .transform import (
    cs_transform,
    inverse_transform,
    is_face_dual,
    is_valid_vertex_transform,
    zonotope_gauge,
)

__version__ = "0.1.0"

__all__ = [
    "DUAL_FACE_SCAN",
    "DUAL_SIGN_ENUM",
    "PRIMAL",
    "PRIMAL_ORACLE",
    "TRANSFORM",
    "CsConfiguration",
    "FaceCertificate",
    "NeighborlinessReport",
    "SignedSubset",
    "antipodal_pair",
    "is_antipodal_polytope",
    "is_face_primal",
    "max_neighborliness_primal",
    "DominanceCertificate",
    "euclidean_l1_distortion",
    "is_dominant",
    "max_neighborliness",
    "min_dominant_size",
    "s_max_norm",
    "subspace_ratio",
    "cs_transform",
    "inverse_transform",
    "is_face_dual",
    "is_valid_vertex_transform",
    "zonotope_gauge",
]

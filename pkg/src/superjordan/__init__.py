"""Jordan superderivations and super-biderivations on small finite rings.

Build rings from cyclic groups (``zn_ring``, ``TrivialExtension``,
``TriangularRing``, ``UpperTriangularRing``), grade them with ``grade``,
check identities with the ``is_*`` functions, take maps apart with the
``decompose_*`` procedures, and list whole classes with ``enumerate_*``.
"""

from .abelian import AbelianGroup, BoundExceeded, GroupElement, GroupHom, HomSpace, LIMITS, OrderConstraintError
from .axioms import (
    find_inner,
    is_derivation,
    is_jordan_biderivation,
    is_jordan_derivation,
    is_jordan_super_biderivation,
    is_jordan_superderivation,
    is_superderivation,
    super_biderivation_slices_verdict,
)
from .enumeration import (
    component_tuple_superderivations,
    enumerate_derivations,
    enumerate_jordan_biderivations,
    enumerate_jordan_derivations,
    enumerate_jordan_super_biderivations,
    enumerate_jordan_superderivations,
    enumerate_superderivations,
)
from .finring import (
    Bimodule,
    FinRing,
    RingElement,
    RingMap,
    TriangularRing,
    TrivialExtension,
    UpperTriangularRing,
    is_faithful,
    is_two_torsion,
    is_two_torsion_free,
    product_ring,
    regular_bimodule,
    first_row_split_iso,
    row_bimodule,
    table_bimodule,
    table_ring,
    triangular_to_trivial_iso,
    verify_ring_isomorphism,
    zero_bimodule,
    zn_bimodule,
    zn_ring,
)
from .graded import GradedRing, GradingError, commutator, grade, jordan_product, sigma, superproduct
from .maps import (
    AdditiveMap,
    BiadditiveMap,
    GradedMap,
    biadditive_from_images,
    graded_map,
    inner_derivation,
    map_from_generator_images,
    split_by_degree,
    zero_map,
)
from .structure import (
    PreconditionError,
    check_faithful_case,
    check_two_torsion_case,
    decompose_super_biderivation,
    decompose_triangular,
    decompose_trivial_ext,
    match_inner_degree1,
)
from .verdict import AxiomViolation, CheckLog, Verdict

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "AdditiveMap",
    "AxiomViolation",
    "biadditive_from_images",
    "BiadditiveMap",
    "Bimodule",
    "BoundExceeded",
    "check_faithful_case",
    "check_two_torsion_case",
    "CheckLog",
    "commutator",
    "component_tuple_superderivations",
    "decompose_super_biderivation",
    "decompose_triangular",
    "decompose_trivial_ext",
    "enumerate_derivations",
    "enumerate_jordan_biderivations",
    "enumerate_jordan_derivations",
    "enumerate_jordan_super_biderivations",
    "enumerate_jordan_superderivations",
    "enumerate_superderivations",
    "find_inner",
    "FinRing",
    "grade",
    "graded_map",
    "GradedMap",
    "GradedRing",
    "GradingError",
    "GroupElement",
    "GroupHom",
    "HomSpace",
    "inner_derivation",
    "is_derivation",
    "is_faithful",
    "is_jordan_biderivation",
    "is_jordan_derivation",
    "is_jordan_super_biderivation",
    "is_jordan_superderivation",
    "is_superderivation",
    "is_two_torsion",
    "is_two_torsion_free",
    "jordan_product",
    "LIMITS",
    "map_from_generator_images",
    "match_inner_degree1",
    "OrderConstraintError",
    "PreconditionError",
    "product_ring",
    "regular_bimodule",
    "first_row_split_iso",
    "RingElement",
    "RingMap",
    "row_bimodule",
    "sigma",
    "split_by_degree",
    "super_biderivation_slices_verdict",
    "superproduct",
    "table_bimodule",
    "table_ring",
    "triangular_to_trivial_iso",
    "TriangularRing",
    "TrivialExtension",
    "UpperTriangularRing",
    "Verdict",
    "verify_ring_isomorphism",
    "zero_bimodule",
    "zero_map",
    "zn_bimodule",
    "zn_ring",
]

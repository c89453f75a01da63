"""Exact-arithmetic descent tools for elliptic curves glued into genus-2 Jacobians."""

from .arith import (
    ContainmentResult,
    FactorizationError,
    SquareClass,
    SquareClassTriple,
    factor,
    is_prime,
    occurs,
    square_class,
    subgroup_contains,
    validate_containment_witness,
    validate_noncontainment_certificate,
)
from .descent import (
    MembershipVerdict,
    ObstructionVerdict,
    OddCoordinateWitness,
    descent_class,
    membership,
    surjectivity_obstruction,
    transfer_class,
)
from .ellcurve import ECPoint, EllipticCurve, INFINITY, TorsionGroup
from .etale import (
    AlgebraElement,
    AlgebraSquareClass,
    CubicEtaleAlgebra,
    NonSquare,
    NonSquareCertificate,
    NonUnitError,
    Square,
    SquareSearchBounds,
    Unknown,
    algebra_map,
    has_square_norm,
    is_square,
)
from .family import (
    FamilyInstance,
    FamilyParams,
    InvalidFamilyParams,
    build_instance,
    curve_for_prime,
    find_primes,
    gluing_for_instance,
    pairwise_distinct,
    run_family,
    verify_instance,
)
from .glue import (
    GenusTwoCurve,
    GluingData,
    GluingError,
    RationalMap,
    TwoTorsionIdentification,
    is_geometric_restriction,
    validate_identification,
    verify_cover_map,
    verify_rescaling,
)

__version__ = "0.1.0"

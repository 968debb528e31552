"""Exact computations with the Heisenberg vertex operator algebra and its semi-conformal vectors."""

from .bispace import (
    AmbientSpace,
    OrthogonalMap,
    Subspace,
    cayley_orthogonal,
    extend_orthonormal,
    form,
    hyperbolic_partner,
    is_regular,
    orthogonal_complement,
    projection_matrix,
)
from .conformal import (
    ConformalVector,
    IsotropicClass,
    ValueClass,
    ZeroClass,
    apply_orthogonal,
    central_charge,
    classify_moduli,
    grading_conformal_classify,
    is_automorphism,
    voa_isomorphic,
)
from .fock import FockVector, QuadLin, graded_dim, mode_apply, quadlin_to_fock, virasoro_bracket_defect, virasoro_mode
from .orbits import OrbitLabel, classify, enumerate_labels, same_orbit, witness
from .poset import HasseGraph, hasse
from .scalars import Approx, Exact, Tolerance, exact, is_zero, sqrt, using_tolerance
from .semiconformal import (
    RegPair,
    ScPair,
    commutant_weight1,
    complement,
    double_commutant_weight1,
    from_subspace,
    is_semiconformal,
    leq,
    leq_geometric,
    maximal_chain,
    rank1_generated,
    to_subspace,
)

__version__ = "0.1.0"

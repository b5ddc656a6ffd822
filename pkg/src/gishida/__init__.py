"""Local cohomology of lattice-ideal quotients via generalized Ishida complexes."""

from .chains import CohomologyProfile, FieldChoice
from .cones import make_cone
from .exactlin import LatticeData
from .ishida import SupportComplex, graded_local_cohomology, ishida_for

__all__ = [
    "CohomologyProfile",
    "FieldChoice",
    "LatticeData",
    "SupportComplex",
    "graded_local_cohomology",
    "ishida_for",
    "make_cone",
]

"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension
"""

from .slices import MonotoneSlice, LevelOutOfRangeException, SliceMonotonicityException
from .construct import (HamiltonianField, build_hamiltonian, sample_generator, slope_checks,
                        SlopeInvariantException)
from .mollify import MollifiedHamiltonian, mollify, bump_weights, KernelResolutionException
from .cone import ConeReport, cone_bound_check

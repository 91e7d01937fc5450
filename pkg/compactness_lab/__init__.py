"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension
"""

from .family import (FamilyMember, FlowFamily, oscillatory_family, family_from_generators,
                     compact_set, FamilySetupException)
from .equicontinuity import (ModulusReport, ConvergentChain, equicontinuity_modulus,
                             extract_convergent, family_report, total_variation)

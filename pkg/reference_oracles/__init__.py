"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension
"""

from .fv_upwind import FVState, fv_upwind_solve, OraclePreconditionException
from .characteristics import RK4Stepper, Trajectory, integrate_characteristics, characteristics_solve
from .compare import CrossValidation, cross_validate, l1_distance

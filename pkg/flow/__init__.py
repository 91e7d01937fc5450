"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension
"""

from .levelset import (FlowMap, invert_in_x, build_flow, flow_modulus_ratio,
                       FlowInvariantException)
from .checks import (OdeResidual, ode_residual, PushforwardReport, pushforward_check,
                     default_probes, check_times)

"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension
"""

from .main import run, main, setup_logging
from .pipelines import PIPELINES

"""
Isoline ~ Hamiltonian Transport Toolkit
Continuity equation with nearly incompressible fields in one dimension
"""

from .solution import TransportSolution, solve_cauchy, check_datum_support
from .testfunctions import TimeProfile, TestFunction, LevelProfile, default_test_suite
from .weak import weak_residual, clip_study, ClipStudy
from .observable import (ObservableRecord, conserved_observable, ProbeRow, ProbeTable,
                         uniqueness_probe, default_level_profile, default_tau)

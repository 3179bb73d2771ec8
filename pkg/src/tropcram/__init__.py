"""Linear systems over extensions of the max-plus semiring.

Semirings with a symmetry (signed, bi-valued, phase, supertropical), their
extensions by max-plus magnitudes, determinants through optimal assignment,
Cramer-type solvers, iterative Jacobi and Gauss-Seidel schemes, homogeneous
systems, a transportation route to all Cramer permanents, and signed
tropical hyperplanes.
"""

__version__ = "0.1.0"

from .assignment import det_smax, det_t2, fast_det, per_rmax
from .errors import (
    BruteForceBoundExceeded,
    DivergentStar,
    Infeasible,
    NoMonotoneWitness,
    PreconditionError,
    StructurallySingular,
    TransportInfeasible,
    TropcramError,
    UnsupportedSemiring,
)
from .extension import PHASE_MAX, SMAX, T2, Ext, semiring_by_name, supertropical_max, torus_max
from .geometry import Hyperplane, contains, general_position, hyperplane_through, meet_hyperplanes, sign_transform
from .linalg import TropMatrix, adjugate, det, hungarian_scaling, kleene_star, per
from .semirings import BOOLEAN, BOTTOM, N2, PHASE, RMAX, SIGNS, Semiring
from .solvers import (
    SolverConfig,
    cramer_solve,
    gauss_seidel_solve,
    homogeneous_hat,
    homogeneous_solve,
    jacobi_solve,
)
from .transport import cramer_permanents_transport, cross_check_permanents, solve_transport

__all__ = [
    "BOOLEAN",
    "BOTTOM",
    "BruteForceBoundExceeded",
    "DivergentStar",
    "Ext",
    "Hyperplane",
    "Infeasible",
    "N2",
    "NoMonotoneWitness",
    "PHASE",
    "PHASE_MAX",
    "PreconditionError",
    "RMAX",
    "SIGNS",
    "SMAX",
    "Semiring",
    "SolverConfig",
    "StructurallySingular",
    "T2",
    "TransportInfeasible",
    "TropMatrix",
    "TropcramError",
    "UnsupportedSemiring",
    "adjugate",
    "contains",
    "cramer_permanents_transport",
    "cramer_solve",
    "cross_check_permanents",
    "det",
    "det_smax",
    "det_t2",
    "fast_det",
    "gauss_seidel_solve",
    "general_position",
    "homogeneous_hat",
    "homogeneous_solve",
    "hungarian_scaling",
    "hyperplane_through",
    "jacobi_solve",
    "kleene_star",
    "meet_hyperplanes",
    "per",
    "per_rmax",
    "semiring_by_name",
    "sign_transform",
    "solve_transport",
    "supertropical_max",
    "torus_max",
]

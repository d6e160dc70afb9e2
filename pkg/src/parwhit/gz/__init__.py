from .arrays import SupportConstraints, TriangularArray, random_array
from .combin import combin1, combin2
from .operators import (DifferenceOperator, GZMeasure, adjoint, build_Eij,
                        build_EnN, commutator, coxeter_cycle, gen, twist)
from .whittaker import (LeftWhittakerReport, RightSupportReport, psi_L,
                        verify_left_whittaker, verify_right_support_relations)

__all__ = [
    "TriangularArray", "SupportConstraints", "random_array",
    "combin1", "combin2",
    "DifferenceOperator", "GZMeasure", "gen", "commutator", "build_Eij",
    "build_EnN", "twist", "adjoint", "coxeter_cycle",
    "psi_L", "verify_left_whittaker", "verify_right_support_relations",
    "LeftWhittakerReport", "RightSupportReport",
]

"""Exact quantum and homological braid representations on Verma module weight spaces."""

from vermahom._backend import BACKEND
from vermahom.braiding import BraidWord, braid_matrix, check_equivariance, kohno_kernel_stability, rmatrix_pair
from vermahom.homology import (
    HVector,
    NonInvertible,
    arcs_to_codes_matrix,
    change_basis,
    op_E,
    op_F1,
    op_Fdiv,
    op_K,
    op_Kinv,
    tens,
    untens,
)
from vermahom.linalg import OperatorMatrix
from vermahom.qnum import q_binomial, q_factorial, q_integer, t_binomial, t_factorial, t_integer
from vermahom.ring import LaurentPoly, NotDivisible, RingHom, VariableSet, poly_evaluate
from vermahom.verma import QVector, coproduct_action, highest_weight_basis, weight_basis

__all__ = [
    "BACKEND", "BraidWord", "HVector", "LaurentPoly", "NonInvertible", "NotDivisible", "OperatorMatrix",
    "QVector", "RingHom", "VariableSet", "arcs_to_codes_matrix", "braid_matrix", "change_basis",
    "check_equivariance", "coproduct_action", "highest_weight_basis", "kohno_kernel_stability",
    "op_E", "op_F1", "op_Fdiv", "op_K", "op_Kinv", "poly_evaluate", "q_binomial", "q_factorial",
    "q_integer", "rmatrix_pair", "t_binomial", "t_factorial", "t_integer", "tens", "untens", "weight_basis",
]
__version__ = "0.1.0"

"""Exact quadratic forms over Laurent polynomial rings, transfers and controlled realizations."""

from .ring import ContextMismatch, LaurentPoly, NotExactDivision, parse_poly
from .matrix import (
    DimensionMismatch,
    NotInvertible,
    RingMatrix,
    bareiss_det,
    conj_transpose,
    direct_sum,
    kronecker,
    mat_mul,
)
from .forms import (
    AlmostSymmetricForm,
    NotAlmostSymmetric,
    QClassElement,
    QuadraticForm,
    almost_product,
    make_alpha,
    make_E8,
    make_psi0,
    make_psi_n,
    mu_of,
    lambda_of,
    nilpotency_check,
    q_reduce,
    quad_almost_product,
    signature,
    symmetrize,
    witness_sublagrangian_check,
)
from .complex import (
    FreeChainComplex,
    SymmetricStructure,
    build_circle,
    build_t2,
    build_torus,
    dual_complex,
    instant_form_iso,
    tensor_complex,
)
from .transfer import Cover, transfer_form, transfer_matrix, transfer_poly
from .controlled import (
    GeometricForm,
    TorusPoint,
    control_realize,
    forget_control,
    radius,
)

__version__ = "0.1.0"

__all__ = [
    "ContextMismatch",
    "LaurentPoly",
    "NotExactDivision",
    "parse_poly",
    "DimensionMismatch",
    "NotInvertible",
    "RingMatrix",
    "bareiss_det",
    "conj_transpose",
    "direct_sum",
    "kronecker",
    "mat_mul",
    "AlmostSymmetricForm",
    "NotAlmostSymmetric",
    "QClassElement",
    "QuadraticForm",
    "almost_product",
    "make_alpha",
    "make_E8",
    "make_psi0",
    "make_psi_n",
    "mu_of",
    "lambda_of",
    "nilpotency_check",
    "q_reduce",
    "quad_almost_product",
    "signature",
    "symmetrize",
    "witness_sublagrangian_check",
    "FreeChainComplex",
    "SymmetricStructure",
    "build_circle",
    "build_t2",
    "build_torus",
    "dual_complex",
    "instant_form_iso",
    "tensor_complex",
    "Cover",
    "transfer_form",
    "transfer_matrix",
    "transfer_poly",
    "GeometricForm",
    "TorusPoint",
    "control_realize",
    "forget_control",
    "radius",
]

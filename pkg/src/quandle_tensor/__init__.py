"""Finite quandles, their canonical tensor products, and 1-handle invariants."""

from .core import (
    AxiomError,
    GoodInvolution,
    Quandle,
    QuandleError,
    QuandleHom,
    Violation,
    act_word,
    check_good_involution,
    check_hom,
    check_quandle,
    connected_components,
    double_hom,
    enumerate_good_involutions,
    inv_op,
    left_act_word,
    make_conjugation,
    make_dihedral,
    make_trivial,
    op,
    symmetric_double,
    validate_good_involution,
    validate_hom,
    validate_quandle,
)
from .tensor import (
    ClassInvolution,
    HandleReport,
    QuotientSet,
    TensorProduct,
    class_of,
    handle_report,
    induced_map,
    quotient,
    rho_map,
    tau_map,
    tensor_product,
)

__version__ = "0.1.0"

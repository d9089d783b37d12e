"""FIR, time-varying and ARMA1 graph filters."""

from wsn_graph_filtering.filters.arma import (
    arma1_fir_coefficients,
    require_symmetric,
    run_arma1,
    tikhonov_solve,
    tikhonov_target,
)
from wsn_graph_filtering.filters.fir import (
    apply_fir,
    apply_timevarying,
    expected_output,
    filter_matrix,
)

__all__ = [
    "apply_fir",
    "apply_timevarying",
    "arma1_fir_coefficients",
    "expected_output",
    "filter_matrix",
    "require_symmetric",
    "run_arma1",
    "tikhonov_solve",
    "tikhonov_target",
]

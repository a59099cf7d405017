"""Sequential secant and cord derivatives."""

from ._seqderiv import (
    Error,
    Function,
    approx_target,
    continued_fraction,
    cord_quotient,
    decompose,
    estimate_cord_set,
    estimate_secant_set,
    gallery,
    hausdorff,
    log_ratio_quotients,
    make_function,
    newton_quotient,
    normalize,
    predict_exp,
    predict_poly,
    rational_check,
    run,
    sequence_terms,
    solve_target,
    subsequential_limits,
    symmetric_quotient,
    trace,
    verify,
)

__all__ = [
    "Error",
    "Function",
    "approx_target",
    "continued_fraction",
    "cord_quotient",
    "decompose",
    "estimate_cord_set",
    "estimate_secant_set",
    "gallery",
    "hausdorff",
    "log_ratio_quotients",
    "make_function",
    "newton_quotient",
    "normalize",
    "predict_exp",
    "predict_poly",
    "rational_check",
    "run",
    "sequence_terms",
    "solve_target",
    "subsequential_limits",
    "symmetric_quotient",
    "trace",
    "verify",
]

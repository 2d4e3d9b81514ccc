from ._clmlab import (
    ClmError,
    TheoremParams,
    __version__,
    blowup_time,
    conserved_quantity,
    describe,
    evaluate,
    evolve,
    extract_params,
    first_touch,
    hilbert,
    initial_data,
    mapped_grid,
    predict_blowup,
    preset_ids,
    profile_error,
    r_of_t,
    run_cli,
    scaling,
    zeros_at_time,
)

__all__ = [
    "ClmError",
    "TheoremParams",
    "__version__",
    "blowup_time",
    "conserved_quantity",
    "describe",
    "evaluate",
    "evolve",
    "extract_params",
    "first_touch",
    "hilbert",
    "initial_data",
    "mapped_grid",
    "predict_blowup",
    "preset_ids",
    "profile_error",
    "r_of_t",
    "run_cli",
    "scaling",
    "zeros_at_time",
]

"""Half-space radiating-gas simulator: python surface over the C++ core."""

from ._radgas import (
    __version__,
    canonical_config,
    check_inequalities,
    elliptic_mms,
    fit_decay,
    linearized_nd_rate,
    llf_flux,
    run_simulation,
    series_columns,
    stationary_profile,
)

__all__ = [
    "__version__",
    "canonical_config",
    "check_inequalities",
    "elliptic_mms",
    "fit_decay",
    "linearized_nd_rate",
    "llf_flux",
    "run_simulation",
    "series_columns",
    "stationary_profile",
]

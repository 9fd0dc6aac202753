"""Change-point tests for dynamic networks (C++ core via pybind11)."""

from ._core import (
    DataError,
    DegenerateInput,
    InvalidInput,
    MosaicConfig,
    NetmosaicError,
    NetSeries,
    NumericalError,
    OracleConfig,
    __version__,
    c_alpha,
    candidate_taus,
    centrality_profile,
    l2_cusum_stat,
    l2_cusum_test,
    make_mean,
    mosaic_test,
    normal_quantile,
    null_distribution,
    parse_series,
    phi_test,
    power_table,
    psi_level,
    psi_test,
    shapiro_wilk,
    simulate,
    write_series,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]

"""Lag- and scale-dependent cross-correlation of long-range correlated series.

Thin python layer over the C++ core: series transforms, the moving-average
detrended cross-correlation estimator, closed-form fBm asymptotics, the
coupled fBm pair generator, and power-law scaling fits.
"""

try:
    from . import _macorr
except ImportError:  # development tree: extension next to the package
    import _macorr  # type: ignore

import numpy as _np

from ._macorr import (  # noqa: F401
    __version__,
    analytic,
    auto_scaling_curve,
    cross_correlation,
    cross_correlation_fft,
    detrend,
    ensemble_cross_correlation,
    fbm,
    fit_scaling,
    leverage_curve,
    log_returns,
    mean_subtract_integrate,
    moving_average,
    rolling_volatility,
)


def collapse(result, h1, h2):
    """Rescale an estimator result by n^-(H1+H2); returns a new dict."""
    out = dict(result)
    factors = _np.asarray(out["n"], dtype=float) ** (-(h1 + h2))
    out["value"] = out["value"] * factors[:, None]
    out["lags_scaled"] = True
    return out

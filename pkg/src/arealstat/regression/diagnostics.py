"""Residual autocorrelation checks and side-by-side model comparison."""

from dataclasses import dataclass

import numpy as np

from ..autocorrelation import moran_permutation
from ..errors import DataError, ParameterError


def residual_moran(fit, w, nperm=999, seed=0, threads=1):
    """Permutation Moran test on a fit's residuals (two-sided)."""
    resid = np.asarray(fit.residuals, dtype=float)
    if np.ptp(resid) == 0:
        raise DataError("residuals have zero variance; Moran's I is undefined")
    return moran_permutation(resid, w, nperm=nperm, seed=seed, threads=threads)


@dataclass
class ModelComparison:
    rows: list

    @property
    def models(self):
        return [r["model"] for r in self.rows]

    @property
    def best_aic(self):
        return min(self.rows, key=lambda r: r["aic"])["model"]

    def to_dict(self):
        return {"rows": self.rows, "min_aic_model": self.best_aic}


def _r2_entry(fit):
    if fit.model == "OLS":
        return fit.adj_r2, "adj"
    if fit.model == "GWR":
        return fit.quasi_r2, "quasi"
    return None, None


def compare_models(fits, w, nperm=999, seed=0, threads=1):
    """One row per fit: R² (adjusted for OLS, quasi for GWR), AIC, RSS, residual Moran."""
    fits = list(fits)
    if len(fits) < 2:
        raise ParameterError("comparison needs at least two fitted models")
    y0 = np.asarray(fits[0].y)
    for f in fits[1:]:
        if len(f.y) != len(y0) or not np.array_equal(np.asarray(f.y), y0):
            raise DataError("fits were not made on the same response")
    rows = []
    for f in fits:
        r2, kind = _r2_entry(f)
        moran = residual_moran(f, w, nperm=nperm, seed=seed, threads=threads)
        rows.append({
            "model": f.model,
            "r2": r2,
            "r2_kind": kind,
            "aic": f.aic,
            "rss": f.rss,
            "residual_moran": {
                "estimate": moran.I,
                "expectation": moran.expectation,
                "variance": moran.variance,
                "p_value": moran.p_value,
            },
        })
    return ModelComparison(rows)

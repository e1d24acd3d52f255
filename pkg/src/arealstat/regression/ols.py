"""Ordinary least squares and the fit record shared with SLM/SEM."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import stats

from ..errors import DataError

LN2PI = np.log(2.0 * np.pi)


@dataclass
class LinearFit:
    """Result of an OLS, spatial-lag or spatial-error fit.

    ``coefficients`` maps a term name to ``(estimate, std_error, p_value)``.
    ``rho`` is set only for SLM and ``lam`` only for SEM; ``spatial_se`` is
    the standard error of whichever is present and ``lr_p`` the LR test
    against OLS. ``aic = -2 * log_likelihood + 2 * n_params``.
    """

    model: str
    names: list
    coefficients: dict
    sigma2: float
    log_likelihood: float
    n_params: int
    aic: float
    rss: float
    residuals: np.ndarray
    fitted: np.ndarray
    y: np.ndarray
    rho: Optional[float] = None
    lam: Optional[float] = None
    spatial_se: Optional[float] = None
    lr_stat: Optional[float] = None
    lr_p: Optional[float] = None
    r2: Optional[float] = None
    adj_r2: Optional[float] = None
    standardized: Optional[bool] = None
    extra: dict = field(default_factory=dict)

    @property
    def n(self):
        return len(self.y)

    @property
    def beta(self):
        return np.array([self.coefficients[k][0] for k in self.names])

    def coefficient_table(self):
        rows = []
        if self.model in ("SLM", "SEM"):
            name = "rho" if self.model == "SLM" else "lambda"
            value = self.rho if self.model == "SLM" else self.lam
            rows.append({"term": name, "estimate": value, "std_error": self.spatial_se,
                         "p_value": self.lr_p, "test": "LR"})
        for k in self.names:
            est, se, p = self.coefficients[k]
            rows.append({"term": k, "estimate": est, "std_error": se, "p_value": p})
        return rows

    def to_dict(self):
        out = {
            "model": self.model,
            "n": self.n,
            "coefficients": self.coefficient_table(),
            "sigma2": self.sigma2,
            "log_likelihood": self.log_likelihood,
            "n_params": self.n_params,
            "aic": self.aic,
            "rss": self.rss,
            "residuals": [float(v) for v in self.residuals],
            "fitted": [float(v) for v in self.fitted],
        }
        if self.model == "OLS":
            out["r2"] = self.r2
            out["adj_r2"] = self.adj_r2
        else:
            out["lr_stat"] = self.lr_stat
            out["lr_p"] = self.lr_p
            out["standardized_weights"] = self.standardized
        return out


def collinear_columns(X, names=None):
    """Names of columns that are linear combinations of earlier columns."""
    names = names or [f"x{k}" for k in range(X.shape[1])]
    bad = []
    rank = 0
    for j in range(X.shape[1]):
        r = np.linalg.matrix_rank(X[:, : j + 1])
        if r == rank:
            bad.append(names[j])
        rank = r
    return bad


def check_design(X, y, names=None):
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=float).ravel()
    if X.ndim != 2 or X.shape[0] != len(y):
        raise DataError(f"design is {X.shape} but response has {len(y)} values")
    if not (np.all(np.isfinite(X)) and np.all(np.isfinite(y))):
        raise DataError("design or response has non-finite values")
    n, k = X.shape
    if n <= k:
        raise DataError(f"n = {n} observations cannot support {k} coefficients")
    names = list(names) if names is not None else ["(Intercept)"] + [f"x{j}" for j in range(1, k)]
    if np.linalg.matrix_rank(X) < k:
        bad = collinear_columns(X, names)
        raise DataError(f"design matrix is rank deficient; collinear column(s): {', '.join(bad)}")
    return X, y, names


def least_squares(X, y):
    """Coefficients and residuals of ``min ||y - X b||``."""
    b = np.linalg.lstsq(X, y, rcond=None)[0]
    return b, y - X @ b


def gaussian_loglik(rss, n):
    """Maximized Gaussian log-likelihood with ``sigma2 = rss / n``."""
    with np.errstate(divide="ignore"):
        return float(-0.5 * n * (LN2PI + np.log(rss / n) + 1.0))


def fit_ols(X, y, names=None):
    """OLS with t-based inference and Gaussian AIC (``ncol(X) + 1`` parameters)."""
    X, y, names = check_design(X, y, names)
    n, k = X.shape
    b, e = least_squares(X, y)
    rss = float(e @ e)
    df = n - k
    s2 = rss / df
    cov = s2 * np.linalg.inv(X.T @ X)
    se = np.sqrt(np.diag(cov))
    with np.errstate(divide="ignore", invalid="ignore"):
        t = b / se
    p = 2.0 * stats.t.sf(np.abs(t), df)
    tss = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - rss / tss if tss > 0 else 0.0
    adj = 1.0 - (1.0 - r2) * (n - 1) / df
    ll = gaussian_loglik(rss, n)
    n_params = k + 1
    return LinearFit(
        model="OLS",
        names=names,
        coefficients={nm: (float(b[j]), float(se[j]), float(p[j])) for j, nm in enumerate(names)},
        sigma2=rss / n,
        log_likelihood=ll,
        n_params=n_params,
        aic=-2.0 * ll + 2.0 * n_params,
        rss=rss,
        residuals=e,
        fitted=y - e,
        y=y,
        r2=r2,
        adj_r2=adj,
        extra={"sigma2_unbiased": s2},
    )

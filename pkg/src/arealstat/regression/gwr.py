"""Geographically weighted regression with a fixed-distance kernel."""

from dataclasses import dataclass, field

import numpy as np

from .._parallel import map_chunks
from ..errors import DataError, ParameterError
from ..optimize import golden_section
from ..weights import distance_matrix
from .ols import LN2PI, check_design

KERNELS = ("gaussian", "bisquare")
CRITERIA = ("loocv", "aicc")
COND_LIMIT = 1e12
BANDWIDTH_TOL = 1e-5


def gwr_kernel(d, bandwidth, kind="bisquare"):
    """Kernel weight for distance ``d`` at the given bandwidth.

    gaussian: ``exp(-d**2 / (2 b**2))``; bisquare: ``(1 - (d/b)**2)**2`` for
    ``d < b`` and 0 beyond.
    """
    bandwidth = float(bandwidth)
    if not bandwidth > 0:
        raise ParameterError(f"bandwidth must be positive, got {bandwidth}")
    d = np.asarray(d, dtype=float)
    if np.any(d < 0):
        raise ParameterError("distances must be nonnegative")
    u = d / bandwidth
    if kind == "gaussian":
        return np.exp(-0.5 * u * u)
    if kind == "bisquare":
        return np.where(u < 1.0, (1.0 - u * u) ** 2, 0.0)
    raise ParameterError(f"kernel must be one of {KERNELS}, got {kind!r}")


@dataclass
class GwrFit:
    names: list
    local_coefficients: np.ndarray
    local_r2: np.ndarray
    bandwidth: float
    kernel: str
    effective_params: float
    quasi_r2: float
    log_likelihood: float
    aic: float
    aicc: float
    rss: float
    residuals: np.ndarray
    fitted: np.ndarray
    y: np.ndarray
    hat_diagonal: np.ndarray
    coefficient_summary: dict
    bandwidth_selection: dict = field(default_factory=dict)

    model = "GWR"

    @property
    def n(self):
        return len(self.y)

    def to_dict(self):
        return {
            "model": "GWR",
            "n": self.n,
            "kernel": self.kernel,
            "bandwidth": self.bandwidth,
            "bandwidth_selection": self.bandwidth_selection,
            "effective_params": self.effective_params,
            "quasi_r2": self.quasi_r2,
            "log_likelihood": self.log_likelihood,
            "aic": self.aic,
            "aicc": self.aicc,
            "rss": self.rss,
            "coefficient_summary": [
                {"term": k, **dict(zip(("minimum", "q1", "median", "q3", "maximum"), v))}
                for k, v in self.coefficient_summary.items()
            ],
            "local_coefficients": {
                k: [float(v) for v in self.local_coefficients[:, j]] for j, k in enumerate(self.names)
            },
            "local_r2": [float(v) for v in self.local_r2],
            "residuals": [float(v) for v in self.residuals],
            "fitted": [float(v) for v in self.fitted],
        }


def five_number_summary(values):
    """Minimum, quartiles (linear interpolation) and maximum."""
    q = np.quantile(np.asarray(values, dtype=float), [0.0, 0.25, 0.5, 0.75, 1.0])
    return tuple(float(v) for v in q)


def min_feasible_bandwidth(X, dist):
    """Smallest bisquare bandwidth giving every location a full-rank local design.

    Returns ``(bandwidth, location)``: the bandwidth must strictly exceed the
    value, and ``location`` is the index that forces it.
    """
    n, k = X.shape
    worst, where = 0.0, 0
    for i in range(n):
        order = np.argsort(dist[i], kind="stable")
        m = k
        while m <= n and np.linalg.matrix_rank(X[order[:m]]) < k:
            m += 1
        if m > n:
            raise DataError("design is rank deficient even with all observations")
        need = dist[i, order[m - 1]]
        if need > worst:
            worst, where = need, i
    return float(worst), int(where)


def _local_fits(X, y, dist, bandwidth, kernel, threads=1):
    """Per-location WLS; returns ``(betas, hat_diag, ok)``."""
    n, k = X.shape

    def chunk(a, b):
        betas = np.empty((b - a, k))
        hat = np.empty(b - a)
        ok = np.ones(b - a, dtype=bool)
        for r, i in enumerate(range(a, b)):
            wi = gwr_kernel(dist[i], bandwidth, kernel)
            xw = X * wi[:, None]
            A = xw.T @ X
            if np.linalg.cond(A) > COND_LIMIT:
                ok[r] = False
                betas[r] = np.nan
                hat[r] = np.nan
                continue
            betas[r] = np.linalg.solve(A, xw.T @ y)
            hat[r] = wi[i] * (X[i] @ np.linalg.solve(A, X[i]))
        return betas, hat, ok

    parts = map_chunks(chunk, n, threads, min_chunk=16)
    betas = np.vstack([p[0] for p in parts])
    hat = np.concatenate([p[1] for p in parts])
    ok = np.concatenate([p[2] for p in parts])
    return betas, hat, ok


def _scores(X, y, betas, hat):
    n = len(y)
    fitted = np.einsum("ij,ij->i", X, betas)
    e = y - fitted
    rss = float(e @ e)
    tr = float(hat.sum())
    cv = float(((e / (1.0 - hat)) ** 2).sum())
    sigma2 = rss / n
    if n - 2.0 - tr > 0:
        aicc = n * np.log(sigma2) + n * LN2PI + n * (n + tr) / (n - 2.0 - tr)
    else:
        aicc = np.inf
    return fitted, e, rss, tr, cv, float(aicc)


def _coords_distance(coords, metric):
    coords = np.asarray(coords, dtype=float)
    if coords.ndim != 2 or coords.shape[1] != 2:
        raise DataError("coords must be an (n, 2) array")
    return distance_matrix(coords, metric)


def select_bandwidth(X, y, coords, kernel="bisquare", criterion="loocv", metric="euclidean",
                     threads=1, names=None, return_details=False):
    """Fixed bandwidth minimizing leave-one-out CV error or AICc.

    Golden-section search over ``[min nonzero distance, max distance]``;
    for the bisquare kernel the lower end is raised to the smallest
    bandwidth at which every local design is full rank.
    """
    if criterion not in CRITERIA:
        raise ParameterError(f"criterion must be one of {CRITERIA}, got {criterion!r}")
    if kernel not in KERNELS:
        raise ParameterError(f"kernel must be one of {KERNELS}, got {kernel!r}")
    X, y, names = check_design(X, y, names)
    dist = _coords_distance(coords, metric)
    off = dist[~np.eye(len(y), dtype=bool)]
    nonzero = off[off > 0]
    if nonzero.size == 0:
        raise DataError("all locations coincide; bandwidth search interval is empty")
    lo, hi = float(nonzero.min()), float(nonzero.max())
    if kernel == "bisquare":
        need, _ = min_feasible_bandwidth(X, dist)
        lo = max(lo, need * (1.0 + 1e-9) + 1e-12)
    if not hi > lo:
        raise DataError(f"bandwidth search interval [{lo:g}, {hi:g}] is degenerate")

    def score(b):
        betas, hat, ok = _local_fits(X, y, dist, b, kernel, threads)
        if not ok.all():
            return np.inf
        _, _, _, _, cv, aicc = _scores(X, y, betas, hat)
        return cv if criterion == "loocv" else aicc

    bw, value = golden_section(score, lo, hi, tol=BANDWIDTH_TOL * (hi - lo))
    if return_details:
        return bw, {"criterion": criterion, "score": value, "interval": [lo, hi]}
    return bw


def fit_gwr(X, y, coords, bandwidth="auto", kernel="bisquare", criterion="loocv",
            metric="euclidean", names=None, threads=1):
    """Fit a GWR model.

    Parameters
    ----------
    X : array, shape (n, k)
        Design with a leading intercept column.
    y : array, shape (n,)
    coords : array, shape (n, 2)
        Location of each observation (unit centroids).
    bandwidth : float or "auto"
        Fixed kernel bandwidth in coordinate units, or ``"auto"`` to choose
        it with :func:`select_bandwidth`.
    kernel : {"bisquare", "gaussian"}
    criterion : {"loocv", "aicc"}
        Used only when ``bandwidth="auto"``.

    Returns
    -------
    GwrFit
        Local coefficients, local and quasi R², effective number of
        parameters (trace of the hat matrix) and AIC/AICc.

    Raises
    ------
    DataError
        If the bandwidth leaves some local design rank deficient; the message
        names the location and the smallest feasible bandwidth.
    """
    X, y, names = check_design(X, y, names)
    n, k = X.shape
    if kernel not in KERNELS:
        raise ParameterError(f"kernel must be one of {KERNELS}, got {kernel!r}")
    dist = _coords_distance(coords, metric)
    selection = {}
    if isinstance(bandwidth, str):
        if bandwidth != "auto":
            raise ParameterError(f"bandwidth must be a number or 'auto', got {bandwidth!r}")
        bandwidth, selection = select_bandwidth(
            X, y, coords, kernel, criterion, metric, threads, names, return_details=True
        )
        selection["method"] = "golden_section"
    bandwidth = float(bandwidth)
    if not bandwidth > 0:
        raise ParameterError(f"bandwidth must be positive, got {bandwidth}")

    betas, hat, ok = _local_fits(X, y, dist, bandwidth, kernel, threads)
    if not ok.all():
        where = int(np.flatnonzero(~ok)[0])
        need, _ = min_feasible_bandwidth(X, dist)
        raise DataError(
            f"bandwidth {bandwidth:g} leaves the local design at location {where} rank deficient; "
            f"use a bandwidth greater than {need:g}"
        )
    fitted, e, rss, tr, cv, aicc = _scores(X, y, betas, hat)
    tss = float(((y - y.mean()) ** 2).sum())
    ll = float(-0.5 * n * (LN2PI + np.log(rss / n) + 1.0))

    local_r2 = np.empty(n)
    for i in range(n):
        wi = gwr_kernel(dist[i], bandwidth, kernel)
        ybar = (wi @ y) / wi.sum()
        tss_w = wi @ (y - ybar) ** 2
        rss_w = wi @ (y - X @ betas[i]) ** 2
        local_r2[i] = 1.0 - rss_w / tss_w if tss_w > 0 else 0.0
    local_r2 = np.clip(local_r2, 0.0, 1.0)

    selection = dict(selection, cv_score=cv)
    return GwrFit(
        names=names,
        local_coefficients=betas,
        local_r2=local_r2,
        bandwidth=bandwidth,
        kernel=kernel,
        effective_params=tr,
        quasi_r2=1.0 - rss / tss if tss > 0 else 0.0,
        log_likelihood=ll,
        aic=-2.0 * ll + 2.0 * (tr + 1.0),
        aicc=aicc,
        rss=rss,
        residuals=e,
        fitted=fitted,
        y=y,
        hat_diagonal=hat,
        coefficient_summary={nm: five_number_summary(betas[:, j]) for j, nm in enumerate(names)},
        bandwidth_selection=selection,
    )

"""Maximum-likelihood spatial lag (SLM) and spatial error (SEM) models.

Both are fitted by maximizing the concentrated Gaussian log-likelihood in
the single spatial parameter, with ``log|I - rho W|`` evaluated from the
eigenvalues of ``W``.
"""

import numpy as np
from scipy import stats
from scipy.sparse.csgraph import breadth_first_order, connected_components

from ..errors import BoundaryError, DataError, ParameterError
from ..optimize import golden_section
from .ols import LN2PI, LinearFit, check_design, fit_ols, least_squares

MAX_DENSE_N = 10_000
OPTIMIZER_TOL = 1e-8
HESSIAN_STEP = 1e-5


def _similarity_scaling(w):
    """Positive ``d`` with ``diag(d) W`` symmetric, or ``None`` if none exists."""
    a = w.dense()
    if np.array_equal(a, a.T):
        return np.ones(w.n), a
    if not np.array_equal(a != 0, a.T != 0):
        return None, a
    n = w.n
    d = np.zeros(n)
    _, labels = connected_components(w.sparse, directed=False)
    for comp in np.unique(labels):
        root = int(np.flatnonzero(labels == comp)[0])
        order, pred = breadth_first_order(w.sparse, root, directed=False, return_predecessors=True)
        d[root] = 1.0
        for node in order[1:]:
            p = pred[node]
            d[node] = d[p] * a[p, node] / a[node, p]
    da = d[:, None] * a
    if np.abs(da - da.T).max() > 1e-10 * np.abs(da).max():
        return None, a
    return d, a


class LogDetProfile:
    """``rho -> log|I - rho W|`` from the eigenvalues of ``W``.

    ``interval`` is ``(1/e_min, 1/e_max)``, the range of ``rho`` over which
    ``I - rho W`` stays nonsingular and the log-determinant is real.
    """

    def __init__(self, eigenvalues, standardized=None):
        self.eigenvalues = np.sort(np.asarray(eigenvalues, dtype=float))
        e_min, e_max = self.eigenvalues[0], self.eigenvalues[-1]
        if not (e_min < 0 < e_max):
            raise DataError("weights need both negative and positive eigenvalues")
        self.interval = (1.0 / e_min, 1.0 / e_max)
        self.standardized = standardized

    def __call__(self, rho):
        if rho == 0:
            return 0.0
        lo, hi = self.interval
        if not lo < rho < hi:
            raise ParameterError(f"rho = {rho} outside valid interval ({lo:.6g}, {hi:.6g})")
        return float(np.log1p(-rho * self.eigenvalues).sum())

    def contains(self, rho):
        lo, hi = self.interval
        return lo < rho < hi


def log_det_profile(w):
    """Eigenvalue log-determinant for symmetric or symmetrizable weights.

    Row-standardized weights built from a symmetric matrix are similar to a
    symmetric matrix, so their eigenvalues are real. Other asymmetric
    weights (e.g. raw k-nearest-neighbour) are rejected.
    """
    if w.n > MAX_DENSE_N:
        raise ParameterError(f"dense eigendecomposition limited to n <= {MAX_DENSE_N}")
    d, a = _similarity_scaling(w)
    if d is None:
        raise ParameterError(
            "weights are asymmetric and not a row-standardized symmetric matrix; "
            "symmetrize them (e.g. use adjacency, distance band or inverse distance, "
            "optionally row-standardized) before fitting SLM/SEM"
        )
    r = np.sqrt(d)
    s = r[:, None] * a / r[None, :]
    s = 0.5 * (s + s.T)
    return LogDetProfile(np.linalg.eigvalsh(s), standardized=w.standardized)


def _maximize(conc, profile, tol=OPTIMIZER_TOL):
    lo, hi = profile.interval
    width = hi - lo
    eps = 1e-7 * width
    x, f = golden_section(lambda r: -conc(r), lo + eps, hi - eps, tol=tol)
    margin = 1e-5 * width
    if x - lo < margin or hi - x < margin:
        raise BoundaryError(f"rho at boundary of valid interval ({lo:.6g}, {hi:.6g}): {x:.6g}")
    return x, -f


def _numerical_hessian(f, theta, step=HESSIAN_STEP):
    theta = np.asarray(theta, dtype=float)
    k = len(theta)
    h = step * np.maximum(np.abs(theta), 1.0)
    f0 = f(theta)
    H = np.empty((k, k))
    with np.errstate(invalid="ignore"):
        _fill_hessian(f, theta, h, f0, H)
    return H


def _fill_hessian(f, theta, h, f0, H):
    k = len(theta)
    for i in range(k):
        ei = np.zeros(k)
        ei[i] = h[i]
        H[i, i] = (f(theta + ei) - 2.0 * f0 + f(theta - ei)) / h[i] ** 2
        for j in range(i):
            ej = np.zeros(k)
            ej[j] = h[j]
            H[i, j] = H[j, i] = (
                f(theta + ei + ej) - f(theta + ei - ej) - f(theta - ei + ej) + f(theta - ei - ej)
            ) / (4.0 * h[i] * h[j])


def _spatial_fit(model, X, y, names, w, profile, param, beta, resid, ols, full_ll, conc_ll):
    n, k = X.shape
    sigma2 = float(resid @ resid) / n
    theta = np.concatenate([beta, [param, sigma2]])
    H = _numerical_hessian(full_ll, theta)
    try:
        cov = np.linalg.inv(-H)
        se = np.sqrt(np.clip(np.diag(cov), 0.0, None))
    except np.linalg.LinAlgError:
        se = np.full(len(theta), np.nan)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = beta / se[:k]
    p = 2.0 * stats.norm.sf(np.abs(z))
    ll = conc_ll
    lr = max(0.0, 2.0 * (ll - ols.log_likelihood))
    n_params = k + 2
    return LinearFit(
        model=model,
        names=names,
        coefficients={nm: (float(beta[j]), float(se[j]), float(p[j])) for j, nm in enumerate(names)},
        sigma2=sigma2,
        log_likelihood=ll,
        n_params=n_params,
        aic=-2.0 * ll + 2.0 * n_params,
        rss=float(resid @ resid),
        residuals=resid,
        fitted=y - resid,
        y=y,
        rho=float(param) if model == "SLM" else None,
        lam=float(param) if model == "SEM" else None,
        spatial_se=float(se[k]),
        lr_stat=lr,
        lr_p=float(stats.chi2.sf(lr, 1)),
        standardized=w.standardized,
        extra={"interval": list(profile.interval), "sigma2_se": float(se[k + 1])},
    )


def _prepare(X, y, w, names):
    X, y, names = check_design(X, y, names)
    if w.n != len(y):
        raise DataError(f"weights are {w.n} x {w.n} but there are {len(y)} observations")
    return X, y, names


def slm_concentrated_loglik(X, y, w, profile=None):
    """Concentrated log-likelihood of the lag model as a function of ``rho``."""
    profile = profile or log_det_profile(w)
    n = len(y)
    _, e0 = least_squares(X, y)
    _, e1 = least_squares(X, w.lag(y))

    def conc(rho):
        e = e0 - rho * e1
        return -0.5 * n * (LN2PI + np.log(float(e @ e) / n)) - 0.5 * n + profile(rho)

    return conc


def fit_slm(X, y, w, names=None, rho=None, profile=None):
    """Spatial lag model ``y = rho W y + X beta + eps`` by maximum likelihood.

    Pass ``rho`` to hold the spatial parameter fixed instead of estimating
    it. Coefficient standard errors come from a central-difference Hessian
    of the full log-likelihood in ``(beta, rho, sigma2)``.
    """
    X, y, names = _prepare(X, y, w, names)
    profile = profile or log_det_profile(w)
    n = len(y)
    wy = w.lag(y)
    conc = slm_concentrated_loglik(X, y, w, profile)
    if rho is None:
        rho, ll = _maximize(conc, profile)
    else:
        rho = float(rho)
        ll = conc(rho)
    beta, resid = least_squares(X, y - rho * wy)

    def full_ll(theta):
        b, r, s2 = theta[:-2], theta[-2], theta[-1]
        if s2 <= 0 or not profile.contains(r):
            return -np.inf
        e = y - r * wy - X @ b
        return -0.5 * n * (LN2PI + np.log(s2)) + profile(r) - float(e @ e) / (2.0 * s2)

    ols = fit_ols(X, y, names)
    return _spatial_fit("SLM", X, y, names, w, profile, rho, beta, resid, ols, full_ll, ll)


def sem_concentrated_loglik(X, y, w, profile=None):
    """Concentrated log-likelihood of the error model as a function of ``lam``."""
    profile = profile or log_det_profile(w)
    n = len(y)
    wy = w.lag(y)
    wx = w.sparse @ X

    def conc(lam):
        _, e = least_squares(X - lam * wx, y - lam * wy)
        return -0.5 * n * (LN2PI + np.log(float(e @ e) / n)) - 0.5 * n + profile(lam)

    return conc


def fit_sem(X, y, w, names=None, lam=None, profile=None):
    """Spatial error model ``y = X beta + u``, ``u = lam W u + eps``.

    Residuals are the spatially filtered ``(I - lam W)(y - X beta)``, which
    are the model's innovations ``eps``.
    """
    X, y, names = _prepare(X, y, w, names)
    profile = profile or log_det_profile(w)
    n = len(y)
    wy = w.lag(y)
    wx = w.sparse @ X
    conc = sem_concentrated_loglik(X, y, w, profile)
    if lam is None:
        lam, ll = _maximize(conc, profile)
    else:
        lam = float(lam)
        ll = conc(lam)
    beta, resid = least_squares(X - lam * wx, y - lam * wy)

    def full_ll(theta):
        b, r, s2 = theta[:-2], theta[-2], theta[-1]
        if s2 <= 0 or not profile.contains(r):
            return -np.inf
        e = (y - r * wy) - (X - r * wx) @ b
        return -0.5 * n * (LN2PI + np.log(s2)) + profile(r) - float(e @ e) / (2.0 * s2)

    ols = fit_ols(X, y, names)
    return _spatial_fit("SEM", X, y, names, w, profile, lam, beta, resid, ols, full_ll, ll)

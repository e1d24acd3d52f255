"""Lattices and spatial fields with known generating parameters.

These are the reference data for testing: every statistical routine in the
package is checked against fields generated here, where the truth is known.
All randomness comes from the counter-based streams in ``_random``.
"""

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
from scipy.linalg import lu_factor, lu_solve

from . import _random
from .autocorrelation import AttributeVector
from .errors import ParameterError
from .regression.spatial import log_det_profile
from .units import SpatialUnit, UnitCollection
from .weights import build_adjacency, row_standardize

MAX_DENSE_N = 10_000
GENERATORS = ("sar_lag", "sar_error", "gwr_surface", "checkerboard", "gradient", "planted_block", "iid_noise")


def make_lattice(rows, cols, contiguity="rook"):
    """Regular grid of unit squares with row-major ordering.

    Unit ``(r, c)`` has centroid ``(c, r)`` and id ``"r_c"``. Returns the
    units and their raw 0-1 contiguity weights.
    """
    rows, cols = int(rows), int(cols)
    if rows < 2 or cols < 2:
        raise ParameterError(f"lattice needs at least 2 rows and 2 columns, got {rows}x{cols}")
    units = []
    for r in range(rows):
        for c in range(cols):
            x0, x1, y0, y1 = c - 0.5, c + 0.5, r - 0.5, r + 0.5
            ring = ((x0, y0), (x1, y0), (x1, y1), (x0, y1), (x0, y0))
            units.append(SpatialUnit(f"{r}_{c}", (c, r), polygon=((ring,),)))
    coll = UnitCollection(units, coordinate_system="planar")
    return coll, build_adjacency(coll, contiguity=contiguity)


def make_design(n, n_predictors, seed):
    """Intercept plus ``n_predictors`` iid standard-normal columns."""
    cols = [np.ones(n)]
    for k in range(n_predictors):
        cols.append(_random.normals(seed, _random.DESIGN, n, start=k * n))
    return np.column_stack(cols)


def _noise(n, sigma, seed):
    if sigma < 0:
        raise ParameterError(f"sigma must be nonnegative, got {sigma}")
    return sigma * _random.normals(seed, _random.NOISE, n)


def _spatial_solve(w, coef, rhs, name):
    if not w.standardized:
        raise ParameterError("SAR simulation expects row-standardized weights")
    if w.n > MAX_DENSE_N:
        raise ParameterError(f"dense solve limited to n <= {MAX_DENSE_N}")
    lo, hi = log_det_profile(w).interval
    if not lo < coef < hi:
        raise ParameterError(f"{name} = {coef} outside valid interval ({lo:.6g}, {hi:.6g})")
    if coef == 0:
        return np.array(rhs, dtype=float)
    a = np.eye(w.n) - coef * w.dense()
    return lu_solve(lu_factor(a), rhs)


def simulate_sar_lag(w, X, beta, rho, sigma, seed):
    """``y = (I - rho W)^-1 (X beta + eps)`` with ``eps ~ N(0, sigma^2)``."""
    X = np.asarray(X, dtype=float)
    rhs = X @ np.asarray(beta, dtype=float) + _noise(len(X), sigma, seed)
    return AttributeVector(_spatial_solve(w, float(rho), rhs, "rho"), "y")


def simulate_sar_error(w, X, beta, lam, sigma, seed):
    """``y = X beta + (I - lam W)^-1 eps`` with ``eps ~ N(0, sigma^2)``."""
    X = np.asarray(X, dtype=float)
    u = _spatial_solve(w, float(lam), _noise(len(X), sigma, seed), "lambda")
    return AttributeVector(X @ np.asarray(beta, dtype=float) + u, "y")


def simulate_gwr_surface(coords, coefficient_functions, sigma, seed):
    """Data with spatially varying coefficients.

    ``coefficient_functions[0]`` gives the local intercept and entry ``k`` the
    coefficient of predictor ``k``; each is called as ``f(u, v)`` on arrays
    of coordinates. Predictors are iid standard normal. Returns ``(X, y)``
    with an intercept column in ``X``.
    """
    coords = np.asarray(coords, dtype=float)
    n = len(coords)
    u, v = coords[:, 0], coords[:, 1]
    X = make_design(n, len(coefficient_functions) - 1, seed)
    betas = np.column_stack([np.broadcast_to(np.asarray(f(u, v), dtype=float), (n,)) for f in coefficient_functions])
    if not np.all(np.isfinite(betas)):
        raise ParameterError("coefficient functions must be finite at every location")
    y = np.einsum("ij,ij->i", X, betas) + _noise(n, sigma, seed)
    return X, y


def make_pattern(rows, cols, kind, extent=None, level=1.0):
    """Deterministic test patterns on a row-major ``rows x cols`` lattice.

    ``checkerboard`` alternates +1/-1 starting with +1 at (0, 0);
    ``gradient`` is the row index; ``planted_block`` sets the sub-rectangle
    ``extent = (row0, col0, height, width)`` to ``level`` on a zero
    background.
    """
    rows, cols = int(rows), int(cols)
    if rows < 2 or cols < 2:
        raise ParameterError("pattern needs at least a 2x2 lattice")
    r, c = np.divmod(np.arange(rows * cols), cols)
    if kind == "checkerboard":
        values = np.where((r + c) % 2 == 0, 1.0, -1.0)
    elif kind == "gradient":
        values = r.astype(float)
    elif kind == "planted_block":
        if extent is None:
            raise ParameterError("planted_block needs extent=(row0, col0, height, width)")
        r0, c0, h, wd = (int(v) for v in extent)
        if r0 < 0 or c0 < 0 or h < 1 or wd < 1 or r0 + h > rows or c0 + wd > cols:
            raise ParameterError(f"block extent {extent} exceeds the {rows}x{cols} lattice")
        inside = (r >= r0) & (r < r0 + h) & (c >= c0) & (c < c0 + wd)
        values = np.where(inside, float(level), 0.0)
    else:
        raise ParameterError(f"unknown pattern {kind!r}")
    return AttributeVector(values, kind)


def _surface(spec):
    kind = spec.get("kind", "constant")
    if kind == "constant":
        value = float(spec["value"])
        return lambda u, v: np.full_like(u, value)
    if kind in ("ramp_u", "ramp_v"):
        scale = float(spec.get("scale", 1.0))
        offset = float(spec.get("offset", 0.0))

        def ramp(u, v):
            t = u if kind == "ramp_u" else v
            top = np.abs(t).max()
            return offset + scale * (t / top if top > 0 else t)

        return ramp
    raise ParameterError(f"unknown coefficient surface {kind!r}")


@dataclass
class SyntheticScenario:
    """A lattice, a generator and its parameters; serializable to JSON.

    ``param`` is the generator's spatial parameter (rho for ``sar_lag``,
    lambda for ``sar_error``). ``surfaces`` describe GWR coefficient
    functions as ``{"kind": "constant", "value": c}`` or
    ``{"kind": "ramp_u" | "ramp_v", "scale": s, "offset": o}``.
    """

    rows: int
    cols: int
    generator: str
    contiguity: str = "rook"
    param: float = 0.0
    beta: tuple = (1.0, 2.0)
    sigma: float = 1.0
    seed: int = 0
    extent: Optional[tuple] = None
    level: float = 1.0
    surfaces: list = field(default_factory=list)

    def __post_init__(self):
        if self.generator not in GENERATORS:
            raise ParameterError(f"generator must be one of {GENERATORS}, got {self.generator!r}")
        if self.rows * self.cols < 4:
            raise ParameterError("scenario lattice needs at least 4 units")
        self.beta = tuple(float(b) for b in self.beta)
        if self.extent is not None:
            self.extent = tuple(int(v) for v in self.extent)

    def to_dict(self):
        d = asdict(self)
        d["beta"] = list(self.beta)
        d["extent"] = list(self.extent) if self.extent is not None else None
        return d

    @classmethod
    def from_dict(cls, doc):
        return cls(**doc)

    def generate(self):
        """Return ``(units, W, truth)``.

        ``units`` carries the response ``y`` and predictors ``x1..xk`` as
        attributes, ``W`` is the row-standardized lattice contiguity and
        ``truth`` records the generating parameters.
        """
        units, w_raw = make_lattice(self.rows, self.cols, self.contiguity)
        w = row_standardize(w_raw)
        n = len(units)
        truth = {"scenario": self.to_dict()}
        columns = {}
        g = self.generator
        if g in ("sar_lag", "sar_error", "iid_noise"):
            X = make_design(n, len(self.beta) - 1, self.seed)
            if g == "sar_lag":
                y = simulate_sar_lag(w, X, self.beta, self.param, self.sigma, self.seed).values
                truth["rho"] = float(self.param)
            elif g == "sar_error":
                y = simulate_sar_error(w, X, self.beta, self.param, self.sigma, self.seed).values
                truth["lambda"] = float(self.param)
            else:
                y = X @ np.asarray(self.beta) + _noise(n, self.sigma, self.seed)
            truth["beta"] = list(self.beta)
            for k in range(1, X.shape[1]):
                columns[f"x{k}"] = X[:, k]
        elif g == "gwr_surface":
            specs = self.surfaces or [{"kind": "constant", "value": self.beta[0]},
                                      {"kind": "ramp_u", "scale": 1.0}]
            coords = units.coords()
            funcs = [_surface(s) for s in specs]
            X, y = simulate_gwr_surface(coords, funcs, self.sigma, self.seed)
            truth["surfaces"] = specs
            truth["local_coefficients"] = {
                ("intercept" if k == 0 else f"x{k}"): [float(v) for v in np.broadcast_to(f(coords[:, 0], coords[:, 1]), (n,))]
                for k, f in enumerate(funcs)
            }
            for k in range(1, X.shape[1]):
                columns[f"x{k}"] = X[:, k]
        else:
            base = make_pattern(self.rows, self.cols, g, extent=self.extent, level=self.level).values
            y = base + _noise(n, self.sigma, self.seed)
        columns["y"] = y
        return units.with_attributes(**columns), w, truth

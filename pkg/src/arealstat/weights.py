"""Spatial weight matrices: distances, the four builders, standardization.

Builders return raw (unstandardized) weights. Row standardization is an
explicit, separate step so either convention can be reproduced.
"""

import json
import math
import warnings

import numpy as np
from scipy import sparse
from scipy.spatial import cKDTree

from .errors import DataError, ParameterError

EARTH_RADIUS_KM = 6371.0
SNAP_TOLERANCE = 1e-9
STANDARDIZED_ROW_TOL = 1e-12

BUILDER_KINDS = ("adjacency", "knn", "distance_band", "inverse_distance", "custom")


class WeightMatrix:
    """Sparse nonnegative ``n x n`` spatial weights with provenance.

    Parameters
    ----------
    matrix : array_like or scipy sparse matrix
        Weights; converted to CSR with sorted indices. Explicit zeros are
        dropped.
    standardized : bool
        Whether rows have been scaled to sum to one.
    builder : dict
        ``{"kind": ..., "params": {...}}`` describing how the weights were
        made.

    Raises
    ------
    DataError
        On a nonzero diagonal, negative weights, an all-zero matrix or
        standardized rows that do not sum to one.
    """

    def __init__(self, matrix, standardized=False, builder=None):
        m = sparse.csr_array(matrix, dtype=float)
        if m.shape[0] != m.shape[1]:
            raise DataError(f"weight matrix must be square, got {m.shape}")
        m.eliminate_zeros()
        m.sort_indices()
        if np.any(m.diagonal() != 0):
            raise DataError("weight matrix has a nonzero diagonal")
        if m.nnz and m.data.min() < 0:
            raise DataError("weight matrix has negative entries")
        if not np.all(np.isfinite(m.data)):
            raise DataError("weight matrix has non-finite entries")
        self._m = m
        self.standardized = bool(standardized)
        self.builder = builder or {"kind": "custom", "params": {}}
        self.n = m.shape[0]
        if self.s0 <= 0:
            raise DataError("weight matrix has no positive weights (S0 = 0)")
        if self.standardized:
            rs = self.row_sums()
            nz = rs != 0
            if np.any(np.abs(rs[nz] - 1.0) > STANDARDIZED_ROW_TOL):
                raise DataError("standardized weight rows do not sum to 1")
        islands = self.islands
        self.warnings = []
        if len(islands):
            self.warnings.append(f"{len(islands)} island unit(s) without neighbours: {islands[:10].tolist()}")

    # -- views --------------------------------------------------------------
    @property
    def sparse(self):
        return self._m

    def dense(self):
        return self._m.toarray()

    @property
    def entries(self):
        coo = self._m.tocoo()
        order = np.lexsort((coo.col, coo.row))
        return [
            (int(coo.row[k]), int(coo.col[k]), float(coo.data[k])) for k in order
        ]

    @property
    def nnz(self):
        return self._m.nnz

    def row_sums(self):
        return np.asarray(self._m.sum(axis=1)).ravel()

    def col_sums(self):
        return np.asarray(self._m.sum(axis=0)).ravel()

    def neighbors(self, i):
        start, stop = self._m.indptr[i], self._m.indptr[i + 1]
        return self._m.indices[start:stop].copy()

    def cardinalities(self):
        return np.diff(self._m.indptr)

    @property
    def islands(self):
        return np.flatnonzero(self.cardinalities() == 0)

    def lag(self, y):
        """Spatial lag ``W @ y``."""
        return self._m @ np.asarray(y, dtype=float)

    def is_symmetric(self, tol=0.0):
        diff = self._m - self._m.T
        if diff.nnz == 0:
            return True
        return bool(np.abs(diff.data).max() <= tol)

    # -- moment scalars -----------------------------------------------------
    @property
    def s0(self):
        return float(self._m.sum())

    @property
    def s1(self):
        sym = self._m + self._m.T
        return 0.5 * float(sym.multiply(sym).sum())

    @property
    def s2(self):
        return float(((self.row_sums() + self.col_sums()) ** 2).sum())

    # -- serialization ------------------------------------------------------
    def to_dict(self):
        return {
            "n": self.n,
            "standardized": self.standardized,
            "builder": self.builder,
            "entries": [[i, j, w] for i, j, w in self.entries],
        }

    def to_json(self, path=None):
        text = json.dumps(self.to_dict(), sort_keys=True)
        if path is not None:
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(text + "\n")
        return text

    @classmethod
    def from_dict(cls, doc):
        n = int(doc["n"])
        entries = doc.get("entries", [])
        if entries:
            rows, cols, vals = zip(*entries)
        else:
            rows, cols, vals = (), (), ()
        m = sparse.csr_array((np.asarray(vals, dtype=float), (np.asarray(rows, dtype=int), np.asarray(cols, dtype=int))), shape=(n, n))
        return cls(m, standardized=doc.get("standardized", False), builder=doc.get("builder"))

    @classmethod
    def from_json(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))

    def __repr__(self):
        kind = self.builder.get("kind")
        return f"WeightMatrix(n={self.n}, nnz={self.nnz}, kind={kind!r}, standardized={self.standardized})"


# -- distances --------------------------------------------------------------

def default_metric(units):
    return "haversine" if units.coordinate_system == "lonlat" else "euclidean"


def _resolve_metric(units, metric):
    expected = default_metric(units)
    if metric is None:
        return expected
    if metric not in ("euclidean", "haversine"):
        raise ParameterError(f"unknown metric {metric!r}")
    if metric != expected:
        raise ParameterError(
            f"metric {metric!r} does not match coordinate system {units.coordinate_system!r}"
        )
    return metric


def distance_matrix(xy, metric="euclidean"):
    """Distances between rows of an ``(n, 2)`` coordinate array.

    ``haversine`` expects ``(lon, lat)`` in degrees and returns kilometres.
    """
    xy = np.asarray(xy, dtype=float)
    if metric == "euclidean":
        diff = xy[:, None, :] - xy[None, :, :]
        d = np.sqrt((diff**2).sum(axis=-1))
    elif metric == "haversine":
        lon = np.radians(xy[:, 0])
        lat = np.radians(xy[:, 1])
        dlat = lat[:, None] - lat[None, :]
        dlon = lon[:, None] - lon[None, :]
        a = np.sin(dlat / 2) ** 2 + np.cos(lat)[:, None] * np.cos(lat)[None, :] * np.sin(dlon / 2) ** 2
        d = 2.0 * EARTH_RADIUS_KM * np.arcsin(np.sqrt(np.clip(a, 0.0, 1.0)))
    else:
        raise ParameterError(f"unknown metric {metric!r}")
    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)
    return d


def pairwise_distance(units, metric=None):
    """Symmetric ``n x n`` distance table between unit centroids.

    Planar collections use euclidean distance in the input units; lon/lat
    collections use the haversine great-circle distance in kilometres.
    """
    if len(units) < 2:
        raise DataError("need at least 2 units")
    return distance_matrix(units.coords(), _resolve_metric(units, metric))


def lower_quantile(values, q):
    """Order-statistic quantile: element ``ceil(q*m) - 1`` of the sorted values."""
    if not 0.0 < q < 1.0:
        raise ParameterError(f"quantile must lie in (0, 1), got {q}")
    v = np.sort(np.asarray(values, dtype=float).ravel())
    if v.size == 0:
        raise DataError("no values")
    k = math.ceil(round(q * v.size, 9)) - 1
    return float(v[min(max(k, 0), v.size - 1)])


def quantile_distance(units, q, metric=None):
    """``q``-quantile of the ``n(n-1)/2`` distinct pairwise distances."""
    if not 0.0 < q < 1.0:
        raise ParameterError(f"quantile must lie in (0, 1), got {q}")
    d = pairwise_distance(units, metric)
    iu = np.triu_indices(len(units), k=1)
    return lower_quantile(d[iu], q)


# -- builders ---------------------------------------------------------------

def read_edge_list(path):
    """Read ``id_i<TAB>id_j`` pairs; blank lines and ``#`` comments are skipped."""
    pairs = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise DataError(f"{path}:{lineno}: expected 'id_i<TAB>id_j'")
            pairs.append((parts[0].strip(), parts[1].strip()))
    return pairs


def _segments(unit):
    segs = []
    for part in unit.polygon:
        for ring in part:
            r = np.asarray(ring, dtype=float)
            segs.append(np.hstack([r[:-1], r[1:]]))
    return np.vstack(segs)


def _shares_edge(sa, sb, tol):
    """True if any segment in ``sa`` overlaps one in ``sb`` with positive length."""
    p = sa[:, None, 0:2]
    q = sa[:, None, 2:4]
    r = sb[None, :, 0:2]
    s = sb[None, :, 2:4]
    d = q - p
    length = np.sqrt((d**2).sum(axis=-1))
    length = np.where(length == 0, np.inf, length)
    u = d / length[..., None]

    def cross(a, b):
        return a[..., 0] * b[..., 1] - a[..., 1] * b[..., 0]

    off_r = np.abs(cross(u, r - p))
    off_s = np.abs(cross(u, s - p))
    collinear = (off_r <= tol) & (off_s <= tol)
    tr = ((r - p) * u).sum(axis=-1)
    ts = ((s - p) * u).sum(axis=-1)
    lo = np.maximum(np.minimum(tr, ts), 0.0)
    hi = np.minimum(np.maximum(tr, ts), np.where(np.isinf(length), 0.0, length))
    return bool(np.any(collinear & (hi - lo > tol)))


def _contiguity_pairs(units, rule, tol=SNAP_TOLERANCE):
    segs = [_segments(u) for u in units]
    lo = np.array([np.minimum(s[:, 0:2], s[:, 2:4]).min(axis=0) for s in segs]) - tol
    hi = np.array([np.maximum(s[:, 0:2], s[:, 2:4]).max(axis=0) for s in segs]) + tol
    overlap = (
        (lo[:, None, 0] <= hi[None, :, 0])
        & (lo[None, :, 0] <= hi[:, None, 0])
        & (lo[:, None, 1] <= hi[None, :, 1])
        & (lo[None, :, 1] <= hi[:, None, 1])
    )
    cand_i, cand_j = np.nonzero(np.triu(overlap, k=1))

    vertex_pairs = set()
    if rule == "queen":
        verts, owner = [], []
        for k, s in enumerate(segs):
            v = np.unique(s[:, 0:2], axis=0)
            verts.append(v)
            owner.append(np.full(len(v), k))
        verts = np.vstack(verts)
        owner = np.concatenate(owner)
        for a, b in cKDTree(verts).query_pairs(r=tol, output_type="ndarray"):
            i, j = owner[a], owner[b]
            if i != j:
                vertex_pairs.add((min(i, j), max(i, j)))

    pairs = []
    for i, j in zip(cand_i.tolist(), cand_j.tolist()):
        if (i, j) in vertex_pairs or _shares_edge(segs[i], segs[j], tol):
            pairs.append((i, j))
    return pairs


def _symmetric_binary(n, pairs):
    if pairs:
        i, j = np.array(pairs, dtype=int).T
        rows = np.concatenate([i, j])
        cols = np.concatenate([j, i])
    else:
        rows = cols = np.array([], dtype=int)
    m = sparse.csr_array((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    m.sum_duplicates()
    m.data[:] = 1.0
    return m


def build_adjacency(units, edges=None, contiguity=None):
    """0-1 adjacency weights from an edge list or polygon contiguity.

    Exactly one of ``edges`` (iterable of id pairs) or ``contiguity``
    (``"queen"`` or ``"rook"``) must be given. Queen contiguity links units
    sharing a vertex (within a 1e-9 snap tolerance) or an edge; rook links
    units sharing an edge segment of positive length.
    """
    if (edges is None) == (contiguity is None):
        raise ParameterError("give exactly one of edges or contiguity")
    n = len(units)
    if edges is not None:
        pairs = []
        for a, b in edges:
            i, j = units.position(a), units.position(b)
            if i == j:
                raise DataError(f"self-loop in edge list for unit {a!r}")
            pairs.append((i, j))
        builder = {"kind": "adjacency", "params": {"source": "edge_list"}}
    else:
        if contiguity not in ("queen", "rook"):
            raise ParameterError(f"contiguity must be 'queen' or 'rook', got {contiguity!r}")
        missing = [u.id for u in units if u.polygon is None]
        if missing:
            raise DataError(f"polygon contiguity needs polygons; missing on {missing[:5]}")
        pairs = _contiguity_pairs(units, contiguity)
        builder = {"kind": "adjacency", "params": {"source": "polygon_contiguity", "rule": contiguity}}
    w = WeightMatrix(_symmetric_binary(n, pairs), builder=builder)
    _warn_islands(w)
    return w


def build_knn(units, k, metric=None):
    """Binary k-nearest-neighbour weights (row ``i`` marks i's k nearest).

    Distance ties are broken by ascending unit index.
    """
    n = len(units)
    k = int(k)
    if not 1 <= k <= n - 1:
        raise ParameterError(f"k must satisfy 1 <= k <= n-1 = {n - 1}, got {k}")
    metric = _resolve_metric(units, metric)
    d = pairwise_distance(units, metric)
    idx = np.arange(n)
    rows, cols = [], []
    for i in range(n):
        di = d[i].copy()
        di[i] = np.inf
        order = np.lexsort((idx, di))[:k]
        rows.append(np.full(k, i))
        cols.append(np.sort(order))
    rows = np.concatenate(rows)
    cols = np.concatenate(cols)
    m = sparse.csr_array((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return WeightMatrix(m, builder={"kind": "knn", "params": {"k": k, "metric": metric}})


def build_distance_band(units, d0, metric=None):
    """Binary weights for pairs strictly closer than ``d0``."""
    d0 = float(d0)
    if not d0 > 0:
        raise ParameterError(f"distance threshold must be positive, got {d0}")
    metric = _resolve_metric(units, metric)
    d = pairwise_distance(units, metric)
    mask = d < d0
    np.fill_diagonal(mask, False)
    w = WeightMatrix(
        sparse.csr_array(mask.astype(float)),
        builder={"kind": "distance_band", "params": {"d0": d0, "metric": metric}},
    )
    _warn_islands(w)
    return w


def build_inverse_distance(units, alpha=1.0, metric=None):
    """Dense inverse-distance weights ``d_ij ** -alpha`` for all ``i != j``."""
    alpha = float(alpha)
    if not alpha > 0:
        raise ParameterError(f"alpha must be positive, got {alpha}")
    metric = _resolve_metric(units, metric)
    d = pairwise_distance(units, metric)
    off = ~np.eye(len(units), dtype=bool)
    zero = np.argwhere((d == 0) & off)
    if len(zero):
        i, j = zero[0]
        raise DataError(
            f"units {units[i].id!r} and {units[j].id!r} share a centroid; "
            "inverse distance is undefined"
        )
    w = np.zeros_like(d)
    w[off] = d[off] ** -alpha
    return WeightMatrix(
        sparse.csr_array(w),
        builder={"kind": "inverse_distance", "params": {"alpha": alpha, "metric": metric}},
    )


def row_standardize(w):
    """Scale each nonzero row of ``w`` to sum to one; zero rows stay zero."""
    if w.standardized:
        return WeightMatrix(w.sparse.copy(), standardized=True, builder=w.builder)
    rs = w.row_sums()
    scale = np.divide(1.0, rs, out=np.zeros_like(rs), where=rs > 0)
    m = sparse.csr_array(sparse.diags_array(scale) @ w.sparse)
    out = WeightMatrix(m, standardized=True, builder=w.builder)
    _warn_islands(out)
    return out


def _warn_islands(w):
    for msg in w.warnings:
        warnings.warn(msg, stacklevel=3)

"""Global and local Moran's I, their null distributions, and LISA classes."""

import enum
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import stats

from . import _random
from ._parallel import map_chunks
from .errors import DataError, ParameterError

SCHEMES = ("normality", "randomization", "permutation")
ALTERNATIVES = ("two_sided", "greater", "less")
MIN_PERMUTATIONS = 99


@dataclass(frozen=True)
class AttributeVector:
    """Observed values aligned to a unit collection's order."""

    values: np.ndarray
    name: str = "y"

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float).ravel()
        if not np.all(np.isfinite(v)):
            raise DataError(f"attribute {self.name!r} has non-finite values")
        object.__setattr__(self, "values", v)

    def __len__(self):
        return len(self.values)


class LisaClass(str, enum.Enum):
    HIGH_HIGH = "HH"
    LOW_LOW = "LL"
    HIGH_LOW = "HL"
    LOW_HIGH = "LH"
    NOT_SIGNIFICANT = "NS"


@dataclass
class MoranGlobalResult:
    I: float
    expectation: float
    variance: float
    z: float
    p_value: float
    scheme: str
    alternative: str = "two_sided"
    nperm: Optional[int] = None
    seed: Optional[int] = None
    standardized: Optional[bool] = None
    n: Optional[int] = None

    def to_dict(self):
        scheme = {"name": self.scheme}
        if self.scheme == "permutation":
            scheme.update(nperm=self.nperm, seed=self.seed)
        return {
            "estimate": self.I,
            "expectation": self.expectation,
            "variance": self.variance,
            "z": self.z,
            "p_value": self.p_value,
            "alternative": self.alternative,
            "scheme": scheme,
            "standardized_weights": self.standardized,
            "n": self.n,
        }


@dataclass
class MoranLocalResult:
    local_I: np.ndarray
    p_values: np.ndarray
    classes: list
    alpha_level: float = 0.05
    nperm: Optional[int] = None
    seed: Optional[int] = None
    standardized: Optional[bool] = None
    bonferroni: bool = False
    extra: dict = field(default_factory=dict)

    def significant_count(self):
        return sum(c is not LisaClass.NOT_SIGNIFICANT for c in self.classes)

    def to_dict(self):
        return {
            "local_I": [float(v) for v in self.local_I],
            "p_values": [float(v) for v in self.p_values],
            "classes": [c.value for c in self.classes],
            "alpha_level": self.alpha_level,
            "bonferroni": self.bonferroni,
            "scheme": {"name": "conditional_permutation", "nperm": self.nperm, "seed": self.seed},
            "standardized_weights": self.standardized,
        }


def _values(y, w=None):
    if isinstance(y, AttributeVector):
        v = y.values
    else:
        v = AttributeVector(y).values
    if w is not None and len(v) != w.n:
        raise DataError(f"attribute has {len(v)} values but weights are {w.n} x {w.n}")
    return v


def _centered(y, w):
    v = _values(y, w)
    z = v - v.mean()
    m2 = float(z @ z)
    if m2 <= 0 or np.ptp(v) == 0:
        raise DataError("attribute has zero variance; Moran's I is undefined")
    return z, m2


def _check_nperm(nperm):
    nperm = int(nperm)
    if nperm < MIN_PERMUTATIONS:
        raise ParameterError(f"nperm must be at least {MIN_PERMUTATIONS}, got {nperm}")
    return nperm


def _check_alternative(alternative):
    if alternative not in ALTERNATIVES:
        raise ParameterError(f"alternative must be one of {ALTERNATIVES}, got {alternative!r}")


def moran_global(y, w):
    """Global Moran's I.

    ``I = (n / S0) * sum_ij w_ij z_i z_j / sum_i z_i**2`` with ``z`` the
    centred values; the diagonal of ``w`` is zero by construction.
    """
    z, m2 = _centered(y, w)
    return float(len(z) / w.s0 * (z @ w.lag(z)) / m2)


def moran_null_moments(y, w, scheme="randomization"):
    """Expectation and variance of Moran's I under the null.

    ``normality`` uses the Gaussian-assumption variance; ``randomization``
    the moments over all relabellings of the observed values, which depend
    on their kurtosis.
    """
    v = _values(y, w)
    n = len(v)
    s0, s1, s2 = w.s0, w.s1, w.s2
    ei = -1.0 / (n - 1)
    if scheme == "normality":
        var = (n * n * s1 - n * s2 + 3 * s0 * s0) / (s0 * s0 * (n * n - 1)) - ei * ei
    elif scheme == "randomization":
        if n < 4:
            raise ParameterError("randomization variance needs n >= 4")
        z = v - v.mean()
        m2 = float(z @ z)
        if m2 <= 0:
            raise DataError("attribute has zero variance; Moran's I is undefined")
        b2 = n * float((z**4).sum()) / (m2 * m2)
        num = n * ((n * n - 3 * n + 3) * s1 - n * s2 + 3 * s0 * s0) - b2 * (
            (n * n - n) * s1 - 2 * n * s2 + 6 * s0 * s0
        )
        var = num / ((n - 1) * (n - 2) * (n - 3) * s0 * s0) - ei * ei
    else:
        raise ParameterError(f"scheme must be 'normality' or 'randomization', got {scheme!r}")
    return ei, float(var)


def _normal_p(z, alternative):
    if alternative == "greater":
        return float(stats.norm.sf(z))
    if alternative == "less":
        return float(stats.norm.cdf(z))
    return float(min(1.0, 2.0 * stats.norm.sf(abs(z))))


def moran_test(y, w, scheme="randomization", alternative="two_sided", nperm=999, seed=0, threads=1):
    """Moran's I with an analytic (or permutation) significance test."""
    _check_alternative(alternative)
    if scheme == "permutation":
        return moran_permutation(y, w, nperm=nperm, seed=seed, alternative=alternative, threads=threads)
    I = moran_global(y, w)
    ei, var = moran_null_moments(y, w, scheme)
    if var <= 0:
        raise DataError("null variance of Moran's I is not positive")
    z = 0.0 if I == ei else (I - ei) / np.sqrt(var)
    return MoranGlobalResult(
        I=I, expectation=ei, variance=var, z=float(z), p_value=_normal_p(z, alternative),
        scheme=scheme, alternative=alternative, standardized=w.standardized, n=w.n,
    )


def pseudo_p(observed, simulated, alternative="two_sided"):
    """Permutation pseudo p-value ``(1 + #extreme) / (nperm + 1)``.

    The two-sided value doubles the smaller one-sided value, capped at 1.
    """
    sim = np.asarray(simulated)
    m = sim.shape[-1]
    greater = (1.0 + np.sum(sim >= observed, axis=-1)) / (m + 1.0)
    less = (1.0 + np.sum(sim <= observed, axis=-1)) / (m + 1.0)
    if alternative == "greater":
        return greater
    if alternative == "less":
        return less
    return np.minimum(1.0, 2.0 * np.minimum(greater, less))


def permuted_moran(y, w, nperm, seed, threads=1):
    """Moran's I for each of ``nperm`` random relabellings of ``y``.

    Permutation ``i`` is the argsort of words ``[i*n, (i+1)*n)`` of the
    seed's permutation stream, so the output is independent of ``threads``.
    """
    z, m2 = _centered(y, w)
    n = len(z)
    scale = n / (w.s0 * m2)
    wt = w.sparse

    def chunk(a, b):
        keys = _random.permutation_keys(seed, _random.GLOBAL_PERMUTATION, n, a, b)
        zp = z[np.argsort(keys, axis=1, kind="stable")]
        lag = (wt @ zp.T).T
        return scale * np.einsum("ij,ij->i", zp, lag)

    return np.concatenate(map_chunks(chunk, nperm, threads, min_chunk=64))


def moran_permutation(y, w, nperm=999, seed=0, alternative="two_sided", threads=1):
    """Moran's I with a Monte-Carlo permutation test.

    ``expectation`` and ``variance`` in the result are the mean and variance
    of the permuted statistics.
    """
    nperm = _check_nperm(nperm)
    _check_alternative(alternative)
    I = moran_global(y, w)
    sims = permuted_moran(y, w, nperm, seed, threads)
    mean = float(sims.mean())
    var = float(sims.var(ddof=1))
    z = (I - mean) / np.sqrt(var) if var > 0 else 0.0
    return MoranGlobalResult(
        I=I, expectation=mean, variance=var, z=float(z),
        p_value=float(pseudo_p(I, sims, alternative)), scheme="permutation",
        alternative=alternative, nperm=nperm, seed=int(seed), standardized=w.standardized, n=w.n,
    )


def moran_local(y, w):
    """Local Moran's I_i = n z_i (W z)_i / sum z**2; they sum to ``S0 * I``."""
    z, m2 = _centered(y, w)
    return len(z) * z * w.lag(z) / m2


def local_permutation(y, w, nperm=999, seed=0, threads=1):
    """Conditional-permutation p-values for the local Moran statistics.

    For unit ``i`` the value ``y_i`` is held fixed and the remaining ``n-1``
    values are randomly reassigned to the other locations; only the draws
    landing on ``i``'s neighbours matter. Each unit reads its own stream, so
    results depend only on ``(seed, i)``. Units without neighbours get p = 1.
    """
    nperm = _check_nperm(nperm)
    z, m2 = _centered(y, w)
    n = len(z)
    observed = n * z * w.lag(z) / m2
    m = w.sparse

    def one(i):
        start, stop = m.indptr[i], m.indptr[i + 1]
        k = stop - start
        if k == 0:
            return 1.0
        wi = m.data[start:stop]
        others = np.delete(z, i)
        idx = _random.partial_shuffles(seed, _random.LOCAL_PERMUTATION + i, n - 1, k, nperm)
        sims = n * z[i] * (others[idx] @ wi) / m2
        return float(pseudo_p(observed[i], sims, "two_sided"))

    def chunk(a, b):
        return [one(i) for i in range(a, b)]

    return np.array([v for part in map_chunks(chunk, n, threads) for v in part])


def lisa_classify(y, w, p_values, alpha_level=0.05, bonferroni=False):
    """Quadrant class for each significant unit.

    A unit is significant when ``p <= alpha_level`` (``alpha_level / n`` with
    ``bonferroni``). Its class comes from the signs of the centred value and
    the centred spatial lag; an exact zero in either gives NotSignificant.
    """
    if not 0.0 < alpha_level < 1.0:
        raise ParameterError(f"alpha_level must lie in (0, 1), got {alpha_level}")
    v = _values(y, w)
    p = np.asarray(p_values, dtype=float)
    if len(p) != len(v):
        raise DataError("p-values and attribute differ in length")
    z = v - v.mean()
    lag = w.lag(z)
    cut = alpha_level / len(v) if bonferroni else alpha_level
    out = []
    for zi, li, pi in zip(z, lag, p):
        if pi > cut or zi == 0 or li == 0:
            out.append(LisaClass.NOT_SIGNIFICANT)
        elif zi > 0:
            out.append(LisaClass.HIGH_HIGH if li > 0 else LisaClass.HIGH_LOW)
        else:
            out.append(LisaClass.LOW_HIGH if li > 0 else LisaClass.LOW_LOW)
    return out


def lisa(y, w, nperm=999, seed=0, alpha_level=0.05, bonferroni=False, threads=1):
    """Local Moran statistics, permutation p-values and quadrant classes."""
    local_i = moran_local(y, w)
    p = local_permutation(y, w, nperm=nperm, seed=seed, threads=threads)
    classes = lisa_classify(y, w, p, alpha_level=alpha_level, bonferroni=bonferroni)
    return MoranLocalResult(
        local_I=local_i, p_values=p, classes=classes, alpha_level=alpha_level,
        nperm=int(nperm), seed=int(seed), standardized=w.standardized, bonferroni=bonferroni,
    )


def lisa_group_summary(classes, units):
    """Counts of significant LISA classes per unit group.

    Returns ``{group: {"HH": c, "LL": c, "HL": c, "LH": c}}`` in order of
    first appearance; groups without significant units are omitted. Units
    without group labels are pooled under ``"all"``.
    """
    if len(classes) != len(units):
        raise DataError("classes and units differ in length")
    labels = units.groups() or ["all"] * len(units)
    table = {}
    for cls, group in zip(classes, labels):
        cls = LisaClass(cls)
        if cls is LisaClass.NOT_SIGNIFICANT:
            continue
        row = table.setdefault(group, {c.value: 0 for c in LisaClass if c is not LisaClass.NOT_SIGNIFICANT})
        row[cls.value] += 1
    return table

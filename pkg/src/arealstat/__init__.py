"""Spatial autocorrelation, LISA hotspot mapping and spatial regression for areal data."""

from .autocorrelation import (
    AttributeVector,
    LisaClass,
    MoranGlobalResult,
    MoranLocalResult,
    lisa,
    lisa_classify,
    lisa_group_summary,
    local_permutation,
    moran_global,
    moran_local,
    moran_null_moments,
    moran_permutation,
    moran_test,
)
from .errors import BoundaryError, DataError, ParameterError
from .units import SpatialUnit, UnitCollection
from .weights import (
    WeightMatrix,
    build_adjacency,
    build_distance_band,
    build_inverse_distance,
    build_knn,
    pairwise_distance,
    quantile_distance,
    row_standardize,
)

__version__ = "0.1.0"

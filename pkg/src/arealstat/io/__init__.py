from .csv_points import read_csv_points, write_units_csv
from .geojson import read_geojson, unit_feature, write_lisa_geojson, write_units_geojson
from .manifest import DatasetManifest
from .svg import LISA_PALETTE, quintile_buckets, write_choropleth_svg
from .tables import aggregate_share

__all__ = [
    "DatasetManifest",
    "read_csv_points", "write_units_csv", "read_geojson", "unit_feature", "write_lisa_geojson",
    "write_units_geojson", "LISA_PALETTE", "quintile_buckets", "write_choropleth_svg", "aggregate_share",
]

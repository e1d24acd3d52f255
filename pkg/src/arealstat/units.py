"""Spatial units and ordered collections of them."""

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import DataError, ParameterError

COORDINATE_SYSTEMS = ("planar", "lonlat")


def _ring_area_centroid(ring):
    """Signed shoelace area and centroid of a closed ring."""
    pts = np.asarray(ring, dtype=float)
    x, y = pts[:-1, 0], pts[:-1, 1]
    x1, y1 = pts[1:, 0], pts[1:, 1]
    cross = x * y1 - x1 * y
    area = 0.5 * cross.sum()
    if area == 0.0:
        return 0.0, pts[:-1].mean(axis=0)
    cx = ((x + x1) * cross).sum() / (6.0 * area)
    cy = ((y + y1) * cross).sum() / (6.0 * area)
    return area, np.array([cx, cy])


def polygon_centroid(parts):
    """Area-weighted centroid of a (multi)polygon.

    ``parts`` is a sequence of polygons, each a sequence of rings with the
    exterior first and holes after. Holes subtract area regardless of their
    winding order.
    """
    total = 0.0
    moment = np.zeros(2)
    for rings in parts:
        for k, ring in enumerate(rings):
            area, c = _ring_area_centroid(ring)
            a = abs(area) if k == 0 else -abs(area)
            total += a
            moment += a * c
    if total == 0.0:
        pts = np.concatenate([np.asarray(r[:-1], dtype=float) for p in parts for r in p])
        return tuple(pts.mean(axis=0))
    return tuple(moment / total)


def _check_ring(ring, unit_id):
    if len(ring) < 4:
        raise DataError(f"unit {unit_id!r}: polygon ring has fewer than 4 vertices")
    if tuple(ring[0]) != tuple(ring[-1]):
        raise DataError(f"unit {unit_id!r}: polygon ring is not closed")


@dataclass(frozen=True)
class SpatialUnit:
    """One areal unit (e.g. a ward).

    ``polygon`` holds a list of parts, each a list of closed rings with the
    exterior ring first. ``source`` optionally keeps the raw GeoJSON feature
    the unit was read from, so writers can echo it back unchanged.
    """

    id: str
    centroid: tuple
    polygon: Optional[tuple] = None
    attributes: dict = field(default_factory=dict)
    group: Optional[str] = None
    source: Optional[dict] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.polygon is not None:
            poly = tuple(
                tuple(tuple(tuple(float(c) for c in v[:2]) for v in ring) for ring in part)
                for part in self.polygon
            )
            for part in poly:
                for ring in part:
                    _check_ring(ring, self.id)
            object.__setattr__(self, "polygon", poly)
        object.__setattr__(self, "centroid", (float(self.centroid[0]), float(self.centroid[1])))


class UnitCollection:
    """Ordered, id-indexed set of spatial units.

    The order given at construction defines the row/column order of every
    weight matrix and result vector built from the collection.
    """

    def __init__(self, units, coordinate_system="planar"):
        units = list(units)
        if len(units) < 2:
            raise DataError("a unit collection needs at least 2 units")
        if coordinate_system not in COORDINATE_SYSTEMS:
            raise ParameterError(f"unknown coordinate system {coordinate_system!r}")
        index = {}
        for pos, unit in enumerate(units):
            if unit.id in index:
                raise DataError(f"duplicate unit id {unit.id!r}")
            index[unit.id] = pos
        self._units = tuple(units)
        self._index = index
        self.coordinate_system = coordinate_system
        self.metadata = {}

    def __len__(self):
        return len(self._units)

    def __iter__(self):
        return iter(self._units)

    def __getitem__(self, pos):
        return self._units[pos]

    @property
    def units(self):
        return self._units

    @property
    def n(self):
        return len(self._units)

    @property
    def ids(self):
        return [u.id for u in self._units]

    def position(self, unit_id):
        try:
            return self._index[unit_id]
        except KeyError:
            raise DataError(f"unknown unit id {unit_id!r}") from None

    def coords(self):
        """``(n, 2)`` array of centroids."""
        return np.array([u.centroid for u in self._units], dtype=float)

    def has_polygons(self):
        return all(u.polygon is not None for u in self._units)

    def attribute(self, name):
        """Values of a numeric attribute in collection order."""
        missing = [u.id for u in self._units if name not in u.attributes]
        if missing:
            raise DataError(f"attribute {name!r} missing on unit(s) {missing[:5]}")
        return np.array([u.attributes[name] for u in self._units], dtype=float)

    def attribute_names(self):
        names = []
        seen = set()
        for u in self._units:
            for k in u.attributes:
                if k not in seen:
                    seen.add(k)
                    names.append(k)
        return names

    def groups(self):
        """Group labels, or ``None`` if any unit lacks one."""
        labels = [u.group for u in self._units]
        if any(g is None for g in labels):
            return None
        return labels

    def with_attributes(self, **columns):
        """Return a copy with extra attribute columns added."""
        new_units = []
        for pos, u in enumerate(self._units):
            attrs = dict(u.attributes)
            for name, values in columns.items():
                attrs[name] = float(values[pos])
            new_units.append(
                SpatialUnit(u.id, u.centroid, u.polygon, attrs, u.group, u.source)
            )
        out = UnitCollection(new_units, self.coordinate_system)
        out.metadata = dict(self.metadata)
        return out

"""GeoJSON ingestion and LISA-annotated output (RFC 7946 subset)."""

import copy
import json
import numbers
import warnings

from ..errors import DataError
from ..units import SpatialUnit, UnitCollection, polygon_centroid


def _is_number(v):
    return isinstance(v, numbers.Real) and not isinstance(v, bool)


def _parse_geometry(geom, fid):
    if not geom or "type" not in geom:
        raise DataError(f"feature {fid!r} has no geometry")
    kind = geom["type"]
    coords = geom.get("coordinates")
    if kind == "Point":
        return (float(coords[0]), float(coords[1])), None
    if kind == "Polygon":
        parts = [coords]
    elif kind == "MultiPolygon":
        parts = coords
    else:
        raise DataError(f"feature {fid!r}: unsupported geometry type {kind!r}")
    parts = [[[tuple(v[:2]) for v in ring] for ring in part] for part in parts]
    return polygon_centroid(parts), parts


def read_geojson(path, group_field="group"):
    """Read a FeatureCollection into a :class:`UnitCollection`.

    Unit ids come from ``feature.id``, else ``properties.id``. Numeric
    properties become attributes; ``group_field`` supplies the group label;
    other non-numeric properties are skipped and listed in
    ``units.metadata["skipped_attributes"]``. Coordinates are treated as
    lon/lat unless the collection has a top-level ``"crs_planar": true``.
    """
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if doc.get("type") != "FeatureCollection":
        raise DataError(f"{path}: not a GeoJSON FeatureCollection")
    units, skipped = [], []
    for k, feat in enumerate(doc.get("features", [])):
        props = feat.get("properties") or {}
        fid = feat.get("id", props.get("id"))
        if fid is None:
            raise DataError(f"{path}: feature {k} has no id")
        fid = str(fid)
        centroid, parts = _parse_geometry(feat.get("geometry"), fid)
        attrs, group = {}, None
        for key, value in props.items():
            if key == "id":
                continue
            if key == group_field and value is not None:
                group = str(value)
            elif _is_number(value):
                attrs[key] = float(value)
            else:
                skipped.append((fid, key))
        units.append(SpatialUnit(fid, centroid, parts, attrs, group, source=feat))
    system = "planar" if doc.get("crs_planar") is True else "lonlat"
    coll = UnitCollection(units, coordinate_system=system)
    coll.metadata.update(source=str(path), format="geojson", skipped_attributes=skipped)
    if skipped:
        keys = sorted({key for _, key in skipped})
        warnings.warn(f"skipped non-numeric properties: {keys}", stacklevel=2)
    return coll


def unit_feature(unit):
    """GeoJSON feature for a unit: its source feature if any, else synthesized."""
    if unit.source is not None:
        feat = copy.deepcopy(unit.source)
        feat.setdefault("properties", {})
        if feat["properties"] is None:
            feat["properties"] = {}
        for key, value in unit.attributes.items():
            if feat["properties"].get(key) != value:
                feat["properties"][key] = value
        return feat
    if unit.polygon is None:
        geom = {"type": "Point", "coordinates": list(unit.centroid)}
    elif len(unit.polygon) == 1:
        geom = {"type": "Polygon", "coordinates": [[list(v) for v in ring] for ring in unit.polygon[0]]}
    else:
        geom = {
            "type": "MultiPolygon",
            "coordinates": [[[list(v) for v in ring] for ring in part] for part in unit.polygon],
        }
    props = dict(unit.attributes)
    if unit.group is not None:
        props["group"] = unit.group
    return {"type": "Feature", "id": unit.id, "geometry": geom, "properties": props}


def write_units_geojson(units, path, properties=None, extra=None):
    """Write units as a FeatureCollection.

    ``properties`` maps a property name to a per-unit sequence added to each
    feature; ``extra`` adds top-level members (e.g. provenance).
    """
    feats = []
    for pos, unit in enumerate(units):
        feat = unit_feature(unit)
        for name, values in (properties or {}).items():
            v = values[pos]
            feat["properties"][name] = float(v) if _is_number(v) else v
        feats.append(feat)
    doc = {"type": "FeatureCollection", "features": feats}
    if units.coordinate_system == "planar":
        doc["crs_planar"] = True
    doc.update(extra or {})
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def write_lisa_geojson(units, result, path, extra=None):
    """Echo the input features with ``lisa_class``, ``lisa_i`` and ``lisa_p`` added."""
    n = len(units)
    if not (len(result.local_I) == len(result.p_values) == len(result.classes) == n):
        raise DataError("LISA result is not aligned with the units")
    write_units_geojson(
        units,
        path,
        properties={
            "lisa_class": [getattr(c, "value", c) for c in result.classes],
            "lisa_i": list(result.local_I),
            "lisa_p": list(result.p_values),
        },
        extra=extra,
    )

import csv

from ..errors import DataError
from ..units import SpatialUnit, UnitCollection

REQUIRED = ("id", "x", "y")


def read_csv_points(path, coordinate_system="planar", group_field="group"):
    """Read ``id,x,y,<numeric attributes...>`` rows into point units.

    A column named ``group_field`` is read as a text group label; every
    other extra column must be numeric.
    """
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise DataError(f"{path}: empty file") from None
        missing = [c for c in REQUIRED if c not in header]
        if missing:
            raise DataError(f"{path}: missing column(s) {missing}")
        col = {name: k for k, name in enumerate(header)}
        attr_cols = [h for h in header if h not in REQUIRED and h != group_field]
        units = []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}")

            def num(name):
                cell = row[col[name]].strip()
                try:
                    return float(cell)
                except ValueError:
                    raise DataError(f"{path}:{lineno}: column {name!r} is not numeric: {cell!r}") from None

            attrs = {name: num(name) for name in attr_cols}
            group = row[col[group_field]].strip() if group_field in col else None
            units.append(SpatialUnit(row[col["id"]].strip(), (num("x"), num("y")), None, attrs, group))
    if not units:
        raise DataError(f"{path}: no data rows")
    coll = UnitCollection(units, coordinate_system=coordinate_system)
    coll.metadata.update(source=str(path), format="csv-points", skipped_attributes=[])
    return coll


def write_units_csv(units, path, attributes=None):
    """Write ``id,x,y`` plus the named attributes (all by default)."""
    attributes = list(attributes) if attributes is not None else units.attribute_names()
    has_group = units.groups() is not None
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "x", "y"] + attributes + (["group"] if has_group else []))
        for u in units:
            row = [u.id, repr(u.centroid[0]), repr(u.centroid[1])]
            row += [repr(float(u.attributes[a])) for a in attributes]
            if has_group:
                row.append(u.group)
            writer.writerow(row)

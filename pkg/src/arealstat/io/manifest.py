from dataclasses import dataclass

from ..errors import DataError

FORMATS = ("geojson", "csv+adjacency", "csv-points")


@dataclass(frozen=True)
class DatasetManifest:
    """Summary of a loaded dataset, recorded alongside outputs."""

    sources: tuple
    format: str
    attributes: tuple
    n: int
    coordinate_system: str

    def __post_init__(self):
        if self.format not in FORMATS:
            raise DataError(f"unknown dataset format {self.format!r}")
        if len(set(self.attributes)) != len(self.attributes):
            raise DataError("attribute names must be unique")

    @classmethod
    def from_units(cls, units, sources, format=None):
        return cls(
            sources=tuple(str(s) for s in sources),
            format=format or units.metadata.get("format", "csv-points"),
            attributes=tuple(units.attribute_names()),
            n=units.n,
            coordinate_system=units.coordinate_system,
        )

    def to_dict(self):
        return {
            "sources": list(self.sources),
            "format": self.format,
            "attributes": list(self.attributes),
            "n": self.n,
            "coordinate_system": self.coordinate_system,
        }

import numpy as np
import pytest

from arealstat import DataError, ParameterError, SpatialUnit, UnitCollection
from arealstat.units import polygon_centroid

SQUARE = (((0, 0), (1, 0), (1, 1), (0, 1), (0, 0)),)


class TestPolygonCentroid:
    def test_unit_square(self):
        assert polygon_centroid([SQUARE]) == pytest.approx((0.5, 0.5))

    def test_winding_order_does_not_matter(self):
        cw = (tuple(reversed(SQUARE[0])),)
        assert polygon_centroid([cw]) == pytest.approx((0.5, 0.5))

    def test_hole_shifts_centroid(self):
        outer = ((0, 0), (4, 0), (4, 4), (0, 4), (0, 0))
        hole = ((2, 0), (4, 0), (4, 4), (2, 4), (2, 0))
        # Removing the right half leaves the 2x4 left half.
        assert polygon_centroid([(outer, hole)]) == pytest.approx((1.0, 2.0))

    def test_multipolygon_area_weighted(self):
        big = ((0, 0), (2, 0), (2, 2), (0, 2), (0, 0))
        small = ((10, 0), (11, 0), (11, 1), (10, 1), (10, 0))
        cx, cy = polygon_centroid([(big,), (small,)])
        assert cx == pytest.approx((4 * 1.0 + 1 * 10.5) / 5)
        assert cy == pytest.approx((4 * 1.0 + 1 * 0.5) / 5)


class TestSpatialUnit:
    def test_ring_must_be_closed(self):
        with pytest.raises(DataError, match="not closed"):
            SpatialUnit("a", (0, 0), polygon=((((0, 0), (1, 0), (1, 1), (0, 1)),),))

    def test_ring_needs_four_vertices(self):
        with pytest.raises(DataError, match="fewer than 4"):
            SpatialUnit("a", (0, 0), polygon=((((0, 0), (1, 0), (0, 0)),),))

    def test_coordinates_become_floats(self):
        u = SpatialUnit("a", (1, 2), polygon=(SQUARE,))
        assert u.centroid == (1.0, 2.0)
        assert isinstance(u.polygon[0][0][0][0], float)


class TestUnitCollection:
    def test_duplicate_id_is_named(self):
        with pytest.raises(DataError, match="'a'"):
            UnitCollection([SpatialUnit("a", (0, 0)), SpatialUnit("a", (1, 0))])

    def test_needs_two_units(self):
        with pytest.raises(DataError):
            UnitCollection([SpatialUnit("a", (0, 0))])

    def test_unknown_coordinate_system(self):
        with pytest.raises(ParameterError):
            UnitCollection([SpatialUnit("a", (0, 0)), SpatialUnit("b", (1, 0))], "polar")

    def test_order_and_index(self):
        units = UnitCollection([SpatialUnit(i, (k, 0)) for k, i in enumerate("cab")])
        assert units.ids == ["c", "a", "b"]
        assert units.position("b") == 2
        np.testing.assert_array_equal(units.coords()[:, 0], [0, 1, 2])
        with pytest.raises(DataError, match="unknown unit id"):
            units.position("z")

    def test_attributes_and_groups(self):
        units = UnitCollection([
            SpatialUnit("a", (0, 0), attributes={"v": 1.0}, group="G"),
            SpatialUnit("b", (1, 0), attributes={"v": 2.0}, group="H"),
        ])
        np.testing.assert_array_equal(units.attribute("v"), [1.0, 2.0])
        assert units.groups() == ["G", "H"]
        with pytest.raises(DataError, match="missing"):
            units.attribute("w")
        more = units.with_attributes(w=[3, 4])
        np.testing.assert_array_equal(more.attribute("w"), [3.0, 4.0])
        assert "w" not in units.attribute_names()

    def test_groups_none_when_any_missing(self):
        units = UnitCollection([SpatialUnit("a", (0, 0), group="G"), SpatialUnit("b", (1, 0))])
        assert units.groups() is None

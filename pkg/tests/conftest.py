import numpy as np
import pytest

from arealstat import SpatialUnit, UnitCollection


def point_units(xy, ids=None, coordinate_system="planar", groups=None):
    xy = np.asarray(xy, dtype=float)
    if xy.ndim == 1:
        xy = np.column_stack([xy, np.zeros_like(xy)])
    ids = ids or [f"u{k}" for k in range(len(xy))]
    groups = groups or [None] * len(xy)
    return UnitCollection(
        [SpatialUnit(i, tuple(p), group=g) for i, p, g in zip(ids, xy, groups)],
        coordinate_system=coordinate_system,
    )


def moran_brute(y, W):
    """Double-loop evaluation of global Moran's I from its definition."""
    y = np.asarray(y, dtype=float)
    n = len(y)
    ybar = sum(y) / n
    num = 0.0
    s0 = 0.0
    for i in range(n):
        for j in range(n):
            num += W[i][j] * (y[i] - ybar) * (y[j] - ybar)
            s0 += W[i][j]
    den = sum((v - ybar) ** 2 for v in y)
    return n / s0 * num / den


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS

    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)

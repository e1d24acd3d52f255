"""Static choropleth rendering to SVG 1.1."""

from xml.sax.saxutils import escape

import numpy as np

from ..autocorrelation import LisaClass
from ..errors import DataError
from ..weights import lower_quantile

LISA_PALETTE = {
    "HH": ("#d7191c", "High-High"),
    "LL": ("#2c7bb6", "Low-Low"),
    "HL": ("#fdae61", "High-Low"),
    "LH": ("#abd9e9", "Low-High"),
    "NS": ("#d3d3d3", "Not significant"),
}
QUINTILE_PALETTE = ("#fef0d9", "#fdcc8a", "#fc8d59", "#e34a33", "#b30000")

MAP_WIDTH = 600.0
LEGEND_WIDTH = 180.0
MARGIN = 0.05


def _fmt(v):
    return f"{v:.3f}"


def quintile_buckets(values):
    """Bucket index 0-4 per value, with breaks at the 20/40/60/80% order statistics."""
    v = np.asarray(values, dtype=float)
    breaks = [lower_quantile(v, q) for q in (0.2, 0.4, 0.6, 0.8)]
    return np.searchsorted(breaks, v, side="left"), breaks


def _is_classes(values):
    return all(isinstance(v, (LisaClass, str)) for v in values)


def write_choropleth_svg(units, values, path, palette=None, title=None):
    """Render one filled path per unit polygon plus a legend.

    ``values`` is either a sequence of LISA classes (coloured with the fixed
    class palette) or of numbers (coloured by quintile). ``palette`` may
    override the five quintile colours. The map fills the polygons'
    bounding box plus a 5% margin with the y axis flipped; output bytes
    depend only on the inputs.
    """
    values = list(values)
    if len(values) != len(units):
        raise DataError("values are not aligned with the units")
    missing = [u.id for u in units if u.polygon is None]
    if missing:
        raise DataError(f"choropleth needs polygons; missing on {missing[:5]}")

    if _is_classes(values):
        codes = [LisaClass(v).value for v in values]
        fills = [LISA_PALETTE[c][0] for c in codes]
        legend = [(LISA_PALETTE[c][0], f"{LISA_PALETTE[c][1]} ({codes.count(c)})") for c in LISA_PALETTE]
    else:
        colors = tuple(palette or QUINTILE_PALETTE)
        if len(colors) != 5:
            raise DataError("a quintile palette needs exactly 5 colours")
        buckets, breaks = quintile_buckets(values)
        fills = [colors[b] for b in buckets]
        v = np.asarray(values, dtype=float)
        edges = [float(v.min())] + breaks + [float(v.max())]
        legend = []
        for b in range(5):
            count = int((buckets == b).sum())
            label = f"{edges[b]:.4g} to {edges[b + 1]:.4g} ({count})"
            legend.append((colors[b], label))

    pts = np.array([v for u in units for part in u.polygon for ring in part for v in ring])
    (xmin, ymin), (xmax, ymax) = pts.min(axis=0), pts.max(axis=0)
    dx, dy = xmax - xmin, ymax - ymin
    span = max(dx, dy) or 1.0
    xmin, xmax = xmin - MARGIN * span, xmax + MARGIN * span
    ymin, ymax = ymin - MARGIN * span, ymax + MARGIN * span
    scale = MAP_WIDTH / (xmax - xmin)
    height = max((ymax - ymin) * scale, 30.0 * len(legend) + 40.0)

    def sx(x):
        return (x - xmin) * scale

    def sy(y):
        return (ymax - y) * scale

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{_fmt(MAP_WIDTH + LEGEND_WIDTH)}" '
        f'height="{_fmt(height)}" viewBox="0 0 {_fmt(MAP_WIDTH + LEGEND_WIDTH)} {_fmt(height)}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append('<g id="map" stroke="#555555" stroke-width="0.5" fill-rule="evenodd">')
    for unit, fill in zip(units, fills):
        d = []
        for part in unit.polygon:
            for ring in part:
                head, *rest = ring[:-1]
                d.append(f"M{_fmt(sx(head[0]))} {_fmt(sy(head[1]))}")
                d.extend(f"L{_fmt(sx(x))} {_fmt(sy(y))}" for x, y in rest)
                d.append("Z")
        out.append(f'<path id="{escape(unit.id)}" fill="{fill}" d="{" ".join(d)}"/>')
    out.append("</g>")
    out.append(f'<g id="legend" font-family="sans-serif" font-size="12" transform="translate({_fmt(MAP_WIDTH + 10)},20)">')
    for k, (color, label) in enumerate(legend):
        y = 22 * k
        out.append(f'<rect x="0" y="{y}" width="14" height="14" fill="{color}" stroke="#555555"/>')
        out.append(f'<text x="20" y="{y + 12}">{escape(label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")

from ..errors import DataError


def aggregate_share(units, attribute, group=None):
    """Share of an attribute's grand total held by each group.

    ``group`` is a per-unit label sequence; by default the units' own group
    labels are used. Groups appear in order of first occurrence and the
    shares sum to one.
    """
    values = units.attribute(attribute)
    labels = list(group) if group is not None else units.groups()
    if labels is None:
        raise DataError("units carry no group labels")
    if len(labels) != len(values):
        raise DataError("group labels are not aligned with the units")
    total = float(values.sum())
    if total == 0:
        raise DataError(f"attribute {attribute!r} sums to zero")
    sums = {}
    for label, v in zip(labels, values):
        sums[label] = sums.get(label, 0.0) + float(v)
    return {label: s / total for label, s in sums.items()}

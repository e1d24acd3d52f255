import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..errors import DataError, ParameterError


@dataclass(frozen=True)
class DesignSpec:
    """Which attributes form the response and predictors.

    When ``prevalence_per`` is set the response is turned into a rate,
    ``response / population * prevalence_per``; ``population`` then names the
    denominator attribute. ``log_response`` applies the natural log after
    that scaling.
    """

    response: str
    predictors: tuple
    log_response: bool = False
    prevalence_per: Optional[float] = None
    population: Optional[str] = None

    def __post_init__(self):
        preds = tuple(self.predictors)
        object.__setattr__(self, "predictors", preds)
        if not preds:
            raise ParameterError("at least one predictor is required")
        if len(set(preds)) != len(preds):
            raise ParameterError("predictors must be distinct")
        if self.response in preds:
            raise ParameterError("response cannot also be a predictor")
        if self.prevalence_per is not None:
            if not self.prevalence_per > 0:
                raise ParameterError("prevalence_per must be positive")
            if self.population is None:
                raise ParameterError("prevalence_per needs a population attribute")


def build_design(units, spec):
    """Design matrix (intercept first, then predictors in the order given) and response.

    Predictors with zero variance are dropped with a warning. Returns
    ``(X, y, names)`` where ``names`` labels the columns of ``X``.
    """
    y = units.attribute(spec.response)
    if spec.prevalence_per is not None:
        pop = units.attribute(spec.population)
        bad = np.flatnonzero(pop <= 0)
        if len(bad):
            raise DataError(f"nonpositive population on unit {units[bad[0]].id!r}")
        y = y / pop * spec.prevalence_per
    if spec.log_response:
        bad = np.flatnonzero(y <= 0)
        if len(bad):
            raise DataError(
                f"log response needs positive values; unit {units[bad[0]].id!r} has {y[bad[0]]:g}"
            )
        y = np.log(y)
    cols, names = [np.ones(len(units))], ["(Intercept)"]
    for name in spec.predictors:
        x = units.attribute(name)
        if not np.all(np.isfinite(x)):
            raise DataError(f"predictor {name!r} has non-finite values")
        if np.ptp(x) == 0:
            warnings.warn(f"dropping constant predictor {name!r}", stacklevel=2)
            continue
        cols.append(x)
        names.append(name)
    X = np.column_stack(cols)
    if len(y) <= X.shape[1]:
        raise DataError(f"n = {len(y)} observations cannot support {X.shape[1]} coefficients")
    return X, y, names

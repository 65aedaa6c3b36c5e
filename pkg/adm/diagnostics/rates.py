from typing import Iterable, Tuple

import numpy as np
from scipy.stats import linregress

from adm.errors import DomainError

MIN_POINTS = 4


def fit_rate(series: Iterable[Tuple[int, float]]) -> Tuple[float, float]:
    """Fit e_N ≈ c (N+1)^{-β} by least squares in log-log coordinates.

    Args:
        series: (N, e_N) pairs with e_N > 0

    Returns:
        (β, r²)
    """
    points = list(series)
    if len(points) < MIN_POINTS:
        raise DomainError(f"need at least {MIN_POINTS} points to fit a rate, got {len(points)}")
    N = np.array([n for n, _ in points], dtype=float)
    e = np.array([v for _, v in points], dtype=float)
    if np.any(~(e > 0)):
        raise DomainError(f"rate fit needs positive values, got {e[~(e > 0)].tolist()}")
    fit = linregress(np.log(N + 1.0), np.log(e))
    return float(-fit.slope), float(fit.rvalue ** 2)

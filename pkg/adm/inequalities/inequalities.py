"""Scalar inequalities behind the defect and Gaussian-approximation estimates.

Each kernel evaluates (lhs, rhs[, side condition]) on numpy arrays. Powers
of the form (1 − (1+y)^{-m})^a are taken as exp(a·ln(−expm1(−m·log1p(y))))
so that nothing cancels near y = 0 or overflows for large exponents.
"""

import math
from typing import Callable, Dict, NamedTuple, Optional, Tuple

import numpy as np

from adm.errors import DomainError
from adm.structs.report import CHECK_SLACK, IneqCase


def holds_array(lhs: np.ndarray, rhs: np.ndarray, slack: float = CHECK_SLACK) -> np.ndarray:
    return lhs - rhs <= slack * np.maximum(1.0, np.abs(rhs))


def _complement_power(y: np.ndarray, a: np.ndarray, m: np.ndarray) -> np.ndarray:
    """(1 − (1+y)^{-m})^a."""
    with np.errstate(divide="ignore"):
        return np.exp(a * np.log(-np.expm1(-m * np.log1p(y))))


def inq_tech2(x, a, m) -> Tuple[np.ndarray, np.ndarray, None]:
    """(1 − (1+x)^{-m})^a <= m x / a^{1/m}."""
    x, a, m = (np.asarray(v, dtype=float) for v in (x, a, m))
    return _complement_power(x, a, m), m * x / a ** (1.0 / m), None


def inq_tech3(x, a, m) -> Tuple[np.ndarray, np.ndarray, None]:
    """(1 − (1+x²)^{-m})^a <= √m x / (2a)^{1/(2m)}."""
    x, a, m = (np.asarray(v, dtype=float) for v in (x, a, m))
    return _complement_power(x * x, a, m), np.sqrt(m) * x / (2 * a) ** (1.0 / (2 * m)), None


def inq_tech1(x, a) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(x²/(1+x²))^a <= x/√(2a); the side condition is the weaker x/√a."""
    x, a = (np.asarray(v, dtype=float) for v in (x, a))
    with np.errstate(divide="ignore"):
        lhs = np.exp(-a * np.log1p(x ** -2.0))
    return lhs, x / np.sqrt(2 * a), holds_array(lhs, x / np.sqrt(a))


def transf_est(x, n) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """|(1+x/n)^{-n} − e^{-x}| <= 2/n; the side condition is (1+x/n)^{-n} >= e^{-x}."""
    x, n = (np.asarray(v, dtype=float) for v in (x, n))
    q = n * np.log1p(x / n)
    approx = np.exp(-q)
    # approx − e^{-x} = approx·(1 − e^{-(x−q)}), finite for every x
    lhs = np.abs(approx * -np.expm1(-(x - q)))
    return lhs, 2.0 / n, holds_array(np.exp(-x), approx)


class Inequality(NamedTuple):
    params: Tuple[str, ...]
    kernel: Callable


INEQUALITIES: Dict[str, Inequality] = {
    "inq_tech2": Inequality(("x", "a", "m"), inq_tech2),
    "inq_tech3": Inequality(("x", "a", "m"), inq_tech3),
    "inq_tech1": Inequality(("x", "a"), inq_tech1),
    "transf_est": Inequality(("x", "n"), transf_est),
}


def _check_domain(name: str, params: Dict[str, float]) -> None:
    x = params["x"]
    if not (math.isfinite(x) and x >= 0):
        raise DomainError(f"{name}: x must be finite and >= 0, got {x}")
    for key in ("a", "m"):
        if key in params and not (math.isfinite(params[key]) and params[key] >= 1):
            raise DomainError(f"{name}: {key} must be >= 1, got {params[key]}")
    if "n" in params:
        n = params["n"]
        if n < 1 or int(n) != n:
            raise DomainError(f"{name}: n must be an integer >= 1, got {n}")


def _case(name: str, **params: float) -> IneqCase:
    _check_domain(name, params)
    lhs, rhs, aux = INEQUALITIES[name].kernel(**params)
    aux_holds: Optional[bool] = None if aux is None else bool(aux)
    return IneqCase(name=name, params=params, lhs=float(lhs), rhs=float(rhs), aux_holds=aux_holds)


def check_inq_tech2(x: float, a: float, m: float) -> IneqCase:
    return _case("inq_tech2", x=x, a=a, m=m)


def check_inq_tech3(x: float, a: float, m: float) -> IneqCase:
    return _case("inq_tech3", x=x, a=a, m=m)


def check_inq_tech1(x: float, a: float) -> IneqCase:
    return _case("inq_tech1", x=x, a=a)


def check_transf_est(x: float, n: int) -> IneqCase:
    return _case("transf_est", x=x, n=n)

import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from adm.errors import AdmError, DomainError, EmptyGridError
from adm.inequalities import (
    INEQUALITIES,
    GridSpec,
    check_inq_tech1,
    check_inq_tech2,
    check_inq_tech3,
    check_transf_est,
    sweep,
    sweep_all,
)
from adm.inequalities.sweep import DEFAULT_EXPONENTS, DEFAULT_ORDERS

mpmath.mp.dps = 50


def exact_sides(name: str, params: dict):
    """(lhs, rhs) in 50-digit arithmetic."""
    x = mpmath.mpf(params["x"])
    if name == "inq_tech2":
        a, m = mpmath.mpf(params["a"]), mpmath.mpf(params["m"])
        return (1 - (1 + x) ** -m) ** a, m * x / a ** (1 / m)
    if name == "inq_tech3":
        a, m = mpmath.mpf(params["a"]), mpmath.mpf(params["m"])
        return (1 - (1 + x ** 2) ** -m) ** a, mpmath.sqrt(m) * x / (2 * a) ** (1 / (2 * m))
    if name == "inq_tech1":
        a = mpmath.mpf(params["a"])
        return (x ** 2 / (1 + x ** 2)) ** a, x / mpmath.sqrt(2 * a)
    n = mpmath.mpf(params["n"])
    return abs((1 + x / n) ** -n - mpmath.exp(-x)), 2 / n


def random_params(name: str, rng: np.random.Generator) -> dict:
    params = {"x": float(10 ** rng.uniform(-6, 6))}
    for key in INEQUALITIES[name].params[1:]:
        pool = DEFAULT_ORDERS if key == "n" else DEFAULT_EXPONENTS
        params[key] = float(pool[rng.integers(len(pool))])
    return params


def test_inq_tech2_examples():
    zero = check_inq_tech2(0.0, 3.0, 2.0)
    assert zero.lhs == 0.0 and zero.rhs == 0.0 and zero.passed
    case = check_inq_tech2(1.0, 4.0, 1.0)
    assert case.lhs == pytest.approx(0.0625)
    assert case.rhs == pytest.approx(0.25)
    assert case.margin == pytest.approx(0.1875)
    for x in (1e-3, 0.5, 7.0):
        c = check_inq_tech2(x, 1.0, 1.0)
        assert c.lhs == pytest.approx(x / (1 + x))
        assert c.rhs == pytest.approx(x)
    assert case.aux_holds is None


def test_inq_tech3_examples():
    assert check_inq_tech3(0.0, 2.0, 2.0).lhs == 0.0
    case = check_inq_tech3(1.0, 1.0, 1.0)
    assert case.lhs == pytest.approx(0.5)
    assert case.rhs == pytest.approx(1 / math.sqrt(2))
    assert case.passed


@pytest.mark.parametrize("x", [1e-4, 0.3, 1.0, 12.0])
@pytest.mark.parametrize("a,m", [(1.0, 1.0), (2.0, 3.0), (16.0, 1.5)])
def test_inq_tech3_is_square_root_of_inq_tech2(x, a, m):
    squared = check_inq_tech2(x * x, 2 * a, m).lhs
    assert squared == pytest.approx(check_inq_tech3(x, a, m).lhs ** 2, rel=1e-13)


def test_inq_tech1_examples():
    assert check_inq_tech1(0.0, 1.0).lhs == 0.0
    case = check_inq_tech1(1.0, 2.0)
    assert case.lhs == pytest.approx(0.25)
    assert case.rhs == pytest.approx(0.5)
    assert case.aux_holds is True
    big = check_inq_tech1(1e6, 1.0)
    assert big.lhs < 1.0 <= big.rhs
    assert big.passed


def test_transf_est_examples():
    assert check_transf_est(0.0, 3).lhs == 0.0
    case = check_transf_est(1.0, 1)
    assert case.lhs == pytest.approx(abs(0.5 - math.exp(-1.0)), abs=1e-12)
    assert case.lhs == pytest.approx(0.132121, abs=1e-6)
    assert case.rhs == 2.0
    assert case.aux_holds is True
    assert check_transf_est(24.0, 100).lhs <= 0.02


@pytest.mark.parametrize("call", [
    lambda: check_inq_tech2(-1.0, 1.0, 1.0),
    lambda: check_inq_tech2(1.0, 0.5, 1.0),
    lambda: check_inq_tech3(1.0, 1.0, 0.0),
    lambda: check_inq_tech1(float("nan"), 1.0),
    lambda: check_inq_tech1(1.0, float("inf")),
    lambda: check_transf_est(1.0, 0),
    lambda: check_transf_est(1.0, 2.5),
    lambda: check_transf_est(float("inf"), 2),
])
def test_domain_errors(call):
    with pytest.raises(DomainError):
        call()


@pytest.mark.parametrize("x", [0.1, 1.0, 5.0, 24.0, 100.0])
def test_transf_est_decreases_in_n(x):
    lhs = np.array([check_transf_est(x, n).lhs for n in range(1, 1025)])
    assert np.all(np.diff(lhs) <= 1e-15 * lhs.max())


@pytest.mark.parametrize("name", sorted(INEQUALITIES))
def test_full_sweep_passes(name):
    result = sweep(name, threads=4)
    assert len(result) >= 100_000
    assert result.passed, result.failures()[:3]
    assert result.worst().margin >= -1e-12


def test_dense_sweep_is_ten_times_larger():
    grid = GridSpec(x_points=40)
    assert len(sweep("transf_est", GridSpec(x_points=40, dense=True))) == 10 * 40 * len(DEFAULT_ORDERS) + len(DEFAULT_ORDERS)
    assert len(sweep("transf_est", grid)) == 41 * len(DEFAULT_ORDERS)


def test_sweep_cases_and_threads():
    grid = GridSpec(x_points=30, exponents=[1.0, 2.0], orders=[1, 4])
    serial = sweep("inq_tech1", grid)
    parallel = sweep("inq_tech1", grid, threads=3)
    assert serial.frame.equals(parallel.frame)
    cases = serial.cases()
    assert len(cases) == 31 * 2
    assert all(c.name == "inq_tech1" and set(c.params) == {"x", "a"} for c in cases)
    assert all(c.passed for c in cases)
    assert serial.failures() == []


def test_sweep_errors():
    with pytest.raises(EmptyGridError):
        sweep("inq_tech2", GridSpec(x_points=0, include_zero=False))
    with pytest.raises(EmptyGridError):
        sweep("inq_tech2", GridSpec(x_points=5, exponents=[]))
    with pytest.raises(AdmError):
        sweep("inq_tech9")


def test_sweep_all_covers_every_inequality():
    results = sweep_all(GridSpec(x_points=20))
    assert set(results) == set(INEQUALITIES)
    assert all(r.passed for r in results.values())


@pytest.mark.parametrize("name", sorted(INEQUALITIES))
def test_stable_forms_agree_with_high_precision(name):
    rng = np.random.default_rng(sorted(INEQUALITIES).index(name))
    kernel = INEQUALITIES[name].kernel
    for _ in range(20):
        params = random_params(name, rng)
        lhs, rhs, _ = kernel(**params)
        exact_lhs, exact_rhs = exact_sides(name, params)
        assert abs(float(lhs) - float(exact_lhs)) <= 1e-9 * float(exact_lhs) + 1e-14
        assert float(rhs) == pytest.approx(float(exact_rhs), rel=1e-12)
        assert exact_lhs <= exact_rhs


positive_x = st.floats(min_value=0.0, max_value=1e6, allow_nan=False)
exponent = st.floats(min_value=1.0, max_value=1024.0, allow_nan=False)


@settings(max_examples=300, deadline=None)
@given(x=positive_x, a=exponent, m=exponent)
def test_inq_tech2_and_tech3_hold(x, a, m):
    assert check_inq_tech2(x, a, m).passed
    assert check_inq_tech3(x, a, m).passed


@settings(max_examples=300, deadline=None)
@given(x=positive_x, a=exponent)
def test_inq_tech1_holds(x, a):
    assert check_inq_tech1(x, a).passed


@settings(max_examples=300, deadline=None)
@given(x=positive_x, n=st.integers(min_value=1, max_value=10 ** 6))
def test_transf_est_holds(x, n):
    case = check_transf_est(x, n)
    assert case.passed
    assert case.aux_holds


if __name__ == "__main__":
    pytest.main([__file__])

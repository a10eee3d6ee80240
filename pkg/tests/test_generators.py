import numpy as np
import pytest

from smoothfind.errors import ContractViolation
from smoothfind.generators import (
    FAMILIES,
    gen_general_lower,
    gen_m3_lower,
    gen_median_lower_d2,
    gen_median_lower_small_d,
    gen_pp_lower,
    gen_scan_lower,
    gen_sorted,
    gen_uniform_random,
    generate,
)
from smoothfind.perturbation import derive_stream


def test_general_lower():
    assert np.allclose(gen_general_lower(6), [1 / 6, 2 / 6, 3 / 6, 1, 1, 1])
    assert np.allclose(gen_general_lower(2), [1 / 2, 1])
    s = gen_general_lower(8)
    assert len(s) == 8 and np.all(np.diff(s[:4]) > 0) and np.all(s[4:] == 1)
    assert len(gen_general_lower(7)) == 7
    with pytest.raises(ContractViolation):
        gen_general_lower(1)


def test_median_lower_small_d():
    assert np.allclose(gen_median_lower_small_d(8, 0.5), [1 / 8, 2 / 8, 3 / 8, 4 / 8, 1, 1, 1, 1])
    s = gen_median_lower_small_d(100, 1.8)
    assert np.count_nonzero(s == 1) == 95 and len(s) == 100
    assert np.all(np.diff(s) >= 0)
    for d in (0.4, 2.0):
        with pytest.raises(ContractViolation):
            gen_median_lower_small_d(10, d)


@pytest.mark.parametrize("n, zeros", [(16, 2), (2, 1), (81, 3), (10_000, 10)])
def test_median_lower_d2(n, zeros):
    s = gen_median_lower_d2(n)
    assert len(s) == n
    assert np.count_nonzero(s == 0) == zeros and np.all(s[zeros:] == 1)


def test_scan_lower():
    assert np.allclose(gen_scan_lower(8), [1 / 8, 2 / 8, 3 / 8, 1 / 2, 1 / 2, 3 / 8, 2 / 8, 1 / 8])
    assert np.allclose(gen_scan_lower(4), [1 / 4, 1 / 2, 1 / 2, 1 / 4])
    s = gen_scan_lower(1000)
    assert np.array_equal(s, s[::-1])
    for n in (7, 2):
        with pytest.raises(ContractViolation):
            gen_scan_lower(n)


def test_m3_lower():
    assert np.allclose(gen_m3_lower(6), [0, 1 / 6, 1, 1, 1 / 6, 0])
    assert np.all(gen_m3_lower(9)[3:6] == 1) and np.all(gen_m3_lower(9)[[0, 1, 2, 6, 7, 8]] < 1)
    for n in (3, 10, 99, 1000):
        s = gen_m3_lower(n)
        assert len(s) == n and np.array_equal(s, s[::-1]) and s.min() >= 0
    with pytest.raises(ContractViolation):
        gen_m3_lower(2)


def test_pp_lower():
    assert gen_pp_lower(7, 0.3).tolist() == [-2, -1, -3, 1, 2, 3, 0]
    for n, p in ((3, 1.0), (101, 0.5), (1025, 0.01)):
        s = gen_pp_lower(n, p)
        m = (n - 1) // 2
        assert sorted(s) == list(range(-m, m + 1)) and s[-1] == 0
    for n, p in ((8, 0.5), (7, 0.0), (1, 0.5)):
        with pytest.raises(ContractViolation):
            gen_pp_lower(n, p)


def test_baselines():
    assert np.allclose(gen_sorted(3), [1 / 3, 2 / 3, 1])
    a = gen_uniform_random(100, derive_stream(1, 0))
    b = gen_uniform_random(100, derive_stream(1, 0))
    assert np.array_equal(a, b)
    assert abs(gen_uniform_random(100_000, derive_stream(2, 0)).mean() - 0.5) < 0.01


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_lengths_and_ranges(family):
    n = 301 if family == "pp-lower" else 300
    param = 0.5 if family == "pp-lower" else 1.0
    s = generate(family, n, param, derive_stream(0, 0))
    assert len(s) == n
    if family != "pp-lower":
        assert s.min() >= 0 and s.max() <= 1


def test_unknown_family():
    with pytest.raises(ContractViolation):
        generate("zigzag", 10)


def test_float_noise_does_not_bump_ceilings():
    # d = 2 * (14/25)**2 makes 25 * sqrt(d/2) evaluate to 14.000000000000002
    assert np.count_nonzero(gen_median_lower_small_d(25, 2 * (14 / 25) ** 2) == 1) == 14

"""Exit criteria A1-A12; each prints a PASS/FAIL line in the session summary."""

import pytest

from smoothfind import acceptance

RESULTS = []

CRITERIA = [
    acceptance.check_correctness,
    acceptance.check_small_average,
    acceptance.check_rule_ordering,
    acceptance.check_general_lower,
    acceptance.check_median_d2,
    acceptance.check_median_d4,
    acceptance.check_scan_maxima,
    acceptance.check_m3_lower,
    acceptance.check_partial_permutation,
    acceptance.check_median_location,
    acceptance.check_lemma_suites,
    acceptance.check_determinism,
]


@pytest.mark.slow
@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__.removeprefix("check_"))
def test_criterion(criterion):
    result = criterion(acceptance.DEFAULT_SEED)
    RESULTS.append(result)
    print(result.line())
    assert result.passed, result.detail


def test_determinism_same_seed_csv_bytes():
    # A12 applied to an acceptance configuration, independent of the suite run
    cfg = acceptance.ExperimentConfig(
        "scan-lower", acceptance.AdditiveUniform(1.0), "scan-maxima",
        acceptance.PivotRule.MEDIAN_OF_THREE, (1024, 2048), trials=20,
        master_seed=acceptance.DEFAULT_SEED,
    )
    assert acceptance.run_trials(cfg).to_csv() == acceptance.run_trials(cfg).to_csv()

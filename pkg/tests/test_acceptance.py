"""Acceptance suite: every headline number at its stated tolerance.

Each test prints one `[PASS]`/`[FAIL]` line (visible with `pytest -s` or in
the failure report) and asserts the criterion at the tolerance recorded in
``latentlink.reproduce``.  Criterion 1's scan is shared with criterion 3.
"""

import math

import numpy as np
import pytest

from latentlink import reproduce
from latentlink.capacity import analytic_upper_bound, oracle_holevo, orthogonal_lower_bound
from latentlink.channels import PAIR_SWAP, effective_single, pauli_correlated
from latentlink.linalg import KET_PLUS, projector, random_density

GRID = math.pi / 8


def _report(name: str, passed: bool, achieved, target, tolerance):
    print(f"[{'PASS' if passed else 'FAIL'}] {name}: achieved={achieved} target={target} tolerance={tolerance}")


@pytest.fixture(scope="module")
def single_uncorrelated():
    return reproduce.criterion_single_uncorrelated(GRID)


def test_criterion_1_single_uncorrelated_maximum(single_uncorrelated):
    result, _ = single_uncorrelated
    _report("1 single-uncorrelated max", result.passed, result.achieved, "0.16", 0.01)
    assert result.achieved == pytest.approx(0.16, abs=0.01)
    assert result.passed


def test_criterion_2_perfect_correlated_transmission():
    result = reproduce.criterion_perfect_transmission()
    _report("2 perfect transmission", result.passed, result.achieved, "1.0", 1e-4)
    assert result.achieved == pytest.approx(1.0, abs=1e-4)
    assert result.details["output_state_deviation"] <= 1e-10
    assert result.passed


def test_criterion_3_analytic_ceiling(single_uncorrelated):
    _, scan = single_uncorrelated
    result = reproduce.criterion_ceiling(scan)
    _report("3 analytic ceiling", result.passed, result.achieved, "<= 0.5", 1e-9)
    assert scan.values.max() <= 0.5 + 1e-9
    assert abs(analytic_upper_bound(1 / math.sqrt(2), 2) - 0.5) <= 1e-12
    assert result.passed


def test_criterion_4_network_uncorrelated_maxima():
    ru = reproduce.criterion_network_random_unitary(GRID)
    _report("4a network random-unitary max", ru.passed, ru.achieved, "0.018", 0.002)
    arb = reproduce.criterion_network_arbitrary()
    _report("4b network arbitrary max", arb.passed, arb.achieved, "0.024", 0.002)
    assert ru.achieved == pytest.approx(0.018, abs=0.002)
    assert arb.achieved == pytest.approx(0.024, abs=0.002)
    assert ru.passed and arb.passed


def test_criterion_5_switch_reproduction():
    result = reproduce.criterion_switch()
    _report("5 switch capacity", result.passed, result.achieved, "0.049", 0.002)
    assert result.achieved == pytest.approx(0.049, abs=0.002)
    assert result.details["choi_equivalence_worst"] <= 1e-10
    assert result.passed


def test_criterion_6_network_correlated_maximum():
    result = reproduce.criterion_network_correlated(GRID)
    _report("6 network correlated max", result.passed, result.achieved, "0.31", 0.01)
    assert result.achieved == pytest.approx(0.31, abs=0.01)
    assert result.details["cross_check_worst_choi_diff"] <= 1e-10
    assert result.passed


def test_criterion_7_dephasing_curves():
    result = reproduce.criterion_dephasing()
    details = result.details
    _report("7 dephasing curves", result.passed, details["blue_at_zero"], "0.16 / 1.0 / 0 / 0", 0.01)
    assert details["monotone"]
    assert details["blue_at_zero"] == pytest.approx(0.16, abs=0.01)
    assert details["orange_at_zero"] == pytest.approx(1.0, abs=1e-3)
    assert abs(details["blue_at_half"]) <= 1e-6
    assert abs(details["orange_at_half"]) <= 1e-6
    assert result.passed


def test_criterion_8_oracle_equivalence():
    result = reproduce.criterion_oracle_equivalence()
    _report("8 oracle equivalence", result.passed, result.achieved, "<= 1e-3", 1e-3)
    assert result.achieved <= 1e-3
    assert result.passed


def test_criterion_9_structural_property_suite():
    result = reproduce.criterion_structural()
    details = result.details
    _report("9 structural properties", result.passed, details["worst_gauge_choi_diff"], "see details", 1e-12)
    assert details["configs"] == 1000
    assert details["worst_trace_preservation"] <= 1e-9
    assert details["worst_f_norm"] <= 1 / math.sqrt(2) + 1e-12
    assert details["ppt_failures"] == 0
    assert details["worst_gauge_choi_diff"] <= 1e-12
    assert details["dominance"]
    assert result.passed


def test_criterion_10_identity_permutation_null():
    result = reproduce.criterion_null_test()
    _report("10 identity-permutation null", result.passed, result.achieved, "0.0", 1e-6)
    assert result.details["output_input_dependence"] <= 1e-10
    assert abs(result.achieved) <= 1e-6
    assert result.passed


def test_criterion_2_output_states_exact():
    # the two headline output states, checked directly at full precision
    from latentlink.linalg import I2, KET_MINUS, kron

    ch = reproduce.perfect_transmission_channel()
    plus, minus = projector(KET_PLUS), projector(KET_MINUS)
    assert np.abs(ch.apply(plus) - kron(I2 / 2, plus)).max() <= 1e-10
    assert np.abs(ch.apply(minus) - kron(I2 / 2, minus)).max() <= 1e-10

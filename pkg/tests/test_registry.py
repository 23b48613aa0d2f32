"""Counterexample registry: every case reproduces its verdict pattern."""

import pytest

from dominance_lab.registry import (
    CASE_IDS,
    UnknownCaseError,
    run_all,
    run_counterexample,
)

EXPECTED_IDS = {
    "howell-subset-sum",
    "even-zero-subcomp",
    "strip-N2-isubcomp",
    "negatives-Z-isubcomp",
    "affine-subhom",
    "affine-superhom",
    "affine-zero",
    "mn-vs-mn-plus-n",
    "alg-strip-cost",
}


def test_registry_lists_all_cases():
    assert set(CASE_IDS) == EXPECTED_IDS


@pytest.mark.parametrize("case_id", sorted(EXPECTED_IDS))
def test_case_passes(case_id):
    result = run_counterexample(case_id)
    failed = [c for c in result.checks if not c.passed]
    assert not failed, [f"{c.name}: expected {c.expected}, got {c.actual}"
                        for c in failed]


def test_run_all_covers_everything():
    results = run_all()
    assert {r.case_id for r in results} == EXPECTED_IDS
    assert all(r.passed for r in results)


def test_unknown_case_rejected():
    with pytest.raises(UnknownCaseError):
        run_counterexample("no-such-case")


def test_howell_exposes_growth_data():
    result = run_counterexample("howell-subset-sum")
    constants = result.data["constants"]
    assert result.data["spot"] == 17
    assert constants[64] >= 2 * constants[32]
    assert constants[128] >= 2 * constants[64]

"""Tests for the acceptance suite plumbing and its cheapest criteria."""

from dataclasses import replace
from unittest.mock import patch

import pytest
from harness.acceptance import (
    CRITERIA,
    GOOD_EVENT_R,
    QUICK,
    CriterionResult,
    ShockRuns,
    SuiteContext,
    determinism,
    good_event_grid,
    run_acceptance,
    second_class_interface,
    tasep_lpp_equivalence,
)


def tiny_context(**budget) -> SuiteContext:
    return SuiteContext(budget=replace(QUICK, **budget), master_seed=0, workers=1, runs=ShockRuns(0, 1))


class TestCriterionResult:
    """Tests for CriterionResult."""

    def test_as_dict(self) -> None:
        result = CriterionResult("x", True, {"k": 1})
        assert result.as_dict() == {"name": "x", "passed": True, "detail": {"k": 1}}

    def test_thirteen_criteria(self) -> None:
        assert len(CRITERIA) == 13


class TestGoodEventGrid:
    """Tests for good_event_grid."""

    def test_unscaled_when_admissible(self) -> None:
        # r_max = 0.9 * 0.25 * 100 = 22.5 > 8
        assert good_event_grid(10**6, 0.25) == list(GOOD_EVENT_R)

    def test_scaled_into_range(self) -> None:
        grid = good_event_grid(500, 0.25)
        assert grid[-1] < 0.25 * 500 ** (1.0 / 3.0)
        assert grid[-1] / grid[0] == pytest.approx(8.0)


class TestRunAcceptance:
    """Tests for run_acceptance."""

    def test_only_selects_by_number(self) -> None:
        calls: list[str] = []

        def make(name: str):
            def criterion(ctx: SuiteContext) -> CriterionResult:
                calls.append(name)
                return CriterionResult(name, name != "b")

            return criterion

        with patch("harness.acceptance.CRITERIA", (make("a"), make("b"), make("c"))):
            results = run_acceptance(True, only={1, 2})
        assert calls == ["a", "b"]
        assert [r.passed for r in results] == [True, False]

    def test_shock_runs_are_cached(self) -> None:
        runs = ShockRuns(0, 1)
        first = runs.get(0.25, 0.75, 5.0, 3)
        assert runs.get(0.25, 0.75, 5.0, 3) is first


class TestCheapCriteria:
    """Exact criteria at a handful of seeds."""

    def test_tasep_lpp_equivalence(self) -> None:
        result = tasep_lpp_equivalence(tiny_context(pathwise_seeds=2))
        assert result.passed, result.detail
        assert result.detail["cells"] == 2 * 40 * 30 * 20

    def test_second_class_interface(self) -> None:
        assert second_class_interface(tiny_context(pathwise_seeds=2)).passed

    @pytest.mark.slow
    def test_determinism(self) -> None:
        result = determinism(tiny_context(determinism_replicas=130))
        assert result.passed, result.detail

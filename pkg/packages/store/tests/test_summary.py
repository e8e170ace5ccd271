"""Tests for summarize and sample_moments."""

import numpy as np
import pytest
from domain.models import ExperimentConfig, KsReport, ShockSample
from store.summary import sample_moments, summarize


@pytest.fixture
def cfg() -> ExperimentConfig:
    return ExperimentConfig(replicas=3, t=8.0, master_seed=42, workers=4, out_dir="elsewhere")


@pytest.fixture
def samples() -> list[ShockSample]:
    return [
        ShockSample(replica=k, t=8.0, lambda_=0.25, rho=0.75, x_t=x, n_t=n, x_rescaled=x / 2.0, n_rescaled=float("nan"))
        for k, (x, n) in enumerate([(-2, 4), (0, 6), (2, 8)])
    ]


class TestSampleMoments:
    """Tests for sample_moments."""

    def test_basic(self) -> None:
        m = sample_moments(np.array([1.0, 2.0, 3.0]))
        assert m == {"n": 3, "mean": 2.0, "variance": 1.0, "min": 1.0, "max": 3.0}

    def test_non_finite_dropped(self) -> None:
        m = sample_moments(np.array([1.0, np.nan, 3.0]))
        assert m["n"] == 2
        assert m["mean"] == 2.0

    def test_empty(self) -> None:
        assert sample_moments(np.array([]))["mean"] is None

    def test_single_value_has_no_variance(self) -> None:
        assert sample_moments(np.array([5.0]))["variance"] is None


class TestSummarize:
    """Tests for summarize."""

    def test_contents(self, cfg: ExperimentConfig, samples: list[ShockSample]) -> None:
        report = KsReport(ks_statistic=0.04, n_samples=3, reference="limit-law-X", threshold=0.1)
        summary = summarize(samples=samples, cfg=cfg, code_version="0.1.0", reports=[report])
        assert summary["seed"] == 42
        assert summary["replicas"] == 3
        assert summary["code_version"] == "0.1.0"
        assert summary["moments"]["x_t"]["mean"] == 0.0
        assert summary["moments"]["n_t"]["variance"] == pytest.approx(4.0)
        assert summary["moments"]["n_rescaled"]["n"] == 0
        assert summary["ks"] == [report.as_dict()]

    def test_config_echo_excludes_execution_fields(self, cfg: ExperimentConfig, samples: list[ShockSample]) -> None:
        summary = summarize(samples=samples, cfg=cfg, code_version="x")
        echo = summary["config"]
        assert echo["lambda"] == 0.25
        assert "workers" not in echo
        assert "out_dir" not in echo

    def test_extra_entries(self, cfg: ExperimentConfig, samples: list[ShockSample]) -> None:
        summary = summarize(samples=samples, cfg=cfg, code_version="x", extra={"overflow_reruns": 2})
        assert summary["overflow_reruns"] == 2
        assert "constants" not in summary

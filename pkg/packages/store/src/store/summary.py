"""
Experiment summary builder.

Builds the JSON-ready summary mapping written next to the samples. Every
value is a pure function of the samples and the configuration, so two runs
with the same configuration produce identical summaries.
"""

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import asdict
from math import isfinite
from typing import Any

import numpy as np
from domain.models import ExperimentConfig, KsReport, ShockConstants, ShockSample

MOMENT_FIELDS = ("x_t", "n_t", "x_rescaled", "n_rescaled")


def _finite_or_none(value: float) -> float | None:
    value = float(value)
    return value if isfinite(value) else None


def sample_moments(values: np.ndarray) -> dict[str, float | int | None]:
    """Count, mean, unbiased variance, min and max over the finite entries."""
    values = np.asarray(values, dtype=np.float64)
    values = values[np.isfinite(values)]
    n = len(values)
    if n == 0:
        return {"n": 0, "mean": None, "variance": None, "min": None, "max": None}
    return {
        "n": n,
        "mean": _finite_or_none(values.mean()),
        "variance": _finite_or_none(values.var(ddof=1)) if n > 1 else None,
        "min": _finite_or_none(values.min()),
        "max": _finite_or_none(values.max()),
    }


def summarize(
    *,
    samples: Sequence[ShockSample],
    cfg: ExperimentConfig,
    code_version: str,
    constants: ShockConstants | None = None,
    reports: Iterable[KsReport] = (),
    extra: Mapping[str, object] | None = None,
) -> dict[str, Any]:
    """
    Build the summary of one experiment.

    Parameters
    ----------
    samples:
        Samples in replica order (typically from SampleStore.ordered())
    cfg:
        Run configuration; its provenance echo is embedded
    code_version:
        Version string of the installed code
    constants:
        Shock constants used for rescaling, if any
    reports:
        KS reports to embed
    extra:
        Additional deterministic entries (e.g. overflow re-run counts)

    Returns
    -------
    dict
        JSON-ready mapping; non-finite numbers become None.
    """
    moments = {name: sample_moments(np.array([getattr(s, name) for s in samples])) for name in MOMENT_FIELDS}
    summary: dict[str, Any] = {
        "config": cfg.provenance(),
        "code_version": code_version,
        "seed": cfg.master_seed,
        "replicas": len(samples),
        "moments": moments,
        "ks": [r.as_dict() for r in reports],
    }
    if constants is not None:
        summary["constants"] = asdict(constants)
    if extra:
        summary.update(extra)
    return summary

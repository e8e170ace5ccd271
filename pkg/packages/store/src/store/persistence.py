"""
Artifact persistence: samples, summary and provenance.

Layout of one experiment directory:
    samples.csv | samples.json   one row per replica, replica order
    summary.json                 config echo, code version, moments, KS reports
    provenance.json              runtime, worker count, environment overrides

samples and summary are deterministic: the same configuration reproduces
byte-identical files. provenance.json is the only artifact that varies
between runs. Every file is written to a temporary sibling and moved into
place, so a failed run never leaves a half-written artifact behind.
"""

import csv
import hashlib
import json
import logging
import os
import tempfile
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from importlib import metadata
from io import StringIO
from math import isfinite
from pathlib import Path
from typing import Any

import numpy as np
from domain.errors import DataError, PersistenceError
from domain.models import ExperimentConfig, ShockSample
from domain.types import OutputFormat
from pydantic import ValidationError

logger = logging.getLogger(__name__)

SAMPLE_COLUMNS = ("replica", "t", "lambda", "rho", "x_t", "n_t", "x_rescaled", "n_rescaled")
SUMMARY_NAME = "summary.json"
PROVENANCE_NAME = "provenance.json"
DISTRIBUTION = "shocklab"


@dataclass(frozen=True, slots=True)
class ArtifactPaths:
    """Files written by one persist() call."""

    samples: Path
    summary: Path
    provenance: Path | None

    def deterministic(self) -> tuple[Path, Path]:
        return self.samples, self.summary


def code_version() -> str:
    """Installed version of the laboratory, or "unknown" outside an installed tree."""
    try:
        return metadata.version(DISTRIBUTION)
    except metadata.PackageNotFoundError:
        return "unknown"


def file_sha256(path: Path) -> str:
    """Hex SHA-256 of a file's bytes."""
    try:
        with path.open("rb") as f:
            return hashlib.file_digest(f, "sha256").hexdigest()
    except OSError as e:
        raise PersistenceError("Cannot hash artifact", path=str(path)) from e


def jsonable(value: object) -> object:
    """Nested copy with numpy scalars unwrapped and non-finite floats as None."""
    if isinstance(value, Mapping):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, list | tuple):
        return [jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return [jsonable(v) for v in value.tolist()]
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not isfinite(value):
        return None
    return value


def dump_json(payload: Mapping[str, object]) -> str:
    return json.dumps(jsonable(payload), indent=2, sort_keys=True, allow_nan=False) + "\n"


# ---------------------------------------------------------------------
# Writing
# ---------------------------------------------------------------------


def _write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(text)
        os.replace(tmp, path)
    except OSError as e:
        Path(tmp).unlink(missing_ok=True)
        raise PersistenceError("Cannot write artifact", path=str(path)) from e


def _sample_row(sample: ShockSample) -> dict[str, object]:
    return {
        "replica": sample.replica,
        "t": repr(float(sample.t)),
        "lambda": repr(float(sample.lambda_)),
        "rho": repr(float(sample.rho)),
        "x_t": sample.x_t,
        "n_t": sample.n_t,
        "x_rescaled": repr(float(sample.x_rescaled)),
        "n_rescaled": repr(float(sample.n_rescaled)),
    }


def samples_to_csv(samples: Iterable[ShockSample]) -> str:
    """CSV text with the fixed sample header; floats in shortest round-trip form."""
    buffer = StringIO()
    writer = csv.DictWriter(buffer, fieldnames=SAMPLE_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for sample in samples:
        writer.writerow(_sample_row(sample))
    return buffer.getvalue()


def samples_to_json(samples: Iterable[ShockSample], cfg: ExperimentConfig, version: str) -> str:
    rows = [
        {
            "replica": s.replica,
            "t": s.t,
            "lambda": s.lambda_,
            "rho": s.rho,
            "x_t": s.x_t,
            "n_t": s.n_t,
            "x_rescaled": s.x_rescaled,
            "n_rescaled": s.n_rescaled,
        }
        for s in samples
    ]
    return dump_json({"config": cfg.provenance(), "code_version": version, "samples": rows})


def write_table(path: Path, columns: Sequence[str], rows: Iterable[Sequence[object]]) -> Path:
    """Plot-ready CSV with a header row."""
    buffer = StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([repr(float(v)) if isinstance(v, float | np.floating) else v for v in row])
    _write_atomic(path, buffer.getvalue())
    return path


def write_report(path: Path, payload: Mapping[str, object]) -> Path:
    _write_atomic(path, dump_json(payload))
    return path


def persist(
    samples: Sequence[ShockSample],
    summary: Mapping[str, object],
    cfg: ExperimentConfig,
    *,
    out_dir: Path,
    fmt: OutputFormat = "csv",
    provenance: Mapping[str, object] | None = None,
) -> ArtifactPaths:
    """
    Write samples, summary and (optionally) provenance under out_dir.

    If any file fails, files already written by this call are removed.

    Raises
    ------
    PersistenceError
        On any I/O failure, with the offending path.
    """
    version = str(summary.get("code_version", code_version()))
    samples_path = out_dir / f"samples.{fmt}"
    summary_path = out_dir / SUMMARY_NAME
    provenance_path = out_dir / PROVENANCE_NAME if provenance is not None else None

    pending: list[tuple[Path, str]] = [
        (samples_path, samples_to_csv(samples) if fmt == "csv" else samples_to_json(samples, cfg, version)),
        (summary_path, dump_json(summary)),
    ]
    if provenance_path is not None and provenance is not None:
        pending.append((provenance_path, dump_json(provenance)))

    written: list[Path] = []
    try:
        for path, text in pending:
            _write_atomic(path, text)
            written.append(path)
    except PersistenceError:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    logger.info("Wrote %d samples to %s", len(samples), samples_path)
    return ArtifactPaths(samples=samples_path, summary=summary_path, provenance=provenance_path)


# ---------------------------------------------------------------------
# Reading
# ---------------------------------------------------------------------


def _read_text(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as e:
        raise PersistenceError("Cannot read artifact", path=str(path)) from e


def _sample_from_row(row: Mapping[str, Any], path: Path) -> ShockSample:
    def number(key: str) -> float:
        value = row.get(key)
        return float("nan") if value is None else float(value)

    try:
        return ShockSample(
            replica=int(row["replica"]),
            t=number("t"),
            lambda_=number("lambda"),
            rho=number("rho"),
            x_t=int(row["x_t"]),
            n_t=int(row["n_t"]),
            x_rescaled=number("x_rescaled"),
            n_rescaled=number("n_rescaled"),
        )
    except (KeyError, TypeError, ValueError) as e:
        raise DataError(f"Malformed sample row in {path}: {dict(row)}") from e


def parse_samples(path: Path) -> list[ShockSample]:
    """
    Read samples written by persist (CSV or JSON, by suffix).

    Raises
    ------
    DataError
        If the header or a row does not match the sample schema.
    """
    text = _read_text(path)
    if path.suffix == ".json":
        try:
            rows = json.loads(text)["samples"]
        except (json.JSONDecodeError, KeyError, TypeError) as e:
            raise DataError(f"Malformed sample file {path}") from e
        return [_sample_from_row(row, path) for row in rows]
    reader = csv.DictReader(StringIO(text))
    if tuple(reader.fieldnames or ()) != SAMPLE_COLUMNS:
        raise DataError(f"Unexpected CSV header in {path}: {reader.fieldnames}")
    return [_sample_from_row(row, path) for row in reader]


def parse_summary(path: Path) -> dict[str, object]:
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise DataError(f"Malformed summary {path}") from e


def parse(out_dir: Path, fmt: OutputFormat = "csv") -> tuple[list[ShockSample], ExperimentConfig]:
    """
    Inverse of persist: samples in file order and the echoed configuration.

    The configuration comes back with default execution fields, since those
    are not part of the echo.
    """
    summary_path = out_dir / SUMMARY_NAME
    summary = parse_summary(summary_path)
    try:
        cfg = ExperimentConfig.model_validate(summary["config"])
    except (KeyError, ValidationError) as e:
        raise DataError(f"Summary {summary_path} has no valid config echo") from e
    return parse_samples(out_dir / f"samples.{fmt}"), cfg

"""Store package: replica-ordered sample store, summaries and artifact persistence."""

from store.persistence import (
    ArtifactPaths,
    code_version,
    file_sha256,
    parse,
    parse_samples,
    persist,
    write_report,
    write_table,
)
from store.sample_store import SampleReader, SampleStore, SampleWriter
from store.summary import sample_moments, summarize

__all__ = [
    # Sample store
    "SampleReader",
    "SampleStore",
    "SampleWriter",
    # Summaries
    "sample_moments",
    "summarize",
    # Persistence
    "ArtifactPaths",
    "code_version",
    "file_sha256",
    "parse",
    "parse_samples",
    "persist",
    "write_report",
    "write_table",
]

"""
Replica-indexed sample store.

Single-writer architecture:
- Only the harness merge step writes via add() / merge()
- Workers hand back finished samples; the store owns ordering
- Readers always see samples sorted by replica index

Output order therefore never depends on which worker finished first.
"""

from collections.abc import Iterable
from dataclasses import dataclass, field
from typing import Protocol

import numpy as np
from domain.errors import ContractViolationError
from domain.models import ShockSample


class SampleReader(Protocol):
    """Read-only view of the sample store."""

    def get(self, replica: int) -> ShockSample | None: ...
    def ordered(self) -> list[ShockSample]: ...
    def column(self, name: str) -> np.ndarray: ...
    def missing(self, replicas: int) -> list[int]: ...
    def count(self) -> int: ...


class SampleWriter(Protocol):
    """Write interface; only the merge step should use this."""

    def add(self, sample: ShockSample) -> None: ...
    def merge(self, samples: Iterable[ShockSample]) -> int: ...
    def clear(self) -> None: ...


@dataclass
class SampleStore:
    """
    In-memory store of ShockSample keyed by replica index.

    A replica is written once. A second sample for the same index is a
    contract violation; re-runs must replace through clear() or never reach
    the store.
    """

    _samples: dict[int, ShockSample] = field(default_factory=dict)

    def add(self, sample: ShockSample) -> None:
        """
        Insert one sample.

        Raises
        ------
        ContractViolationError
            If the replica index is negative or already present.
        """
        if sample.replica < 0:
            raise ContractViolationError(f"Replica index must be >= 0, got {sample.replica}")
        if sample.replica in self._samples:
            raise ContractViolationError(f"Replica {sample.replica} was already stored")
        self._samples[sample.replica] = sample

    def merge(self, samples: Iterable[ShockSample]) -> int:
        """Insert a batch of samples and return how many were added."""
        added = 0
        for sample in samples:
            self.add(sample)
            added += 1
        return added

    def clear(self) -> None:
        """Drop all samples."""
        self._samples.clear()

    # --- Read interface (SampleReader) ---

    def get(self, replica: int) -> ShockSample | None:
        """Sample of one replica, if stored."""
        return self._samples.get(replica)

    def ordered(self) -> list[ShockSample]:
        """All samples sorted by replica index."""
        return [self._samples[k] for k in sorted(self._samples)]

    def column(self, name: str) -> np.ndarray:
        """One field across replicas, in replica order (e.g. "x_t", "x_rescaled")."""
        if name not in ShockSample.__dataclass_fields__:
            raise ContractViolationError(f"ShockSample has no field {name!r}")
        return np.array([getattr(s, name) for s in self.ordered()])

    def missing(self, replicas: int) -> list[int]:
        """Replica indices in [0, replicas) that have no sample yet."""
        return [k for k in range(replicas) if k not in self._samples]

    def count(self) -> int:
        """Number of stored replicas."""
        return len(self._samples)

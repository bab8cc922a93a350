"""Counter-based random streams.

A stream is identified by ``(master_seed, stream_index)`` plus an optional
path of child keys. Each call to :meth:`RngStream.generator` builds a fresh
Philox generator from a ``SeedSequence`` whose spawn key is that identity, so
the same stream always replays the same numbers and distinct identities are
statistically independent, in whatever order they are consumed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .engine_error import GaussianEngineError

MAX_SEED = 2**64


@dataclass(frozen=True)
class RngStream:
    """Value-semantic handle on an independent random stream.

    Attributes:
        master_seed (int): 64-bit unsigned experiment seed.
        stream_index (int): Replicate identifier.
        path (tuple[int, ...]): Child keys below the replicate, used when one
            replicate needs several independent draws.
    """

    master_seed: int
    stream_index: int
    path: tuple[int, ...] = ()

    def __post_init__(self):
        if not 0 <= int(self.master_seed) < MAX_SEED:
            raise GaussianEngineError(f"master_seed must be a 64-bit unsigned integer, got {self.master_seed}")
        if int(self.stream_index) < 0:
            raise GaussianEngineError(f"stream_index must be nonnegative, got {self.stream_index}")
        if any(int(key) < 0 for key in self.path):
            raise GaussianEngineError("child keys must be nonnegative")

    def generator(self) -> np.random.Generator:
        """Build a fresh generator positioned at the start of this stream.

        Returns:
            numpy.random.Generator: Philox-backed generator; two calls return
            generators producing identical sequences.
        """
        seed_sequence = np.random.SeedSequence(
            entropy=int(self.master_seed),
            spawn_key=(int(self.stream_index), *(int(key) for key in self.path)),
        )
        return np.random.Generator(np.random.Philox(seed_sequence))

    def child(self, key: int) -> RngStream:
        """Derive an independent sub-stream of this stream.

        Args:
            key (int): Nonnegative child key; distinct keys give independent streams.

        Returns:
            RngStream: The child stream.
        """
        return replace(self, path=self.path + (int(key),))


def derive_stream(master_seed: int, stream_index: int) -> RngStream:
    """Return the stream of replicate ``stream_index`` under ``master_seed``."""
    return RngStream(int(master_seed), int(stream_index))

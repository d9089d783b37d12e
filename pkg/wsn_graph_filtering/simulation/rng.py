"""Named, indexed random streams derived from one master seed."""

from __future__ import annotations

import numpy as np

STREAMS = {
    "topology": 0,
    "signal": 1,
    "noise": 2,
    "schedule": 3,
    "trials": 4,
    "connection": 5,
}


class SeededStreams:
    """Hands out independent generators keyed by (replica, stream, index).

    The same key always yields the same stream, so trial ``i`` draws the
    same realizations whichever worker runs it.
    """

    def __init__(self, master_seed: int, replica: int = 0):
        if master_seed < 0:
            raise ValueError(f"master_seed must be non-negative, got {master_seed}")
        self.master_seed = int(master_seed)
        self.replica_index = int(replica)

    def sequence(self, name: str, index: int = 0) -> np.random.SeedSequence:
        if name not in STREAMS:
            raise KeyError(f"Unknown random stream: {name}")
        return np.random.SeedSequence(
            entropy=self.master_seed,
            spawn_key=(self.replica_index, STREAMS[name], int(index)),
        )

    def generator(self, name: str, index: int = 0) -> np.random.Generator:
        return np.random.default_rng(self.sequence(name, index))

    def integer_seed(self, name: str, index: int = 0) -> int:
        """A plain integer seed for APIs that take one (topology, schedulers)."""
        return int(self.sequence(name, index).generate_state(1)[0])

    def replica(self, k: int) -> SeededStreams:
        return SeededStreams(self.master_seed, k)

"""Ground-truth graph world the agent searches."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from affect_engine.errors import ConfigError
from affect_engine.inference.model import INVISIBLE, VISIBLE

DEFAULT_NUM_LOCATIONS = 8
DEFAULT_EDGES: Tuple[Tuple[int, int], ...] = (
    (0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7),
)
# Second topology used to check that results do not hinge on the default graph.
ALT_NUM_LOCATIONS = 6
ALT_EDGES: Tuple[Tuple[int, int], ...] = ((0, 1), (1, 2), (1, 3), (3, 4), (4, 5), (2, 5))


def adjacency_from_edges(num_locations: int, edges: Iterable[Sequence[int]]) -> np.ndarray:
    adj = np.zeros((num_locations, num_locations), dtype=bool)
    for edge in edges:
        i, j = (int(x) for x in edge)
        if not (0 <= i < num_locations and 0 <= j < num_locations):
            raise ConfigError(f"edge {edge} references a location outside 0..{num_locations - 1}")
        adj[i, j] = adj[j, i] = True
    return adj


def default_adjacency() -> np.ndarray:
    return adjacency_from_edges(DEFAULT_NUM_LOCATIONS, DEFAULT_EDGES)


def alternate_adjacency() -> np.ndarray:
    return adjacency_from_edges(ALT_NUM_LOCATIONS, ALT_EDGES)


def graph_distances(adjacency, source: int) -> np.ndarray:
    """Hop counts from ``source`` (breadth-first); unreachable nodes get -1."""
    adj = np.asarray(adjacency, dtype=bool)
    n = adj.shape[0]
    dist = np.full(n, -1, dtype=int)
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in np.flatnonzero(adj[u]):
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def is_connected(adjacency) -> bool:
    return bool(np.all(graph_distances(adjacency, 0) >= 0))


@dataclass
class GraphWorld:
    """Mutable ground truth for one episode.

    ``object_location`` is ``None`` when the object is absent.
    """

    adjacency: np.ndarray
    object_location: Optional[int]
    visibility_prob: float = 0.95
    agent_location: int = 0
    rng: np.random.Generator = field(default_factory=lambda: np.random.default_rng(0), repr=False)

    def __post_init__(self):
        adj = np.asarray(self.adjacency, dtype=bool)
        n = adj.shape[0]
        if adj.ndim != 2 or adj.shape != (n, n) or not np.array_equal(adj, adj.T):
            raise ConfigError("adjacency must be a symmetric square matrix")
        if not is_connected(adj):
            raise ConfigError("graph is not connected: some location is unreachable from 0")
        if not 0 <= self.agent_location < n:
            raise ConfigError(f"agent location {self.agent_location} out of range")
        if self.object_location is not None and not 0 <= self.object_location < n:
            raise ConfigError(f"object location {self.object_location} out of range")
        if not 0 < self.visibility_prob <= 1:
            raise ConfigError("visibility probability must lie in (0, 1]")
        if not isinstance(self.rng, np.random.Generator):
            self.rng = np.random.default_rng(self.rng)
        self.adjacency = adj

    @property
    def num_locations(self) -> int:
        return self.adjacency.shape[0]

    def can_move(self, source: int, target: int) -> bool:
        return source == target or bool(self.adjacency[source, target])

    def step(self, target: int) -> int:
        """Move to ``target`` if it is the current node or a neighbour."""
        target = int(target)
        if not 0 <= target < self.num_locations:
            raise ConfigError(f"target {target} out of range")
        if self.can_move(self.agent_location, target):
            self.agent_location = target
        return self.agent_location

    def observe(self) -> Tuple[int, int]:
        """(true agent location, visibility outcome); false positives never occur."""
        here = self.agent_location
        if self.object_location is not None and here == self.object_location:
            seen = self.rng.random() < self.visibility_prob
            return here, VISIBLE if seen else INVISIBLE
        return here, INVISIBLE

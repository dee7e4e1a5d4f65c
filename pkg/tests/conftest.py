import sys
from pathlib import Path

import numpy as np
import pytest

from affect_engine.environment import default_adjacency
from affect_engine.inference import BeliefState, GenerativeModel, agent_transitions, build_model

sys.path.insert(0, str(Path(__file__).parent))


def chain_adjacency(n):
    adj = np.zeros((n, n), dtype=bool)
    for i in range(n - 1):
        adj[i, i + 1] = adj[i + 1, i] = True
    return adj


def random_connected_adjacency(rng, n):
    """Random spanning tree plus a few extra edges."""
    adj = np.zeros((n, n), dtype=bool)
    for v in range(1, n):
        u = int(rng.integers(0, v))
        adj[u, v] = adj[v, u] = True
    for _ in range(int(rng.integers(0, n))):
        u, v = rng.integers(0, n, size=2)
        if u != v:
            adj[u, v] = adj[v, u] = True
    return adj


def random_model(rng, max_locations=6, horizon=1, structured=False, not_here=None):
    """Small model with random graph, priors and (optionally) a dense visibility likelihood."""
    L = int(rng.integers(2, max_locations + 1))
    adj = random_connected_adjacency(rng, L)
    if not_here is None:
        not_here = bool(rng.integers(0, 2))
    S = L + int(not_here)
    if structured:
        return build_model(
            adj,
            float(rng.uniform(0.5, 1.0)),
            prior_object=rng.dirichlet(np.ones(S)),
            not_here=not_here,
            preferences=tuple(rng.dirichlet(np.ones(2))),
            horizon=horizon,
        )
    vis = rng.uniform(0.05, 0.95, size=(L, S))
    A = np.stack([vis, 1 - vis])
    return GenerativeModel(
        adjacency=adj,
        likelihood_location=np.eye(L),
        likelihood_visibility=A,
        transition_agent=agent_transitions(adj),
        transition_object=np.eye(S),
        preference_visibility=rng.dirichlet(np.ones(2)),
        prior_agent=rng.dirichlet(np.ones(L)),
        prior_object=rng.dirichlet(np.ones(S)),
        horizon=horizon,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20240917)


@pytest.fixture
def default_model():
    return build_model(default_adjacency(), 0.95)


@pytest.fixture
def chain3():
    return chain_adjacency(3)


def delta_belief(model, loc, obj_belief=None):
    agent = np.eye(model.num_locations)[loc]
    obj = model.prior_object if obj_belief is None else obj_belief
    return BeliefState(agent, obj)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)

"""Generative model and belief containers for the two-factor search agent.

State factors: the agent's own location (``L`` values) and the object's
location (``L`` values, or ``L + 1`` with a trailing "not here" state).
Modalities: the observed location (identity likelihood) and whether the
object is visible at the current location.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from affect_engine.errors import InvalidInputError
from affect_engine.inference.categorical import as_categorical, uniform

VISIBLE = 0
INVISIBLE = 1
VISIBILITY_OUTCOMES = ("visible", "invisible")

Observation = Tuple[int, int]
"""(observed location, visibility outcome index)."""

Policy = Tuple[int, ...]
"""Sequence of location targets, one per planning step."""


def _frozen(arr) -> np.ndarray:
    out = np.array(arr, dtype=float)
    out.setflags(write=False)
    return out


def agent_transitions(adjacency: np.ndarray) -> np.ndarray:
    """Build ``B[next, current, action]`` for target-location actions.

    Moving to ``action`` succeeds when it equals the current location or is
    adjacent to it; any other target leaves the agent where it is.
    """
    adj = np.asarray(adjacency, dtype=bool)
    n = adj.shape[0]
    B = np.zeros((n, n, n))
    for cur in range(n):
        for act in range(n):
            nxt = act if (act == cur or adj[cur, act]) else cur
            B[nxt, cur, act] = 1.0
    return B


def visibility_likelihood(num_locations: int, p: float, not_here: bool = False) -> np.ndarray:
    """``A[o, agent_loc, object_state]`` for o in (visible, invisible).

    The object is seen with probability ``p`` only when agent and object
    share a location. There are no false positives, and the optional
    "not here" state is never visible.
    """
    if not 0.0 < p <= 1.0:
        raise InvalidInputError(f"visibility probability must be in (0, 1], got {p}")
    n_obj = num_locations + (1 if not_here else 0)
    A = np.zeros((2, num_locations, n_obj))
    A[VISIBLE, :, :num_locations] = p * np.eye(num_locations)
    A[INVISIBLE] = 1.0 - A[VISIBLE]
    return A


@dataclass(frozen=True)
class GenerativeModel:
    adjacency: np.ndarray
    likelihood_location: np.ndarray
    likelihood_visibility: np.ndarray
    transition_agent: np.ndarray
    transition_object: np.ndarray
    preference_visibility: np.ndarray
    prior_agent: np.ndarray
    prior_object: np.ndarray
    horizon: int = 3
    policy_precision: float = 1.0

    def __post_init__(self):
        for name in (
            "adjacency",
            "likelihood_location",
            "likelihood_visibility",
            "transition_agent",
            "transition_object",
            "preference_visibility",
            "prior_agent",
            "prior_object",
        ):
            object.__setattr__(self, name, _frozen(getattr(self, name)))
        self._validate()

    def _validate(self) -> None:
        L, S = self.num_locations, self.object_states
        adj = self.adjacency
        if adj.shape != (L, L) or not np.array_equal(adj, adj.T):
            raise InvalidInputError("adjacency must be a symmetric L x L matrix")
        if not np.array_equal(self.likelihood_location, np.eye(L)):
            raise InvalidInputError("location likelihood must be the identity")
        A = self.likelihood_visibility
        if A.shape != (2, L, S):
            raise InvalidInputError(f"visibility likelihood has shape {A.shape}, expected {(2, L, S)}")
        if np.any(A < 0) or not np.allclose(A.sum(axis=0), 1.0, atol=1e-9):
            raise InvalidInputError("visibility likelihood columns must be categorical")
        if not np.array_equal(self.transition_agent, agent_transitions(adj)):
            raise InvalidInputError("agent transitions must follow the adjacency graph")
        if not np.array_equal(self.transition_object, np.eye(S)):
            raise InvalidInputError("object transitions must be the identity")
        as_categorical(self.preference_visibility, "preference_visibility")
        if self.preference_visibility.shape != (2,):
            raise InvalidInputError("preferences cover exactly (visible, invisible)")
        as_categorical(self.prior_agent, "prior_agent")
        as_categorical(self.prior_object, "prior_object")
        if self.prior_agent.shape != (L,):
            raise InvalidInputError("prior_agent length must equal num_locations")
        if int(self.horizon) < 1:
            raise InvalidInputError("horizon must be a positive integer")
        if not self.policy_precision > 0:
            raise InvalidInputError("policy_precision must be positive")

    @property
    def num_locations(self) -> int:
        return int(self.prior_agent.shape[0])

    @property
    def object_states(self) -> int:
        return int(self.prior_object.shape[0])

    @property
    def has_not_here(self) -> bool:
        return self.object_states == self.num_locations + 1

    def initial_belief(self) -> "BeliefState":
        return BeliefState(self.prior_agent, self.prior_object)


def build_model(
    adjacency,
    p: float = 0.95,
    *,
    prior_object=None,
    prior_agent=None,
    not_here: bool = False,
    preferences=(0.99, 0.01),
    horizon: int = 3,
    policy_precision: float = 1.0,
) -> GenerativeModel:
    """Standard search-agent model on a location graph.

    ``prior_agent`` defaults to certainty about location 0 and
    ``prior_object`` to a uniform belief over all object states.
    """
    adj = np.asarray(adjacency, dtype=bool)
    L = adj.shape[0]
    S = L + (1 if not_here else 0)
    if prior_agent is None:
        prior_agent = np.eye(L)[0]
    if prior_object is None:
        prior_object = uniform(S)
    return GenerativeModel(
        adjacency=adj,
        likelihood_location=np.eye(L),
        likelihood_visibility=visibility_likelihood(L, p, not_here),
        transition_agent=agent_transitions(adj),
        transition_object=np.eye(S),
        preference_visibility=np.asarray(preferences, dtype=float),
        prior_agent=np.asarray(prior_agent, dtype=float),
        prior_object=np.asarray(prior_object, dtype=float),
        horizon=int(horizon),
        policy_precision=float(policy_precision),
    )


@dataclass(frozen=True)
class BeliefState:
    """Per-factor posterior marginals."""

    agent_belief: np.ndarray
    object_belief: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "agent_belief", _frozen(as_categorical(self.agent_belief, "agent belief")))
        object.__setattr__(self, "object_belief", _frozen(as_categorical(self.object_belief, "object belief")))

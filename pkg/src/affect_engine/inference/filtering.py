"""Exact belief propagation for the factorized search model."""

from __future__ import annotations

import numpy as np

from affect_engine.errors import ImpossibleObservationError, InvalidInputError
from affect_engine.inference.model import BeliefState, GenerativeModel, Observation


def _check_location(model: GenerativeModel, loc: int) -> int:
    loc = int(loc)
    if not 0 <= loc < model.num_locations:
        raise InvalidInputError(f"location {loc} outside 0..{model.num_locations - 1}")
    return loc


def predict(model: GenerativeModel, belief: BeliefState, action: int) -> BeliefState:
    """Push the agent factor through its transition for ``action``.

    The object factor is static, so its belief is returned unchanged.
    """
    action = _check_location(model, action)
    agent = model.transition_agent[:, :, action] @ belief.agent_belief
    return BeliefState(agent, belief.object_belief)


def predictive_observation(model: GenerativeModel, belief: BeliefState) -> np.ndarray:
    """Predicted distribution over (visible, invisible)."""
    A = model.likelihood_visibility
    return np.einsum("oij,i,j->o", A, belief.agent_belief, belief.object_belief)


def update_beliefs(
    model: GenerativeModel, predicted: BeliefState, observation: Observation
) -> BeliefState:
    """Condition the predicted belief on a (location, visibility) observation.

    The location modality is noiseless, so the agent factor collapses onto
    the observed location and the joint posterior stays factorized.
    """
    loc, vis = observation
    loc = _check_location(model, loc)
    if vis not in (0, 1):
        raise InvalidInputError(f"visibility outcome must be 0 or 1, got {vis}")
    agent = predicted.agent_belief * model.likelihood_location[loc]
    if agent.sum() <= 0:
        raise ImpossibleObservationError(f"agent cannot be at location {loc}")
    obj = predicted.object_belief * model.likelihood_visibility[vis, loc]
    z = obj.sum()
    if z <= 0:
        raise ImpossibleObservationError(
            f"visibility outcome {vis} at location {loc} has zero probability"
        )
    return BeliefState(agent / agent.sum(), obj / z)

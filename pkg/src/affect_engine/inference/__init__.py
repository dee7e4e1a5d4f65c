"""Categorical machinery, the generative model, filtering and planning."""

from affect_engine.inference.categorical import (
    as_categorical,
    entropy,
    is_categorical,
    kl_divergence,
    normalize,
    onehot,
    safe_log,
    softmax,
    uniform,
)
from affect_engine.inference.filtering import predict, predictive_observation, update_beliefs
from affect_engine.inference.free_energy import FreeEnergyReport, variational_free_energy
from affect_engine.inference.model import (
    INVISIBLE,
    VISIBILITY_OUTCOMES,
    VISIBLE,
    BeliefState,
    GenerativeModel,
    Observation,
    Policy,
    agent_transitions,
    build_model,
    visibility_likelihood,
)
from affect_engine.inference.planning import (
    PolicyEvaluation,
    enumerate_policies,
    evaluate_policies,
    expected_free_energy,
    policy_posterior,
    select_action,
)

__all__ = [
    "INVISIBLE",
    "VISIBILITY_OUTCOMES",
    "VISIBLE",
    "BeliefState",
    "FreeEnergyReport",
    "GenerativeModel",
    "Observation",
    "Policy",
    "PolicyEvaluation",
    "agent_transitions",
    "as_categorical",
    "build_model",
    "entropy",
    "enumerate_policies",
    "evaluate_policies",
    "expected_free_energy",
    "is_categorical",
    "kl_divergence",
    "normalize",
    "onehot",
    "policy_posterior",
    "predict",
    "predictive_observation",
    "safe_log",
    "select_action",
    "softmax",
    "uniform",
    "update_beliefs",
    "variational_free_energy",
]

"""Variational free energy of a posterior belief, in three equivalent forms."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from affect_engine.errors import InvalidInputError
from affect_engine.inference.categorical import safe_log
from affect_engine.inference.model import BeliefState, GenerativeModel, Observation


@dataclass(frozen=True)
class FreeEnergyReport:
    """All quantities in nats.

    ``total`` is taken from the complexity - accuracy form;
    ``kl_posterior_form`` is KL[Q || P(s|o)] - log P(o), computed separately
    against the exact posterior.
    """

    total: float
    kl_posterior_form: float
    energy: float
    entropy: float
    complexity: float
    accuracy: float
    log_evidence: float

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "kl_posterior_form": self.kl_posterior_form,
            "energy": self.energy,
            "entropy": self.entropy,
            "complexity": self.complexity,
            "accuracy": self.accuracy,
            "log_evidence": self.log_evidence,
        }


def _joint(belief: BeliefState) -> np.ndarray:
    return np.outer(belief.agent_belief, belief.object_belief)


def variational_free_energy(
    model: GenerativeModel,
    prior: BeliefState,
    posterior: BeliefState,
    observation: Observation,
) -> FreeEnergyReport:
    L, S = model.num_locations, model.object_states
    for name, b in (("prior", prior), ("posterior", posterior)):
        if b.agent_belief.shape != (L,) or b.object_belief.shape != (S,):
            raise InvalidInputError(f"{name} belief does not match the model dimensions")
    loc, vis = observation
    if not (0 <= loc < L and vis in (0, 1)):
        raise InvalidInputError(f"invalid observation {observation!r}")

    # P(o | s_agent, s_object) over the joint state grid
    lik = model.likelihood_location[loc][:, None] * model.likelihood_visibility[vis]
    p_s = _joint(prior)
    q_s = _joint(posterior)

    log_lik = safe_log(lik)
    log_prior = safe_log(p_s)
    q_pos = q_s > 0
    log_q = np.where(q_pos, np.log(np.where(q_pos, q_s, 1.0)), 0.0)

    accuracy = float(np.sum(q_s * log_lik))
    complexity = float(np.sum(q_s * (log_q - log_prior)))
    energy = float(-np.sum(q_s * (log_lik + log_prior)))
    entropy = float(-np.sum(q_s * log_q))

    evidence = float(np.sum(lik * p_s))
    log_evidence = float(safe_log(evidence))
    exact_post = lik * p_s / evidence if evidence > 0 else np.zeros_like(p_s)
    kl_exact = float(np.sum(q_s * (log_q - safe_log(exact_post))))

    return FreeEnergyReport(
        total=complexity - accuracy,
        kl_posterior_form=kl_exact - log_evidence,
        energy=energy,
        entropy=entropy,
        complexity=complexity,
        accuracy=accuracy,
        log_evidence=log_evidence,
    )

import numpy as np
import pytest

from affect_engine.errors import InvalidInputError
from affect_engine.inference import (
    INVISIBLE,
    BeliefState,
    build_model,
    update_beliefs,
    variational_free_energy,
)
from conftest import chain_adjacency, random_model
from oracles import neg_log_evidence


def test_zero_when_posterior_equals_prior_and_observation_is_certain():
    m = build_model(chain_adjacency(3), 0.95)
    b = BeliefState(np.eye(3)[0], np.eye(3)[2])
    fe = variational_free_energy(m, b, b, (0, INVISIBLE))
    assert fe.total == pytest.approx(0.0, abs=1e-12)
    assert fe.complexity == pytest.approx(0.0, abs=1e-12)
    assert fe.accuracy == pytest.approx(0.0, abs=1e-12)


def test_exact_posterior_gives_negative_log_evidence_three_states():
    m = build_model(chain_adjacency(3), 0.95, prior_object=[0.2, 0.5, 0.3])
    prior = BeliefState(np.eye(3)[1], m.prior_object)
    obs = (1, INVISIBLE)
    post = update_beliefs(m, prior, obs)
    fe = variational_free_energy(m, prior, post, obs)
    # P(invisible) = 1 - 0.95 * 0.5 computed directly
    assert fe.total == pytest.approx(-np.log(1 - 0.95 * 0.5), abs=1e-9)
    assert fe.total == pytest.approx(neg_log_evidence(m, prior.agent_belief, prior.object_belief, obs), abs=1e-9)


def test_decompositions_agree_on_random_inputs(rng):
    for _ in range(300):
        m = random_model(rng)
        prior = BeliefState(rng.dirichlet(np.ones(m.num_locations)), rng.dirichlet(np.ones(m.object_states)))
        obs = (int(rng.integers(m.num_locations)), int(rng.integers(2)))
        post = BeliefState(np.eye(m.num_locations)[obs[0]], rng.dirichlet(np.ones(m.object_states)))
        fe = variational_free_energy(m, prior, post, obs)
        assert fe.energy - fe.entropy == pytest.approx(fe.complexity - fe.accuracy, abs=1e-9)
        assert fe.kl_posterior_form == pytest.approx(fe.total, abs=1e-9)
        assert fe.complexity >= -1e-12


def test_dimension_mismatch_rejected():
    m = build_model(chain_adjacency(3), 0.95)
    small = BeliefState([1.0, 0.0], [0.5, 0.5])
    ok = BeliefState(np.eye(3)[0], np.full(3, 1 / 3))
    with pytest.raises(InvalidInputError):
        variational_free_energy(m, small, ok, (0, 1))

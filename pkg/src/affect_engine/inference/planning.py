"""Expected free energy of policies and softmax policy selection."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Literal, Sequence, Tuple

import numpy as np

from affect_engine.errors import InvalidInputError
from affect_engine.inference.categorical import kl_divergence, safe_log, softmax
from affect_engine.inference.model import BeliefState, GenerativeModel, Policy

# Outcome branches with zero predictive probability are pruned.
_BRANCH_EPS = 0.0


@dataclass(frozen=True)
class PolicyEvaluation:
    policy: Policy
    efe: float
    info_gain: float
    expected_utility: float
    per_step: Tuple[Tuple[float, float], ...]


def enumerate_policies(num_locations: int, horizon: int) -> List[Policy]:
    """All ``num_locations ** horizon`` target sequences, lexicographic order."""
    return list(itertools.product(range(num_locations), repeat=horizon))


def _step_terms(model: GenerativeModel, agent: np.ndarray, obj: np.ndarray, log_c: np.ndarray):
    """One-step epistemic and pragmatic terms from a predicted belief.

    Returns (predictive, object posteriors per outcome, info gain, expected utility).
    """
    A = model.likelihood_visibility
    # joint[o, j] = sum_i A[o, i, j] * agent[i] * obj[j]
    joint = np.einsum("oij,i,j->oj", A, agent, obj)
    po = joint.sum(axis=1)
    posts = []
    ig = 0.0
    for o in range(joint.shape[0]):
        if po[o] <= _BRANCH_EPS:
            posts.append(None)
            continue
        post = joint[o] / po[o]
        posts.append(post)
        ig += po[o] * kl_divergence(post, obj)
    eu = float(po @ log_c)
    return po, posts, ig, eu


def expected_free_energy(
    model: GenerativeModel, belief: BeliefState, policy: Sequence[int]
) -> PolicyEvaluation:
    """Score one policy by rolling the belief forward over every outcome branch.

    Each step contributes ``-info_gain - expected_utility``; information gain is
    measured on the object factor, with outcomes branched and weighted by
    their predictive probability.
    """
    policy = tuple(int(a) for a in policy)
    if len(policy) != model.horizon:
        raise InvalidInputError(f"policy length {len(policy)} != horizon {model.horizon}")
    if any(not 0 <= a < model.num_locations for a in policy):
        raise InvalidInputError(f"policy {policy} has an invalid location")
    log_c = safe_log(model.preference_visibility)

    branches = [(1.0, belief.agent_belief, belief.object_belief)]
    per_step = []
    for action in policy:
        B = model.transition_agent[:, :, action]
        step_ig = 0.0
        step_eu = 0.0
        nxt = []
        for w, agent, obj in branches:
            agent_pred = B @ agent
            po, posts, ig, eu = _step_terms(model, agent_pred, obj, log_c)
            step_ig += w * ig
            step_eu += w * eu
            for o, post in enumerate(posts):
                if post is not None:
                    nxt.append((w * po[o], agent_pred, post))
        branches = nxt
        per_step.append((step_ig, step_eu))

    info_gain = sum(ig for ig, _ in per_step)
    eu = sum(e for _, e in per_step)
    efe = sum(-ig - e for ig, e in per_step)
    return PolicyEvaluation(policy, efe, info_gain, eu, tuple(per_step))


def evaluate_policies(model: GenerativeModel, belief: BeliefState) -> List[PolicyEvaluation]:
    """Evaluate every policy of length ``model.horizon``, in lexicographic order.

    Gives the same numbers as calling :func:`expected_free_energy` on each
    policy, but expands the whole action tree one depth at a time with
    every (prefix, outcome branch) pair held in a single array.
    """
    L, H = model.num_locations, model.horizon
    A = model.likelihood_visibility
    B = model.transition_agent
    log_c = safe_log(model.preference_visibility)

    # axes: prefix p, branch k, then the state axis
    weights = np.ones((1, 1))
    agents = belief.agent_belief[None, None, :]
    objects = belief.object_belief[None, None, :]
    igs = np.zeros((1, 0))
    eus = np.zeros((1, 0))
    for _ in range(H):
        P, K = weights.shape
        # agent_pred[p, a, k, n] = sum_c B[n, c, a] * agents[p, k, c]
        agent_pred = np.einsum("nca,pkc->pakn", B, agents)
        joint = np.einsum("oij,paki,pkj->pakoj", A, agent_pred, objects)
        po = joint.sum(axis=-1)
        live = po > 0
        post = np.where(live[..., None], joint / np.where(live, po, 1.0)[..., None], objects[:, None, :, None, :])
        prior = np.broadcast_to(objects[:, None, :, None, :], post.shape)
        terms = np.where(post > 0, post * (np.log(np.where(post > 0, post, 1.0)) - safe_log(prior)), 0.0)
        kl = terms.sum(axis=-1)
        step_ig = np.einsum("pk,pako->pa", weights, po * kl)
        step_eu = np.einsum("pk,pako,o->pa", weights, po, log_c)

        n_out = po.shape[-1]
        weights = (weights[:, None, :, None] * po).reshape(P * L, K * n_out)
        agents = np.broadcast_to(agent_pred[:, :, :, None, :], (P, L, K, n_out, L)).reshape(P * L, K * n_out, L)
        objects = post.reshape(P * L, K * n_out, -1)
        igs = np.concatenate([np.repeat(igs, L, axis=0), step_ig.reshape(P * L, 1)], axis=1)
        eus = np.concatenate([np.repeat(eus, L, axis=0), step_eu.reshape(P * L, 1)], axis=1)

    out = []
    for policy, ig_row, eu_row in zip(enumerate_policies(L, H), igs, eus):
        per_step = tuple((float(i), float(e)) for i, e in zip(ig_row, eu_row))
        efe = sum(-i - e for i, e in per_step)
        out.append(PolicyEvaluation(policy, efe, float(ig_row.sum()), float(eu_row.sum()), per_step))
    return out


def policy_posterior(evaluations: Sequence[PolicyEvaluation], precision: float = 1.0) -> np.ndarray:
    """``softmax(-G, precision)`` over the evaluated policies."""
    if len(evaluations) == 0:
        raise InvalidInputError("no policies to score")
    return softmax(-np.array([e.efe for e in evaluations]), precision)


def select_action(
    posterior,
    policies: Sequence[Sequence[int]],
    mode: Literal["argmax", "sample"] = "argmax",
    rng: np.random.Generator | int | None = None,
) -> Tuple[int, int]:
    """Pick a policy and return ``(first action, policy index)``.

    ``argmax`` breaks ties toward the lowest policy index; ``sample`` draws
    from the posterior with ``rng`` (a Generator or a seed).
    """
    post = np.asarray(posterior, dtype=float)
    if post.shape[0] != len(policies):
        raise InvalidInputError("posterior and policy list differ in length")
    if mode == "argmax":
        idx = int(np.argmax(post))
    elif mode == "sample":
        gen = rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)
        idx = int(gen.choice(post.shape[0], p=post / post.sum()))
    else:
        raise InvalidInputError(f"unknown selection mode {mode!r}")
    return int(policies[idx][0]), idx

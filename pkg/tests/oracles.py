"""Brute-force reference computations, deliberately independent of the package.

Everything here works on the flat joint state space (agent location x object
state) with explicit Python loops, never the factorized arrays the package uses.
"""

from __future__ import annotations

import math

import numpy as np


def joint_states(model):
    return [(i, j) for i in range(model.num_locations) for j in range(model.object_states)]


def obs_prob(model, loc, vis, i, j):
    """P(location=loc, visibility=vis | agent=i, object=j)."""
    return float(model.likelihood_location[loc, i]) * float(model.likelihood_visibility[vis, i, j])


def joint_bayes(model, agent_prior, object_prior, observation):
    """Exact posterior over the joint state grid, then marginalized per factor."""
    loc, vis = observation
    post = {}
    for i, j in joint_states(model):
        post[(i, j)] = agent_prior[i] * object_prior[j] * obs_prob(model, loc, vis, i, j)
    z = sum(post.values())
    agent = np.zeros(model.num_locations)
    obj = np.zeros(model.object_states)
    for (i, j), w in post.items():
        agent[i] += w / z
        obj[j] += w / z
    return agent, obj, z


def neg_log_evidence(model, agent_prior, object_prior, observation):
    _, _, z = joint_bayes(model, agent_prior, object_prior, observation)
    return -math.log(z)


def _kl(q, p):
    return sum(qi * (math.log(qi) - math.log(max(pi, 1e-16))) for qi, pi in zip(q, p) if qi > 0)


def tree_efe(model, agent_belief, object_belief, policy):
    """Expected free energy by expanding every (action, visibility) branch.

    The belief carried down each branch is a joint dict over (agent, object);
    information gain is the KL between the object marginals after and before
    seeing the outcome. Returns (G, [(info_gain, expected_utility) per step],
    list of every branch's KL so callers can check non-negativity).
    """
    L, S = model.num_locations, model.object_states
    log_c = [math.log(max(c, 1e-16)) for c in model.preference_visibility]
    start = {(i, j): agent_belief[i] * object_belief[j] for i in range(L) for j in range(S)}
    per_step = [[0.0, 0.0] for _ in policy]
    kls = []

    def move(joint, action):
        out = {}
        for (i, j), w in joint.items():
            # walk the edge only if it exists
            nxt = action if (action == i or model.adjacency[i, action]) else i
            out[(nxt, j)] = out.get((nxt, j), 0.0) + w
        return out

    def obj_marginal(joint):
        m = [0.0] * S
        for (_, j), w in joint.items():
            m[j] += w
        return m

    def expand(depth, weight, joint):
        if depth == len(policy):
            return
        pred = move(joint, policy[depth])
        prior_obj = obj_marginal(pred)
        for vis in (0, 1):
            unnorm = {(i, j): w * model.likelihood_visibility[vis, i, j] for (i, j), w in pred.items()}
            p_o = sum(unnorm.values())
            if p_o <= 0:
                continue
            post = {k: v / p_o for k, v in unnorm.items()}
            kl = _kl(obj_marginal(post), prior_obj)
            kls.append(kl)
            per_step[depth][0] += weight * p_o * kl
            per_step[depth][1] += weight * p_o * log_c[vis]
            expand(depth + 1, weight * p_o, post)

    expand(0, 1.0, start)
    G = sum(-ig - eu for ig, eu in per_step)
    return G, [tuple(x) for x in per_step], kls

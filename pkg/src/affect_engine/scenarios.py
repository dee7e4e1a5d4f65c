"""The five search scenarios and the perceive-feel-act episode loop."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from affect_engine.affect import AffectConfig, AffectSample, affect_sample
from affect_engine.environment import (
    DEFAULT_EDGES,
    DEFAULT_NUM_LOCATIONS,
    GraphWorld,
    adjacency_from_edges,
    graph_distances,
    is_connected,
)
from affect_engine.errors import AffectEngineError, ConfigError
from affect_engine.inference import (
    VISIBLE,
    BeliefState,
    FreeEnergyReport,
    GenerativeModel,
    build_model,
    enumerate_policies,
    evaluate_policies,
    policy_posterior,
    predict,
    predictive_observation,
    select_action,
    update_beliefs,
    variational_free_energy,
)

log = logging.getLogger(__name__)

PRIOR_KINDS = ("uniform", "correct", "incorrect", "maybe_here", "definitely_here")

# scenario id -> (object present, prior kind)
SCENARIO_TABLE = {
    1: (True, "uniform"),
    2: (True, "correct"),
    3: (True, "incorrect"),
    4: (False, "maybe_here"),
    5: (False, "definitely_here"),
}


@dataclass(frozen=True)
class ScenarioConfig:
    """One episode's settings. The agent always starts at location 0.

    ``object_true_location`` defaults to the highest-index neighbour of
    location 0 when the object is present. ``incorrect_location`` defaults to
    the location farthest from 0 other than the true one.
    """

    scenario_id: Union[int, str] = "custom"
    num_locations: int = DEFAULT_NUM_LOCATIONS
    edges: Tuple[Tuple[int, int], ...] = DEFAULT_EDGES
    object_present: bool = True
    object_true_location: Optional[int] = None
    prior_kind: str = "uniform"
    prior_concentration: float = 0.9
    incorrect_location: Optional[int] = None
    p: float = 0.95
    preferences: Tuple[float, float] = (0.99, 0.01)
    horizon: int = 3
    policy_precision: float = 1.0
    action_selection: str = "argmax"
    neutral_radius: float = 0.1
    max_steps: int = 40
    seed: int = 0
    stop_on_found: bool = False

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(tuple(int(x) for x in e) for e in self.edges))
        object.__setattr__(self, "preferences", tuple(float(x) for x in self.preferences))
        self.validate()

    @classmethod
    def for_scenario(cls, scenario_id: int, **overrides) -> "ScenarioConfig":
        if scenario_id not in SCENARIO_TABLE:
            raise ConfigError(f"scenario_id must be 1..5 or 'custom', got {scenario_id!r}")
        present, kind = SCENARIO_TABLE[scenario_id]
        # scenario 2 is a straight fetch; the rest run on past the first sighting
        params = dict(scenario_id=scenario_id, object_present=present, prior_kind=kind, stop_on_found=scenario_id == 2)
        params.update(overrides)
        return cls(**params)

    @property
    def adjacency(self) -> np.ndarray:
        return adjacency_from_edges(self.num_locations, self.edges)

    @property
    def object_location(self) -> Optional[int]:
        """True object location with the default resolved; None when absent."""
        if not self.object_present:
            return None
        if self.object_true_location is not None:
            return self.object_true_location
        return int(np.flatnonzero(self.adjacency[0]).max())

    @property
    def favored_location(self) -> Optional[int]:
        """Location carrying the concentrated prior mass, if any."""
        if self.prior_kind == "correct":
            return self.object_location
        if self.prior_kind != "incorrect":
            return None
        if self.incorrect_location is not None:
            return self.incorrect_location
        from_start = graph_distances(self.adjacency, 0)
        truth = self.object_location
        from_obj = graph_distances(self.adjacency, truth) if truth is not None else np.zeros_like(from_start)
        candidates = [i for i in range(self.num_locations) if i != truth]
        # farthest from the start, then farthest from the object, then lowest index
        return min(candidates, key=lambda i: (-from_start[i], -from_obj[i], i))

    def validate(self) -> None:
        sid = self.scenario_id
        if sid != "custom" and sid not in SCENARIO_TABLE:
            raise ConfigError(f"scenario_id must be 1..5 or 'custom', got {sid!r}")
        if sid in SCENARIO_TABLE:
            present, kind = SCENARIO_TABLE[sid]
            if self.object_present != present:
                state = "present" if present else "absent"
                raise ConfigError(f"scenario {sid} requires the object to be {state}")
            if self.prior_kind != kind:
                raise ConfigError(f"scenario {sid} requires prior_kind {kind!r}")
        if self.prior_kind not in PRIOR_KINDS:
            raise ConfigError(f"prior_kind must be one of {PRIOR_KINDS}, got {self.prior_kind!r}")
        if self.num_locations < 2:
            raise ConfigError("need at least two locations")
        adj = self.adjacency
        if not is_connected(adj):
            raise ConfigError("graph is not connected: every location must be reachable from 0")
        L = self.num_locations
        if self.object_true_location is not None:
            if not self.object_present:
                raise ConfigError("object_true_location given but object_present is false")
            if not 0 <= self.object_true_location < L:
                raise ConfigError(f"object_true_location {self.object_true_location} out of range")
        if self.prior_kind == "correct" and not self.object_present:
            raise ConfigError("a 'correct' prior needs the object to be present")
        if self.incorrect_location is not None:
            if self.prior_kind != "incorrect":
                raise ConfigError("incorrect_location only applies to prior_kind 'incorrect'")
            if not 0 <= self.incorrect_location < L:
                raise ConfigError(f"incorrect_location {self.incorrect_location} out of range")
            if self.incorrect_location == self.object_location:
                raise ConfigError("incorrect_location coincides with the true object location")
        if not 0 < self.prior_concentration < 1:
            raise ConfigError("prior_concentration must lie in (0, 1)")
        if not 0 < self.p <= 1:
            raise ConfigError("p must lie in (0, 1]")
        prefs = self.preferences
        if len(prefs) != 2 or min(prefs) < 0 or abs(sum(prefs) - 1) > 1e-9 or prefs[0] == prefs[1]:
            raise ConfigError("preferences must be a non-uniform (visible, invisible) distribution")
        if self.horizon < 1:
            raise ConfigError("horizon must be at least 1")
        if L ** self.horizon > 100_000:
            raise ConfigError(f"{L}^{self.horizon} policies is too many to enumerate")
        if not self.policy_precision > 0:
            raise ConfigError("policy_precision must be positive")
        if self.action_selection not in ("argmax", "sample"):
            raise ConfigError("action_selection must be 'argmax' or 'sample'")
        if not 0 < self.neutral_radius < 1:
            raise ConfigError("neutral_radius must lie in (0, 1)")
        if self.max_steps < 1:
            raise ConfigError("max_steps must be at least 1")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["edges"] = [list(e) for e in self.edges]
        d["preferences"] = list(self.preferences)
        return d


CONFIG_FIELDS = tuple(f.name for f in fields(ScenarioConfig))


def builtin_scenarios(**overrides) -> List[ScenarioConfig]:
    """The five object-search scenarios with their stock settings.

    Scenario 2 stops at the first sighting; the others keep going so the
    post-discovery (or never-discovered) phase is visible.
    """
    return [ScenarioConfig.for_scenario(sid, **overrides) for sid in SCENARIO_TABLE]


def object_prior(config: ScenarioConfig) -> np.ndarray:
    L = config.num_locations
    kind = config.prior_kind
    if kind in ("uniform", "definitely_here"):
        return np.full(L, 1.0 / L)
    if kind == "maybe_here":
        return np.full(L + 1, 1.0 / (L + 1))
    peak = config.favored_location
    prior = np.full(L, (1.0 - config.prior_concentration) / (L - 1))
    prior[peak] = config.prior_concentration
    return prior


def build_scenario(config: ScenarioConfig, rng: np.random.Generator | None = None) -> Tuple[GenerativeModel, GraphWorld]:
    config.validate()
    adj = config.adjacency
    model = build_model(
        adj,
        config.p,
        prior_object=object_prior(config),
        not_here=config.prior_kind == "maybe_here",
        preferences=config.preferences,
        horizon=config.horizon,
        policy_precision=config.policy_precision,
    )
    world = GraphWorld(
        adjacency=adj,
        object_location=config.object_location,
        visibility_prob=config.p,
        agent_location=0,
        rng=rng if rng is not None else np.random.default_rng(config.seed),
    )
    return model, world


@dataclass(frozen=True)
class TrajectoryStep:
    t: int
    agent_location: int
    action: int
    observation: Tuple[int, int]
    object_belief: np.ndarray
    free_energy: FreeEnergyReport
    selected_policy_G: float
    predictive: np.ndarray
    affect: AffectSample

    @property
    def visible(self) -> bool:
        return self.observation[1] == VISIBLE


@dataclass
class TrajectoryLog:
    config: ScenarioConfig
    steps: List[TrajectoryStep] = field(default_factory=list)
    outcome: str = "exhausted"

    @property
    def labels(self) -> List[str]:
        return [s.affect.label for s in self.steps]

    def first_visible(self) -> Optional[int]:
        for s in self.steps:
            if s.visible:
                return s.t
        return None


def run_episode(model: GenerativeModel, world: GraphWorld, config: ScenarioConfig) -> TrajectoryLog:
    """Replan every step with the full policy tree, act, observe and feel."""
    if world.num_locations != model.num_locations:
        raise ConfigError("model and world disagree on the number of locations")
    affect_cfg = AffectConfig.for_model(model.preference_visibility, model.object_states, config.neutral_radius)
    policies = enumerate_policies(model.num_locations, model.horizon)
    # policy sampling has its own stream so it never perturbs observation noise
    select_rng = np.random.default_rng([config.seed, 1])

    belief = BeliefState(np.eye(model.num_locations)[world.agent_location], model.prior_object)
    episode = TrajectoryLog(config=config)
    for t in range(config.max_steps):
        evaluations = evaluate_policies(model, belief)
        q_pi = policy_posterior(evaluations, model.policy_precision)
        action, idx = select_action(q_pi, policies, config.action_selection, select_rng)

        predicted = predict(model, belief, action)
        predictive = predictive_observation(model, predicted)

        world.step(action)
        observation = world.observe()
        posterior = update_beliefs(model, predicted, observation)
        fe = variational_free_energy(model, predicted, posterior, observation)
        affect = affect_sample(observation[1], predictive, model.preference_visibility, posterior, affect_cfg)

        episode.steps.append(
            TrajectoryStep(
                t=t,
                agent_location=world.agent_location,
                action=action,
                observation=observation,
                object_belief=posterior.object_belief,
                free_energy=fe,
                selected_policy_G=evaluations[idx].efe,
                predictive=predictive,
                affect=affect,
            )
        )
        log.debug("t=%d loc=%d obs=%s label=%s", t, world.agent_location, observation, affect.label)
        belief = posterior
        if observation[1] == VISIBLE:
            episode.outcome = "found"
            if config.stop_on_found:
                break
    return episode


def run_config(config: ScenarioConfig) -> TrajectoryLog:
    model, world = build_scenario(config)
    return run_episode(model, world, config)


class SuiteError(AffectEngineError):
    """Raised after a suite finishes when some episodes failed.

    ``results`` holds a log or the exception for every config, in input order.
    """

    def __init__(self, results: list):
        self.results = results
        failed = [i for i, r in enumerate(results) if isinstance(r, BaseException)]
        super().__init__(f"{len(failed)} of {len(results)} episodes failed (indices {failed})")


def run_suite(configs: Sequence[ScenarioConfig], workers: int = 1) -> List[TrajectoryLog]:
    """Run every config; output order matches input order.

    Each episode seeds its own generators, so results do not depend on
    ``workers``. A failing episode does not stop the others.
    """
    configs = list(configs)
    if not configs:
        raise ConfigError("run_suite needs at least one config")
    results: list = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(configs), os.cpu_count() or 1)) as pool:
            futures = [pool.submit(run_config, c) for c in configs]
            for fut in futures:
                try:
                    results.append(fut.result())
                except Exception as exc:  # noqa: BLE001 - collected and re-raised below
                    results.append(exc)
    else:
        for c in configs:
            try:
                results.append(run_config(c))
            except Exception as exc:  # noqa: BLE001
                results.append(exc)
    if any(isinstance(r, BaseException) for r in results):
        raise SuiteError(results)
    return results


def with_overrides(config: ScenarioConfig, **changes) -> ScenarioConfig:
    """``dataclasses.replace`` that ignores ``None`` values."""
    return replace(config, **{k: v for k, v in changes.items() if v is not None})

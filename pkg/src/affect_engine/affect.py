"""Valence, arousal and their circumplex reading.

Valence is the surprise in utility (observed log-preference minus its
expectation under the predicted outcome distribution). Arousal is the
entropy of the posterior belief. Both are squashed onto [-1, 1] and read
off as an angle and radius on the circumplex.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from affect_engine.errors import InvalidInputError
from affect_engine.inference.categorical import LOG_FLOOR, entropy, safe_log
from affect_engine.inference.model import BeliefState

EMOTION_LABELS = (
    "happy",
    "excited",
    "alert",
    "angry",
    "sad",
    "depressed",
    "calm",
    "relaxed",
    "neutral",
)

# Sector names counter-clockwise from the positive valence axis, 45 degrees
# each, the first one centred on 0 degrees.
SECTORS = ("happy", "excited", "alert", "angry", "sad", "depressed", "calm", "relaxed")
SECTOR_WIDTH = 45.0


@dataclass(frozen=True)
class AffectConfig:
    valence_scale: float
    max_entropy: float
    neutral_radius: float = 0.1

    def __post_init__(self):
        if not self.valence_scale > 0:
            raise InvalidInputError("valence_scale must be positive")
        if not self.max_entropy > 0:
            raise InvalidInputError("max_entropy must be positive")
        if not 0 < self.neutral_radius < 1:
            raise InvalidInputError("neutral_radius must lie in (0, 1)")

    @classmethod
    def for_model(cls, preferences, object_states: int, neutral_radius: float = 0.1) -> "AffectConfig":
        """Scales derived from the preference vector and the object state count.

        ``valence_scale`` is the log-ratio between the most and least preferred
        outcome, which bounds ``|U - EU|``; ``max_entropy`` is ``ln(object_states)``.
        """
        logc = safe_log(preferences)
        scale = abs(float(logc.min() - logc.max()))
        if object_states < 2:
            raise InvalidInputError("need at least two object states for a non-trivial arousal scale")
        return cls(valence_scale=scale, max_entropy=math.log(object_states), neutral_radius=neutral_radius)


@dataclass(frozen=True)
class AffectSample:
    utility: float
    expected_utility: float
    valence_raw: float
    arousal_raw: float
    valence_norm: float
    arousal_norm: float
    radius: float
    angle_deg: float
    label: str
    utility_floored: bool = False

    def as_dict(self) -> dict:
        return asdict(self)


def utility(outcome: int, preferences) -> float:
    """Log-preference of the observed outcome, floored at ``log(1e-16)``."""
    c = np.asarray(preferences, dtype=float)
    if not 0 <= outcome < c.shape[0]:
        raise InvalidInputError(f"outcome {outcome} outside the preference vector")
    return float(safe_log(c[outcome]))


def expected_utility(predictive, preferences) -> float:
    q = np.asarray(predictive, dtype=float)
    c = np.asarray(preferences, dtype=float)
    if q.shape != c.shape:
        raise InvalidInputError("predictive and preference vectors differ in shape")
    return float(q @ safe_log(c))


def valence(u: float, eu: float) -> float:
    if not (math.isfinite(u) and math.isfinite(eu)):
        raise InvalidInputError("utility terms must be finite")
    return u - eu


def arousal(posterior: BeliefState) -> float:
    """Entropy of the posterior, summed over both factors (nats)."""
    return entropy(posterior.agent_belief) + entropy(posterior.object_belief)


def normalize_affect(valence_raw: float, arousal_raw: float, config: AffectConfig) -> tuple[float, float]:
    """Map raw valence and arousal onto [-1, 1].

    Arousal is shifted so that half the maximal entropy sits on the neutral
    line: certainty reads as -1, maximal uncertainty as +1.
    """
    if arousal_raw < 0:
        raise InvalidInputError("arousal must be non-negative")
    v = float(np.clip(valence_raw / config.valence_scale, -1.0, 1.0))
    a = float(np.clip(2.0 * arousal_raw / config.max_entropy - 1.0, -1.0, 1.0))
    return v, a


def to_polar(valence_norm: float, arousal_norm: float) -> tuple[float, float]:
    """(radius, angle in degrees within [0, 360)); the origin has angle 0."""
    r = math.hypot(valence_norm, arousal_norm)
    if r == 0.0:
        return 0.0, 0.0
    theta = math.degrees(math.atan2(arousal_norm, valence_norm)) % 360.0
    # -0.0 and rounding can land exactly on 360
    if theta >= 360.0:
        theta -= 360.0
    return r, theta


def label_emotion(radius: float, angle_deg: float, config: AffectConfig | None = None) -> str:
    neutral = config.neutral_radius if config is not None else 0.1
    if radius < 0:
        raise InvalidInputError("radius must be non-negative")
    if radius < neutral:
        return "neutral"
    shifted = (angle_deg + SECTOR_WIDTH / 2) % 360.0
    return SECTORS[int(shifted // SECTOR_WIDTH) % len(SECTORS)]


def affect_sample(
    outcome: int,
    predictive,
    preferences,
    posterior: BeliefState,
    config: AffectConfig,
) -> AffectSample:
    """Full affect readout for one observed visibility outcome."""
    u = utility(outcome, preferences)
    eu = expected_utility(predictive, preferences)
    v = valence(u, eu)
    a = arousal(posterior)
    vn, an = normalize_affect(v, a, config)
    r, theta = to_polar(vn, an)
    floored = float(np.asarray(preferences, dtype=float)[outcome]) < LOG_FLOOR
    return AffectSample(
        utility=u,
        expected_utility=eu,
        valence_raw=v,
        arousal_raw=a,
        valence_norm=vn,
        arousal_norm=an,
        radius=r,
        angle_deg=theta,
        label=label_emotion(r, theta, config),
        utility_floored=floored,
    )

"""Discrete active-inference agent with a circumplex (valence, arousal) readout."""

from affect_engine.affect import AffectConfig, AffectSample, EMOTION_LABELS
from affect_engine.environment import GraphWorld
from affect_engine.inference import (
    BeliefState,
    FreeEnergyReport,
    GenerativeModel,
    PolicyEvaluation,
)
from affect_engine.scenarios import ScenarioConfig, TrajectoryLog, run_episode, run_suite

__version__ = "0.1.0"

__all__ = [
    "AffectConfig",
    "AffectSample",
    "BeliefState",
    "EMOTION_LABELS",
    "FreeEnergyReport",
    "GenerativeModel",
    "GraphWorld",
    "PolicyEvaluation",
    "ScenarioConfig",
    "TrajectoryLog",
    "run_episode",
    "run_suite",
]

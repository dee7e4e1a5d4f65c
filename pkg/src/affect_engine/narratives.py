"""Qualitative checks of emotion trajectories against the scenario narratives.

Each check takes one or two trajectory logs and returns a :class:`Verdict`
with a short human-readable reason, so callers can print or assert on it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from affect_engine.environment import graph_distances
from affect_engine.inference import INVISIBLE
from affect_engine.scenarios import TrajectoryLog

CALMISH = ("calm", "neutral")
STRONG_NEGATIVE = -0.25


@dataclass(frozen=True)
class Verdict:
    ok: bool
    reason: str

    def __bool__(self) -> bool:
        return self.ok


def _fail(reason: str) -> Verdict:
    return Verdict(False, reason)


def check_scenario_2(log: TrajectoryLog) -> Verdict:
    """Calm throughout and the object found within distance + 1 steps."""
    cfg = log.config
    bad = [(s.t, s.affect.label) for s in log.steps if s.affect.label not in CALMISH]
    if bad:
        return _fail(f"non-calm steps {bad}")
    found = log.first_visible()
    if found is None:
        return _fail("object never found")
    budget = int(graph_distances(cfg.adjacency, 0)[cfg.object_location]) + 1
    if found + 1 > budget:
        return _fail(f"found after {found + 1} steps, budget {budget}")
    return Verdict(True, f"calm for {len(log.steps)} steps, found in {found + 1} (budget {budget})")


def check_scenario_1(log: TrajectoryLog) -> Verdict:
    """Alert at the start, calm (or neutral) at the end, arousal lower at the end."""
    if not log.steps:
        return _fail("empty log")
    first, last = log.steps[0].affect, log.steps[-1].affect
    if first.label != "alert":
        return _fail(f"first label {first.label}")
    if last.label not in CALMISH:
        return _fail(f"final label {last.label}")
    if not last.arousal_raw < first.arousal_raw:
        return _fail(f"arousal {first.arousal_raw:.4f} -> {last.arousal_raw:.4f}")
    return Verdict(True, f"alert -> {last.label}, arousal {first.arousal_raw:.3f} -> {last.arousal_raw:.3f}")


def first_miss_at(log: TrajectoryLog, location: int) -> Optional[int]:
    for s in log.steps:
        if s.agent_location == location and s.observation[1] == INVISIBLE:
            return s.t
    return None


def check_scenario_3(log: TrajectoryLog) -> Verdict:
    """Calm start, anger right after the favoured location comes up empty,
    waning arousal while searching on, positive valence after discovery."""
    steps = log.steps
    if not steps:
        return _fail("empty log")
    if steps[0].affect.label not in CALMISH:
        return _fail(f"step 0 label {steps[0].affect.label}")
    miss = first_miss_at(log, log.config.favored_location)
    if miss is None or miss + 1 >= len(steps):
        return _fail("no miss at the favoured location followed by another step")
    angry = steps[miss + 1].affect
    if not (angry.label == "angry" and angry.valence_norm < 0 and angry.arousal_norm > 0):
        return _fail(
            f"step {miss + 1} after the miss is {angry.label} "
            f"(v={angry.valence_norm:.3f}, a={angry.arousal_norm:.3f})"
        )
    found = log.first_visible()
    if found is None or found <= miss + 1:
        return _fail("object not found after the anger step")
    if found + 1 >= len(steps):
        return _fail("no step after discovery")
    after = steps[found + 1].affect
    if not after.valence_norm > 0:
        return _fail(f"step {found + 1} after discovery has valence {after.valence_norm:.3f}")
    arousal = [s.affect.arousal_raw for s in steps[miss + 1 : found]]
    rises = [miss + 1 + i + 1 for i in range(len(arousal) - 1) if not arousal[i + 1] < arousal[i]]
    if rises:
        return _fail(f"arousal does not fall at steps {rises}")
    return Verdict(
        True,
        f"miss at step {miss}, angry at {miss + 1}, arousal falls over {len(arousal)} steps, found at {found}",
    )


def strong_negative_count(log: TrajectoryLog, threshold: float = STRONG_NEGATIVE) -> int:
    return sum(1 for s in log.steps if s.affect.valence_norm < threshold)


def check_scenarios_4_vs_5(log4: TrajectoryLog, log5: TrajectoryLog) -> Verdict:
    """A 'maybe here' agent ends less aroused and spends less time strongly negative."""
    if not (log4.steps and log5.steps):
        return _fail("empty log")
    a4, a5 = log4.steps[-1].affect.arousal_raw, log5.steps[-1].affect.arousal_raw
    n4, n5 = strong_negative_count(log4), strong_negative_count(log5)
    if not a4 < a5:
        return _fail(f"final arousal {a4:.4f} (4) vs {a5:.4f} (5)")
    if not n4 < n5:
        return _fail(f"strongly negative steps {n4} (4) vs {n5} (5)")
    return Verdict(True, f"final arousal {a4:.3f} < {a5:.3f}; negative steps {n4} < {n5}")


def check_scenario_5(log: TrajectoryLog, after: int = 10) -> Verdict:
    """Anger and depression both recur late and the agent swings between them."""
    labels = log.labels
    late = labels[after + 1 :]
    if "angry" not in late or "depressed" not in late:
        return _fail(f"late labels lack anger or depression: {sorted(set(late))}")
    swings = sum(
        1 for a, b in zip(labels, labels[1:]) if {a, b} == {"angry", "depressed"}
    )
    if swings == 0:
        return _fail("no direct angry <-> depressed transition")
    return Verdict(True, f"{late.count('angry')} angry and {late.count('depressed')} depressed late steps, {swings} swings")

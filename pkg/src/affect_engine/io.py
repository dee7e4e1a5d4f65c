"""Config files in, trajectory tables and logs out."""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field, replace
from io import StringIO
from pathlib import Path
from typing import Any, List, Sequence, Union

from affect_engine.errors import ConfigError
from affect_engine.inference import VISIBILITY_OUTCOMES
from affect_engine.scenarios import CONFIG_FIELDS, SCENARIO_TABLE, ScenarioConfig, TrajectoryLog

CSV_HEADER = (
    "t",
    "agent_loc",
    "action",
    "obs_visibility",
    "valence_raw",
    "arousal_raw",
    "valence_norm",
    "arousal_norm",
    "radius",
    "angle_deg",
    "label",
    "free_energy",
    "selected_G",
)
CSV_REAL_FIELDS = (
    "valence_raw",
    "arousal_raw",
    "valence_norm",
    "arousal_norm",
    "radius",
    "angle_deg",
    "free_energy",
    "selected_G",
)

_INT_FIELDS = {"num_locations", "horizon", "max_steps", "seed"}
_OPT_INT_FIELDS = {"object_true_location", "incorrect_location"}
_FLOAT_FIELDS = {"prior_concentration", "p", "policy_precision", "neutral_radius"}
_BOOL_FIELDS = {"object_present", "stop_on_found"}
_STR_FIELDS = {"prior_kind", "action_selection"}


class ConfigParseError(ConfigError):
    """Malformed config text; carries the offending line and column."""

    def __init__(self, path, message: str, line: int | None = None, column: int | None = None):
        self.path, self.line, self.column = str(path), line, column
        where = f"{path}:{line}:{column}" if line is not None else str(path)
        super().__init__(f"{where}: {message}")


@dataclass
class OutputBundle:
    csv_path: Path | None = None
    json_path: Path | None = None
    svg_path: Path | None = None
    png_path: Path | None = None
    emitted: List[Path] = field(default_factory=list)


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def _coerce(name: str, value: Any, where: str):
    if name == "scenario_id":
        if value == "custom" or (_is_int(value) and value in SCENARIO_TABLE):
            return value
        raise ConfigError(f"{where}: scenario_id must be 1..5 or \"custom\", got {value!r}")
    if name in _INT_FIELDS:
        if not _is_int(value):
            raise ConfigError(f"{where}: {name} must be an integer, got {value!r}")
        return value
    if name in _OPT_INT_FIELDS:
        if value is not None and not _is_int(value):
            raise ConfigError(f"{where}: {name} must be an integer or null, got {value!r}")
        return value
    if name in _FLOAT_FIELDS:
        if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
            raise ConfigError(f"{where}: {name} must be a finite number, got {value!r}")
        return float(value)
    if name in _BOOL_FIELDS:
        if not isinstance(value, bool):
            raise ConfigError(f"{where}: {name} must be true or false, got {value!r}")
        return value
    if name in _STR_FIELDS:
        if not isinstance(value, str):
            raise ConfigError(f"{where}: {name} must be a string, got {value!r}")
        return value
    if name == "edges":
        if not isinstance(value, list) or not all(
            isinstance(e, list) and len(e) == 2 and all(_is_int(x) for x in e) for e in value
        ):
            raise ConfigError(f"{where}: edges must be a list of [i, j] integer pairs")
        return tuple(tuple(e) for e in value)
    if name == "preferences":
        if not isinstance(value, list) or len(value) != 2 or not all(
            isinstance(x, (int, float)) and not isinstance(x, bool) for x in value
        ):
            raise ConfigError(f"{where}: preferences must be [p_visible, p_invisible]")
        return tuple(float(x) for x in value)
    raise ConfigError(f"{where}: unknown key {name!r}")


def config_from_dict(raw: dict, where: str = "config") -> ScenarioConfig:
    """Build a validated config from parsed JSON, filling defaults.

    A numbered ``scenario_id`` implies its object presence and prior kind
    unless they are given explicitly (in which case they must agree).
    The returned config has its default locations resolved.
    """
    if not isinstance(raw, dict):
        raise ConfigError(f"{where}: expected an object, got {type(raw).__name__}")
    unknown = sorted(set(raw) - set(CONFIG_FIELDS))
    if unknown:
        raise ConfigError(f"{where}: unknown key(s) {unknown}; allowed: {sorted(CONFIG_FIELDS)}")
    values = {k: _coerce(k, v, where) for k, v in raw.items()}
    sid = values.get("scenario_id", "custom")
    if sid in SCENARIO_TABLE:
        present, kind = SCENARIO_TABLE[sid]
        values.setdefault("object_present", present)
        values.setdefault("prior_kind", kind)
        values.setdefault("stop_on_found", sid == 2)
    try:
        cfg = ScenarioConfig(**values)
    except ConfigError as exc:
        raise ConfigError(f"{where}: {exc}") from None
    return resolve(cfg)


def resolve(config: ScenarioConfig) -> ScenarioConfig:
    """Pin implicit defaults (object and incorrect-prior locations) to values."""
    changes = {}
    if config.object_present and config.object_true_location is None:
        changes["object_true_location"] = config.object_location
    if config.prior_kind == "incorrect" and config.incorrect_location is None:
        changes["incorrect_location"] = config.favored_location
    return replace(config, **changes) if changes else config


def parse_config_text(text: str, source: str = "<string>") -> List[ScenarioConfig]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigParseError(source, exc.msg, exc.lineno, exc.colno) from None
    if isinstance(data, dict) and "scenarios" in data and set(data) == {"scenarios"}:
        data = data["scenarios"]
    entries = data if isinstance(data, list) else [data]
    if not entries:
        raise ConfigError(f"{source}: no scenarios defined")
    return [config_from_dict(e, f"{source}[{i}]") for i, e in enumerate(entries)]


def parse_config(path: Union[str, Path]) -> List[ScenarioConfig]:
    """Read a JSON config: a single object, a list, or ``{"scenarios": [...]}``."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: {exc.strerror or exc}") from None
    return parse_config_text(text, str(path))


def configs_to_json(configs: Sequence[ScenarioConfig]) -> str:
    return json.dumps([resolve(c).to_dict() for c in configs], indent=2, sort_keys=True) + "\n"


def _fmt(x: float) -> str:
    # -0.000000 and 0.000000 must not differ between runs
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def csv_rows(log: TrajectoryLog) -> List[List[str]]:
    rows = []
    for s in log.steps:
        a = s.affect
        rows.append(
            [
                str(s.t),
                str(s.agent_location),
                str(s.action),
                VISIBILITY_OUTCOMES[s.observation[1]],
                _fmt(a.valence_raw),
                _fmt(a.arousal_raw),
                _fmt(a.valence_norm),
                _fmt(a.arousal_norm),
                _fmt(a.radius),
                _fmt(a.angle_deg),
                a.label,
                _fmt(s.free_energy.total),
                _fmt(s.selected_policy_G),
            ]
        )
    return rows


def _write(path: Path, text: str) -> Path:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def emit_csv(log: TrajectoryLog, path: Union[str, Path]) -> Path:
    """One header row plus one row per step, reals to 6 decimals."""
    buf = StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    writer.writerows(csv_rows(log))
    return _write(Path(path), buf.getvalue())


def read_csv(path: Union[str, Path]) -> List[dict]:
    """Parse an emitted trajectory table back into typed dicts."""
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if tuple(reader.fieldnames or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {reader.fieldnames}")
        out = []
        for row in reader:
            rec: dict = dict(row)
            for k in ("t", "agent_loc", "action"):
                rec[k] = int(row[k])
            for k in CSV_REAL_FIELDS:
                rec[k] = float(row[k])
            out.append(rec)
    return out


def log_to_dict(log: TrajectoryLog) -> dict:
    return {
        "config": resolve(log.config).to_dict(),
        "outcome": log.outcome,
        "steps": [
            {
                "t": s.t,
                "agent_location": s.agent_location,
                "action": s.action,
                "observation": {
                    "location": s.observation[0],
                    "visibility": VISIBILITY_OUTCOMES[s.observation[1]],
                },
                "object_belief": [float(x) for x in s.object_belief],
                "predictive_visibility": [float(x) for x in s.predictive],
                "free_energy": s.free_energy.as_dict(),
                "selected_policy_G": s.selected_policy_G,
                "affect": s.affect.as_dict(),
            }
            for s in log.steps
        ],
    }


def emit_json(log: TrajectoryLog, path: Union[str, Path]) -> Path:
    text = json.dumps(log_to_dict(log), indent=2, sort_keys=True) + "\n"
    return _write(Path(path), text)

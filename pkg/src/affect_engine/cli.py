"""``affect-engine`` command line: run, scenarios, validate."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from affect_engine.errors import AffectEngineError
from affect_engine.io import (
    OutputBundle,
    configs_to_json,
    emit_csv,
    emit_json,
    parse_config,
    resolve,
)
from affect_engine.scenarios import (
    ScenarioConfig,
    SuiteError,
    TrajectoryLog,
    builtin_scenarios,
    run_suite,
    with_overrides,
)
from affect_engine.svg import emit_circumplex_svg

FORMATS = ("csv", "json", "svg", "png")
DEFAULT_FORMATS = "csv,json,svg,png"
SEED_ENV = "AFFECT_ENGINE_SEED"


def _formats(text: str) -> List[str]:
    fmts = [f.strip().lower() for f in text.split(",") if f.strip()]
    bad = [f for f in fmts if f not in FORMATS]
    if bad or not fmts:
        raise argparse.ArgumentTypeError(f"formats must be a comma list of {','.join(FORMATS)}; got {text!r}")
    return fmts


def _scenario(text: str) -> int:
    value = int(text)
    if value not in range(1, 6):
        raise argparse.ArgumentTypeError("scenario must be 1..5")
    return value


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="affect-engine",
        description="Active-inference search agent with a valence/arousal circumplex readout.",
    )
    ap.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = ap.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run episodes and write trajectory outputs")
    run.add_argument("--config", type=Path, help="JSON config (default: the five built-in scenarios)")
    run.add_argument("--scenario", type=_scenario, help="only run configs with this scenario id")
    run.add_argument("--seed", type=int, help="override every config seed")
    run.add_argument("--out-dir", type=Path, default=Path("out"))
    run.add_argument("--format", type=_formats, default=_formats(DEFAULT_FORMATS), help=f"default {DEFAULT_FORMATS}")
    run.add_argument("--horizon", type=int)
    run.add_argument("--precision", type=float, help="policy precision (softmax inverse temperature)")
    run.add_argument("--max-steps", type=int)
    run.add_argument("--deterministic", action="store_true", help="force argmax action selection")
    run.add_argument("--workers", type=int, default=1, help="parallel episodes")

    sub.add_parser("scenarios", help="print the built-in scenario configs as JSON")

    val = sub.add_parser("validate", help="check a config file without running it")
    val.add_argument("--config", type=Path, required=True)
    return ap


def select_configs(args: argparse.Namespace, environ=os.environ) -> List[ScenarioConfig]:
    configs = parse_config(args.config) if args.config is not None else [resolve(c) for c in builtin_scenarios()]
    if args.scenario is not None:
        configs = [c for c in configs if c.scenario_id == args.scenario]
        if not configs:
            raise AffectEngineError(f"no config with scenario_id {args.scenario}")
    seed = args.seed
    if seed is None and environ.get(SEED_ENV):
        try:
            seed = int(environ[SEED_ENV])
        except ValueError:
            raise AffectEngineError(f"{SEED_ENV} must be an integer, got {environ[SEED_ENV]!r}") from None
    return [
        with_overrides(
            c,
            seed=seed,
            horizon=args.horizon,
            policy_precision=args.precision,
            max_steps=args.max_steps,
            action_selection="argmax" if args.deterministic else None,
        )
        for c in configs
    ]


def output_stem(index: int, config: ScenarioConfig) -> str:
    sid = config.scenario_id
    name = f"scenario{sid}" if sid != "custom" else "custom"
    return f"{index:02d}_{name}_seed{config.seed}"


def emit_outputs(trajectory: TrajectoryLog, out_dir: Path, stem: str, formats: Sequence[str]) -> OutputBundle:
    bundle = OutputBundle()
    if "csv" in formats:
        bundle.csv_path = emit_csv(trajectory, out_dir / f"{stem}.csv")
        bundle.emitted.append(bundle.csv_path)
    if "json" in formats:
        bundle.json_path = emit_json(trajectory, out_dir / f"{stem}.json")
        bundle.emitted.append(bundle.json_path)
    if "svg" in formats:
        bundle.svg_path = emit_circumplex_svg(trajectory, out_dir / f"{stem}.svg")
        bundle.emitted.append(bundle.svg_path)
    if "png" in formats:
        from affect_engine.plotting import save_report_figure

        bundle.png_path = save_report_figure(trajectory, out_dir / f"{stem}.png")
        bundle.emitted.append(bundle.png_path)
    return bundle


def cmd_run(args: argparse.Namespace) -> int:
    configs = select_configs(args)
    out_dir: Path = args.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "resolved_config.json").write_text(configs_to_json(configs), encoding="utf-8")
    status = 0
    try:
        logs = run_suite(configs, workers=args.workers)
    except SuiteError as exc:
        logs = exc.results
        status = 1
    for i, (cfg, lg) in enumerate(zip(configs, logs)):
        if isinstance(lg, BaseException):
            print(f"scenario {cfg.scenario_id} seed {cfg.seed}: failed: {lg}", file=sys.stderr)
            continue
        bundle = emit_outputs(lg, out_dir, output_stem(i, cfg), args.format)
        labels = " ".join(lg.labels)
        found = lg.first_visible()
        status_text = f"found at step {found}" if found is not None else "not found"
        print(f"scenario {cfg.scenario_id} seed {cfg.seed}: {status_text}, {len(lg.steps)} steps")
        print(f"  labels: {labels}")
        for path in bundle.emitted:
            print(f"  wrote {path}")
    return status


def cmd_scenarios(args: argparse.Namespace) -> int:
    sys.stdout.write(configs_to_json(builtin_scenarios()))
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    configs = parse_config(args.config)
    for i, c in enumerate(configs):
        print(f"[{i}] scenario {c.scenario_id}: ok ({c.prior_kind}, object {'present' if c.object_present else 'absent'})")
    return 0


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    handler = {"run": cmd_run, "scenarios": cmd_scenarios, "validate": cmd_validate}[args.command]
    try:
        return handler(args)
    except (AffectEngineError, OSError) as exc:
        print(f"affect-engine: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

"""Dependency-free SVG rendering of a trajectory on the circumplex."""

from __future__ import annotations

import math
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from affect_engine.affect import SECTOR_WIDTH, SECTORS
from affect_engine.scenarios import TrajectoryLog

SIZE = 480
CENTER = SIZE / 2
RADIUS = 180.0  # pixels per unit of normalized valence/arousal
LABEL_RADIUS = 1.16


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def to_canvas(valence: float, arousal: float) -> Tuple[float, float]:
    """Map a point of [-1, 1]^2 to drawing coordinates (y grows downward)."""
    return CENTER + RADIUS * valence, CENTER - RADIUS * arousal


def from_canvas(x: float, y: float) -> Tuple[float, float]:
    return (x - CENTER) / RADIUS, (CENTER - y) / RADIUS


def _num(x: float) -> str:
    s = f"{x:.3f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def circumplex_svg(
    points: Sequence[Tuple[float, float]],
    title: str = "",
    neutral_radius: float = 0.1,
) -> str:
    """SVG document with the circle, axes, sector labels and one polyline."""
    parts: List[str] = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{SIZE}" height="{SIZE}" fill="white"/>',
    ]
    if title:
        parts.append(f'<title>{_escape(title)}</title>')
    c = _num(CENTER)
    parts.append(f'<circle cx="{c}" cy="{c}" r="{_num(RADIUS)}" fill="none" stroke="#333" stroke-width="1.5"/>')
    parts.append(
        f'<circle cx="{c}" cy="{c}" r="{_num(RADIUS * neutral_radius)}" fill="#eee" stroke="#999" '
        f'stroke-dasharray="2,2"/>'
    )
    # sector boundaries
    for k in range(len(SECTORS)):
        ang = math.radians(SECTOR_WIDTH / 2 + k * SECTOR_WIDTH)
        x, y = to_canvas(math.cos(ang), math.sin(ang))
        parts.append(
            f'<line x1="{c}" y1="{c}" x2="{_num(x)}" y2="{_num(y)}" stroke="#ccc" stroke-dasharray="4,3"/>'
        )
    x0, _ = to_canvas(-1.0, 0.0)
    x1, _ = to_canvas(1.0, 0.0)
    _, y0 = to_canvas(0.0, 1.0)
    _, y1 = to_canvas(0.0, -1.0)
    parts.append(f'<line x1="{_num(x0)}" y1="{c}" x2="{_num(x1)}" y2="{c}" stroke="#333"/>')
    parts.append(f'<line x1="{c}" y1="{_num(y0)}" x2="{c}" y2="{_num(y1)}" stroke="#333"/>')
    parts.append(f'<text x="{_num(x1 - 4)}" y="{_num(CENTER - 6)}" text-anchor="end">valence</text>')
    parts.append(
        f'<text x="{_num(CENTER + 6)}" y="{_num(y0 + 14)}" text-anchor="start">arousal</text>'
    )
    for k, name in enumerate(SECTORS):
        ang = math.radians(k * SECTOR_WIDTH)
        x, y = to_canvas(LABEL_RADIUS * math.cos(ang), LABEL_RADIUS * math.sin(ang))
        parts.append(
            f'<text class="sector" x="{_num(x)}" y="{_num(y + 4)}" text-anchor="middle">{name}</text>'
        )

    coords = [to_canvas(v, a) for v, a in points]
    pts = " ".join(f"{_num(x)},{_num(y)}" for x, y in coords)
    parts.append(f'<polyline points="{pts}" fill="none" stroke="#1f77b4" stroke-width="2"/>')
    for i, (x, y) in enumerate(coords):
        parts.append(f'<circle class="step" cx="{_num(x)}" cy="{_num(y)}" r="3.5" fill="#1f77b4"/>')
        parts.append(
            f'<text class="step-index" x="{_num(x + 5)}" y="{_num(y - 5)}" font-size="9">{i}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def trajectory_points(log: TrajectoryLog) -> List[Tuple[float, float]]:
    return [(s.affect.valence_norm, s.affect.arousal_norm) for s in log.steps]


def emit_circumplex_svg(log: TrajectoryLog, path: Union[str, Path]) -> Path:
    title = f"scenario {log.config.scenario_id} (seed {log.config.seed})"
    text = circumplex_svg(trajectory_points(log), title, log.config.neutral_radius)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
    return path


def polyline_points(svg_text: str) -> List[Tuple[float, float]]:
    """Canvas coordinates of the (single) polyline in an emitted document."""
    start = svg_text.index('<polyline points="') + len('<polyline points="')
    end = svg_text.index('"', start)
    body = svg_text[start:end].split()
    return [tuple(float(v) for v in pair.split(",")) for pair in body]  # type: ignore[misc]

import math

import pytest

from affect_engine.affect import label_emotion, to_polar
from affect_engine.scenarios import ScenarioConfig, run_config
from affect_engine.svg import circumplex_svg, emit_circumplex_svg, from_canvas, polyline_points, to_canvas


def test_document_structure():
    text = circumplex_svg([(0.1, -0.5), (0.3, 0.2)], "t")
    assert text.startswith("<svg")
    assert text.rstrip().endswith("</svg>")
    assert text.count("<polyline") == 1
    assert text.count('class="step"') == 2
    for name in ("happy", "calm", "angry", "valence", "arousal"):
        assert name in text


def test_axis_orientation():
    pts = polyline_points(circumplex_svg([(1, 0), (0, 1), (-1, 0), (0, -1)]))
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    assert xs.index(max(xs)) == 0
    assert ys.index(min(ys)) == 1
    assert from_canvas(*to_canvas(0.25, -0.75)) == pytest.approx((0.25, -0.75))


def test_scenario_2_points_are_calm(tmp_path):
    log = run_config(ScenarioConfig.for_scenario(2))
    text = emit_circumplex_svg(log, tmp_path / "s.svg").read_text()
    pts = polyline_points(text)
    assert len(pts) == len(log.steps)
    for x, y in pts:
        v, a = from_canvas(x, y)
        r, th = to_polar(v, a)
        assert label_emotion(r, th) in ("calm", "neutral")


def test_escaping():
    assert "&lt;b&gt;" in circumplex_svg([], "<b>")


def test_empty_polyline_still_present():
    text = circumplex_svg([])
    assert text.count("<polyline") == 1
    assert polyline_points(text) == []

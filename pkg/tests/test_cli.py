import json

import pytest

from affect_engine.cli import main


def _files(d):
    return sorted(p.name for p in d.iterdir())


def test_run_single_scenario(tmp_path, capsys):
    out = tmp_path / "o"
    assert main(["run", "--scenario", "2", "--out-dir", str(out)]) == 0
    names = _files(out)
    assert "resolved_config.json" in names
    for ext in ("csv", "json", "svg", "png"):
        assert f"00_scenario2_seed0.{ext}" in names
    assert (out / "00_scenario2_seed0.png").read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"
    assert "found at step 0, 1 steps" in capsys.readouterr().out


def test_run_is_byte_identical(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["run", "--scenario", "3", "--max-steps", "12", "--format", "csv,json,svg,png"]
    assert main(args + ["--out-dir", str(a)]) == 0
    assert main(args + ["--out-dir", str(b)]) == 0
    assert _files(a) == _files(b)
    for name in _files(a):
        assert (a / name).read_bytes() == (b / name).read_bytes(), name


def test_env_seed(tmp_path, monkeypatch):
    monkeypatch.setenv("AFFECT_ENGINE_SEED", "17")
    assert main(["run", "--scenario", "2", "--format", "csv", "--out-dir", str(tmp_path)]) == 0
    assert "00_scenario2_seed17.csv" in _files(tmp_path)
    assert main(["run", "--scenario", "2", "--seed", "3", "--format", "csv", "--out-dir", str(tmp_path)]) == 0
    assert "00_scenario2_seed3.csv" in _files(tmp_path)
    monkeypatch.setenv("AFFECT_ENGINE_SEED", "x")
    assert main(["run", "--scenario", "2", "--out-dir", str(tmp_path)]) == 1


def test_config_file(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps([{"scenario_id": 2, "seed": 5}, {"scenario_id": 1, "max_steps": 3}]))
    out = tmp_path / "o"
    assert main(["run", "--config", str(cfg), "--format", "csv", "--out-dir", str(out)]) == 0
    assert _files(out) == ["00_scenario2_seed5.csv", "01_scenario1_seed0.csv", "resolved_config.json"]
    resolved = json.loads((out / "resolved_config.json").read_text())
    assert resolved[0]["object_true_location"] == 2


def test_overrides_applied(tmp_path):
    main(["run", "--scenario", "1", "--horizon", "2", "--max-steps", "3", "--precision", "4",
          "--format", "csv", "--out-dir", str(tmp_path)])
    resolved = json.loads((tmp_path / "resolved_config.json").read_text())
    assert resolved[0]["horizon"] == 2 and resolved[0]["max_steps"] == 3
    assert resolved[0]["policy_precision"] == 4.0


def test_error_exit_codes(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"scenario_id": 4, "object_present": true}')
    assert main(["validate", "--config", str(bad)]) == 1
    assert main(["run", "--config", str(tmp_path / "missing.json")]) == 1
    assert "error" in capsys.readouterr().err
    with pytest.raises(SystemExit) as info:
        main(["run", "--format", "gif"])
    assert info.value.code == 2
    with pytest.raises(SystemExit):
        main(["run", "--scenario", "9"])


def test_validate_and_scenarios(tmp_path, capsys):
    good = tmp_path / "g.json"
    good.write_text('{"scenario_id": 4}')
    assert main(["validate", "--config", str(good)]) == 0
    assert "ok" in capsys.readouterr().out
    assert main(["scenarios"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert [d["scenario_id"] for d in data] == [1, 2, 3, 4, 5]

import json

import pytest

from app.config import AppConfig, RunConfig, load_config


def test_missing_or_malformed_files_keep_defaults(tmp_path):
    assert load_config(tmp_path / "absent.json") == AppConfig()
    bad = tmp_path / "bad.json"
    bad.write_text("{not json", encoding="utf-8")
    assert load_config(bad) == AppConfig()
    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"run": {"caps": "abc"}}), encoding="utf-8")
    assert load_config(wrong) == AppConfig()


def test_partial_files_merge_with_defaults(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"run": {"caps": [8, 4], "colour": "red"}, "examples": {"decay_caps": 16}}))
    cfg = load_config(path)
    assert cfg.run.caps == (8, 4)
    assert cfg.run.xi_count == 64
    assert cfg.examples.decay_caps == 16
    assert cfg.examples.caps == (16, 32, 64)


def test_caps_per_variable():
    assert RunConfig(caps=(8,)).caps_for(3) == (8, 8, 8)
    assert RunConfig(caps=[8, 4]).caps_for(2) == (8, 4)
    with pytest.raises(ValueError):
        RunConfig(caps=(8, 4)).caps_for(3)


def test_overrides_skip_missing_values():
    base = RunConfig(caps=(16,), xi_count=8)
    cfg = base.with_overrides(caps=None, xi_count=4, exact=False, bogus=1)
    assert cfg.caps == (16,)
    assert cfg.xi_count == 4
    assert cfg.exact is False
    assert base.xi_count == 8
    echo = cfg.echo()
    assert echo["caps"] == [16]
    assert isinstance(echo["schedule"], list)


def test_dimension_is_read_from_the_expression_by_default():
    assert RunConfig().n is None
    assert load_config().run.n is None
    assert RunConfig(n=3).with_overrides(n=None).n == 3

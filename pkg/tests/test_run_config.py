# -*- coding: utf-8 -*-
"""
Deney yapılandırması testleri
"""

import pytest

from algorithm.agent import AgentConfig
from utils.run_config import RunConfig, parse_config, render_config, load_run_config, OUTPUT_ENV_VAR
from utils.errors import ConfigError


def test_empty_text_gives_defaults():
    config = parse_config("")
    assert config == RunConfig()
    assert config.agent.beta == -0.1
    assert config.agent.n_skills == 4


def test_defaults_are_logged(caplog):
    with caplog.at_level("INFO"):
        parse_config("beta = 0.2\n")
    assert "Varsayılan değer uygulandı: eta = 0.1" in caplog.text
    assert "Varsayılan değer uygulandı: beta" not in caplog.text


def test_values_and_comments():
    config = parse_config("# deney\nbeta = 0.25  # pozitif\nseeds = 0, 1, 2\nhidden = 32, 32\nskill_phases = off\n")
    assert config.agent.beta == 0.25
    assert config.seeds == (0, 1, 2)
    assert config.agent.hidden == (32, 32)
    assert config.agent.skill_phases is False


def test_sac_mode_defaults_to_single_skill():
    assert parse_config("mode = sac\n").agent.n_skills == 1


def test_out_of_range_value_reports_line():
    with pytest.raises(ConfigError) as info:
        parse_config("beta = 0.1\n\ntau = 1.5\n")
    assert info.value.line_number == 3
    assert str(info.value).startswith("Satır 3: tau")


def test_unknown_key_reports_line():
    with pytest.raises(ConfigError) as info:
        parse_config("alpha = 0.2\nlearning_rate = 0.1\n")
    assert info.value.line_number == 2


def test_unparsable_value_and_missing_separator():
    with pytest.raises(ConfigError) as info:
        parse_config("batch_size = many\n")
    assert info.value.line_number == 1
    with pytest.raises(ConfigError):
        parse_config("batch_size 64\n")


def test_duplicate_key_rejected():
    with pytest.raises(ConfigError) as info:
        parse_config("gamma = 0.9\ngamma = 0.95\n")
    assert info.value.line_number == 2


def test_render_parse_round_trip():
    config = RunConfig(agent=AgentConfig(n_skills=3, beta=0.5, hidden=(16, 8), skill_phases=False, lr=1e-3),
                       env="pointmass", total_steps=5000, seeds=(4, 7), threshold=-12.5)
    assert parse_config(render_config(config)) == config


def test_output_override_from_environment(tmp_path, monkeypatch):
    path = tmp_path / "deney.cfg"
    path.write_text("output_dir = yerel\n", encoding="utf-8")
    assert load_run_config(str(path)).output_dir == "yerel"
    monkeypatch.setenv(OUTPUT_ENV_VAR, str(tmp_path / "ortak"))
    assert load_run_config(str(path)).output_dir == str(tmp_path / "ortak")


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        load_run_config("/olmayan/dizin/deney.cfg")

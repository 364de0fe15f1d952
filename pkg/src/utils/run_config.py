#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Deney yapılandırması modülü

Biçim: satır başına bir `anahtar = değer`, `#` ile başlayan yorumlar.
Verilmeyen anahtarlar için varsayılan değer uygulanır ve günlüğe yazılır.
"""

import os
import math
import logging
from dataclasses import dataclass, field, fields, replace

from algorithm.agent import AgentConfig, MAX_SKILLS, MODES, POLICY_LOSSES, EVAL_POLICIES
from envs.environments import ENVIRONMENTS
from utils.errors import ConfigError

logger = logging.getLogger(__name__)

OUTPUT_ENV_VAR = "SDSRA_OUT"
TRUE_WORDS = {"true", "yes", "on", "1"}
FALSE_WORDS = {"false", "no", "off", "0"}


@dataclass
class RunConfig:
    """
    Ajan hiperparametreleri ve deney düzeni
    """
    agent: AgentConfig = field(default_factory=AgentConfig)
    env: str = "pendulum"
    total_steps: int = 30000
    eval_interval: int = 1000
    eval_episodes: int = 5
    output_dir: str = "runs"
    seeds: tuple = (0,)
    threshold: float = -400.0
    ma_window: int = 5
    workers: int = 1

    def agent_config(self, seed):
        """
        Tohuma özel ajan yapılandırması
        """
        return replace(self.agent, seed=int(seed))

    def validate(self):
        """
        Deney düzeni alanlarını doğrular

        Raises:
            ValueError: Aralık dışı değerde (mesaj anahtar adıyla başlar)
        """
        self.agent.validate()
        checks = [
            ("env", self.env in ENVIRONMENTS, f"{sorted(ENVIRONMENTS)} değerlerinden biri olmalı"),
            ("total_steps", self.total_steps >= 0, "negatif olamaz"),
            ("eval_interval", self.eval_interval >= 0, "negatif olamaz"),
            ("eval_episodes", self.eval_episodes >= 1, "en az 1 olmalı"),
            ("output_dir", bool(self.output_dir), "boş olamaz"),
            ("seeds", len(self.seeds) >= 1 and all(s >= 0 for s in self.seeds)
             and len(set(self.seeds)) == len(self.seeds), "negatif olmayan, tekrarsız en az bir tohum içermeli"),
            ("threshold", math.isfinite(self.threshold), "sonlu olmalı"),
            ("ma_window", self.ma_window >= 1, "en az 1 olmalı"),
            ("workers", self.workers >= 1, "en az 1 olmalı"),
        ]
        for key, ok, message in checks:
            if not ok:
                raise ValueError(f"{key} {message}")
        return self


def _parse_bool(text):
    word = text.lower()
    if word in TRUE_WORDS:
        return True
    if word in FALSE_WORDS:
        return False
    raise ValueError(f"mantıksal değer bekleniyordu: {text}")


def _parse_int_tuple(text):
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if not parts:
        raise ValueError("en az bir tam sayı bekleniyordu")
    return tuple(int(p) for p in parts)


def _choice(options):
    def parse(text):
        if text not in options:
            raise ValueError(f"{list(options)} değerlerinden biri olmalı")
        return text
    return parse


def _render_bool(value):
    return "true" if value else "false"


def _render_float(value):
    return repr(float(value))


def _render_tuple(value):
    return ", ".join(str(v) for v in value)


# anahtar -> (hedef, ayrıştırıcı, yazıcı); hedef "agent" ise AgentConfig alanıdır
FIELDS = {
    "mode": ("agent", _choice(MODES), str),
    "env": ("run", _choice(tuple(sorted(ENVIRONMENTS))), str),
    "n_skills": ("agent", int, str),
    "initial_relevance": ("agent", float, _render_float),
    "temperature": ("agent", float, _render_float),
    "beta": ("agent", float, _render_float),
    "eta": ("agent", float, _render_float),
    "skill_update_interval": ("agent", int, str),
    "skill_phases": ("agent", _parse_bool, lambda v: "on" if v else "off"),
    "alpha": ("agent", float, _render_float),
    "gamma": ("agent", float, _render_float),
    "tau": ("agent", float, _render_float),
    "lr": ("agent", float, _render_float),
    "batch_size": ("agent", int, str),
    "buffer_capacity": ("agent", int, str),
    "env_steps_per_iteration": ("agent", int, str),
    "gradient_steps_per_iteration": ("agent", int, str),
    "warmup_steps": ("agent", int, str),
    "policy_loss": ("agent", _choice(POLICY_LOSSES), str),
    "hidden": ("agent", _parse_int_tuple, _render_tuple),
    "squash": ("agent", _parse_bool, _render_bool),
    "log_interval": ("agent", int, str),
    "bootstrap_on_timeout": ("agent", _parse_bool, _render_bool),
    "eval_policy": ("agent", _choice(EVAL_POLICIES), str),
    "total_steps": ("run", int, str),
    "eval_interval": ("run", int, str),
    "eval_episodes": ("run", int, str),
    "output_dir": ("run", str, str),
    "seeds": ("run", _parse_int_tuple, _render_tuple),
    "threshold": ("run", float, _render_float),
    "ma_window": ("run", int, str),
    "workers": ("run", int, str),
}


def _value(config, key):
    target = FIELDS[key][0]
    return getattr(config.agent if target == "agent" else config, key)


def parse_config(text):
    """
    Yapılandırma metnini ayrıştırır

    Args:
        text (str): UTF-8 metin

    Returns:
        RunConfig: Doğrulanmış yapılandırma

    Raises:
        ConfigError: Bilinmeyen anahtar, çözümlenemeyen veya aralık dışı değerde
    """
    agent_values = {}
    run_values = {}
    key_lines = {}

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"'anahtar = değer' biçimi bekleniyordu: {raw.strip()}", number)
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in FIELDS:
            raise ConfigError(f"Bilinmeyen anahtar: {key}", number)
        if key in key_lines:
            raise ConfigError(f"Anahtar tekrar tanımlanmış: {key} (ilk tanım satır {key_lines[key]})", number)
        target, parse, _ = FIELDS[key]
        try:
            parsed = parse(value)
        except ValueError as e:
            raise ConfigError(f"{key} değeri çözümlenemedi ({value}): {str(e)}", number)
        (agent_values if target == "agent" else run_values)[key] = parsed
        key_lines[key] = number

    # mode=sac iken N=1 zorlaması için açık bir n_skills verilmemişse sessizce uygulanır
    if agent_values.get("mode") == "sac" and "n_skills" not in agent_values:
        agent_values["n_skills"] = 1
    config = RunConfig(agent=AgentConfig(**agent_values), **run_values)

    for key in FIELDS:
        if key not in key_lines:
            logger.info(f"Varsayılan değer uygulandı: {key} = {FIELDS[key][2](_value(config, key))}")

    try:
        config.validate()
    except ValueError as e:
        message = str(e)
        key = next((k for k in FIELDS if message.startswith(k + " ")), None)
        raise ConfigError(message, key_lines.get(key))
    return config


def render_config(config):
    """
    Yapılandırmayı ayrıştırılabilir metne çevirir; parse_config(render_config(c)) == c
    """
    lines = ["# SDSRA deney yapılandırması"]
    for key, (_, _, render) in FIELDS.items():
        lines.append(f"{key} = {render(_value(config, key))}")
    return "\n".join(lines) + "\n"


def load_run_config(path):
    """
    Dosyadan okur; SDSRA_OUT ortam değişkeni output_dir değerini geçersiz kılar

    Args:
        path (str): Dosya yolu

    Returns:
        RunConfig: Yapılandırma
    """
    if not os.path.exists(path):
        raise FileNotFoundError(f"Yapılandırma dosyası bulunamadı: {path}")
    with open(path, "r", encoding="utf-8") as f:
        config = parse_config(f.read())
    override = os.environ.get(OUTPUT_ENV_VAR)
    if override:
        logger.info(f"{OUTPUT_ENV_VAR} ile çıktı dizini değiştirildi: {override}")
        config.output_dir = override
    return config

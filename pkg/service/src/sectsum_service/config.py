"""Service configuration with file and environment overrides."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields

_ENV_PREFIX = "SECTSUM_SERVICE_"


@dataclass
class ServiceConfig:
    encoder_checkpoint: str = "builtin-mlm"
    generator_checkpoint: str = "builtin-seq2seq"
    max_input_length: int = 512
    device: str = "cpu"
    port: int = 8077
    max_batch: int = 256

    def validate(self) -> None:
        if self.max_input_length != 512:
            raise ValueError("max_input_length is fixed at 512")
        if self.port < 1 or self.port > 65535:
            raise ValueError(f"invalid port {self.port}")
        if self.max_batch < 1:
            raise ValueError(f"max_batch must be >= 1, got {self.max_batch}")


def load_config(path: str | None = None, overrides: dict | None = None) -> ServiceConfig:
    """Defaults, then config file, then SECTSUM_SERVICE_* env vars, then overrides."""
    values: dict = {}
    if path:
        with open(path, "r", encoding="utf-8") as handle:
            values.update(json.load(handle))
    for field in fields(ServiceConfig):
        env_value = os.environ.get(_ENV_PREFIX + field.name.upper())
        if env_value is not None:
            values[field.name] = type(field.default)(env_value)
    if overrides:
        values.update({k: v for k, v in overrides.items() if v is not None})
    known = {f.name for f in fields(ServiceConfig)}
    config = ServiceConfig(**{k: v for k, v in values.items() if k in known})
    config.validate()
    return config

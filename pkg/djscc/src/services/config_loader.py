"""
Experiment configuration files.

INI-style sections named after the ExperimentConfig fields; list values
are comma separated and ``none`` clears an optional value. The grammar is
documented in docs/CONFIG_FORMAT.md.
"""

import configparser
import logging
import types
import typing
from pathlib import Path

from pydantic import BaseModel, ValidationError

from ..exceptions import ConfigurationError
from ..schemas.experiments import ExperimentConfig

logger = logging.getLogger(__name__)

NONE_VALUES = {'none', 'null', ''}


def _section_model(section: str) -> type[BaseModel]:
    return ExperimentConfig.model_fields[section].annotation


def _is_list(annotation) -> bool:
    if typing.get_origin(annotation) is list:
        return True
    if typing.get_origin(annotation) in (typing.Union, types.UnionType):
        return any(_is_list(arg) for arg in typing.get_args(annotation))
    return False


def _allows_none(annotation) -> bool:
    return type(None) in typing.get_args(annotation)


def _parse_value(model: type[BaseModel], key: str, raw: str):
    annotation = model.model_fields[key].annotation
    text = raw.strip()
    if text.lower() in NONE_VALUES and _allows_none(annotation):
        return None
    if _is_list(annotation):
        return [item.strip() for item in text.split(',') if item.strip()]
    return text


def parse_config_text(text: str, source: str = '<string>') -> ExperimentConfig:
    parser = configparser.ConfigParser(interpolation=None, default_section='__unused__')
    try:
        parser.read_string(text, source=source)
    except configparser.Error as exc:
        raise ConfigurationError(f"{source}: {exc}") from exc

    data: dict[str, dict] = {}
    for section in parser.sections():
        if section not in ExperimentConfig.model_fields:
            raise ConfigurationError(f"{source}: unknown section [{section}]")
        model = _section_model(section)
        values = {}
        for key, raw in parser.items(section):
            if key not in model.model_fields:
                raise ConfigurationError(f"{source}: unknown key '{key}' in [{section}]")
            values[key] = _parse_value(model, key, raw)
        data[section] = values

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as exc:
        details = "; ".join(f"{'.'.join(map(str, error['loc']))}: {error['msg']}" for error in exc.errors())
        raise ConfigurationError(f"{source}: {details}") from exc


def load_experiment_config(path=None) -> ExperimentConfig:
    """Read and validate a config file; no path gives the built-in defaults."""
    if path is None:
        return ExperimentConfig()
    target = Path(path)
    try:
        text = target.read_text(encoding='utf-8')
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {target}: {exc.strerror or exc}") from exc
    config = parse_config_text(text, source=str(target))
    logger.info(f"Loaded experiment config from {target}")
    return config


def apply_overrides(config: ExperimentConfig, seed: int | None = None, trials: int | None = None) -> ExperimentConfig:
    run = {}
    if seed is not None:
        run['seed'] = seed
    if trials is not None:
        run['trials'] = trials
    if not run:
        return config
    try:
        return config.updated(run=run)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid run override {run}: {exc.errors()[0]['msg']}") from exc

from __future__ import annotations

import hashlib
import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Mapping

from dotenv import dotenv_values

from sentilex.dictionary.params import DictParams
from sentilex.harvest.params import CorpusParams
from sentilex.lexicon.exceptions import ConfigError
from sentilex.taxonomy.utils import EdgePolicy
from sentilex.toolkit.serializers import CORPUS_PARAM_KEYS, DICT_PARAM_KEYS, POLICY_KEYS, RunConfigSerializer

logger = logging.getLogger(__name__)

PROVENANCE_SUFFIX = ".provenance.json"
PROVENANCE_VERSION = 1


def load_run_config(path) -> dict[str, str]:
    """Flat ``key=value`` file; the process environment is never consulted."""
    if not Path(path).is_file():
        raise ConfigError(f"configuration file {path} does not exist")
    values = dotenv_values(path, interpolate=False, encoding="utf-8")
    missing = sorted(key for key, value in values.items() if value is None)
    if missing:
        raise ConfigError(f"{path}: key(s) without a value: {', '.join(missing)}")
    return dict(values)


def resolve_config(
    file_values: Mapping[str, object] | None,
    overrides: Mapping[str, object],
    algorithms=None,
) -> dict:
    """Merge file values with command-line overrides (flags win) and validate."""
    data = dict(file_values or {})
    data.update({key: value for key, value in overrides.items() if value is not None})
    serializer = RunConfigSerializer(data=data, context={"algorithms": algorithms})
    if not serializer.is_valid():
        problems = "; ".join(
            f"{key}: {' '.join(str(m) for m in messages)}" for key, messages in sorted(serializer.errors.items())
        )
        raise ConfigError(f"invalid configuration: {problems}")
    return dict(serializer.validated_data)


def describe_config(config: Mapping) -> dict:
    """JSON-ready copy of a validated configuration."""
    serializer = RunConfigSerializer()
    return {key: serializer.fields[key].to_representation(value) for key, value in sorted(config.items())}


def require(config: Mapping, *keys: str):
    missing = [key for key in keys if not config.get(key)]
    if missing:
        raise ConfigError(f"missing required setting(s): {', '.join(missing)}")


def dict_params_from(config: Mapping, algorithm=None) -> DictParams:
    values = {key: config.get(key) for key in DICT_PARAM_KEYS}
    return DictParams.for_algorithm(algorithm or config["algorithm"], **values)


def corpus_params_from(config: Mapping, algorithm=None) -> CorpusParams:
    values = {key: config.get(key) for key in CORPUS_PARAM_KEYS}
    return CorpusParams.for_algorithm(algorithm or config["algorithm"], **values)


def edge_policy_from(config: Mapping) -> EdgePolicy:
    return EdgePolicy(**{key: config[key] for key in POLICY_KEYS if config.get(key) is not None})


class _WarningCollector(logging.Handler):
    def __init__(self):
        super().__init__(level=logging.WARNING)
        self.messages: list[str] = []

    def emit(self, record: logging.LogRecord):
        self.messages.append(f"{record.name}: {record.getMessage()}")


@contextmanager
def capture_warnings(logger_name: str = "sentilex") -> Iterator[list[str]]:
    """Collect WARNING+ records of ``logger_name`` for the provenance sidecar."""
    collector = _WarningCollector()
    target = logging.getLogger(logger_name)
    target.addHandler(collector)
    try:
        yield collector.messages
    finally:
        target.removeHandler(collector)


def file_digest(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def provenance_path(output) -> Path:
    return Path(f"{output}{PROVENANCE_SUFFIX}")


def write_provenance(
    output,
    command: str,
    config: Mapping,
    args: list[str] | None = None,
    warnings: list[str] | None = None,
    details: Mapping | None = None,
) -> Path:
    """Sidecar next to ``output``: everything needed to re-run ``command``."""
    record = {
        "version": PROVENANCE_VERSION,
        "command": command,
        "args": list(args or []),
        "config": describe_config(config),
        "warnings": list(warnings or []),
        "details": dict(details or {}),
        "outputs": {str(output): file_digest(output)},
    }
    path = provenance_path(output)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(json.dumps(record, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    logger.debug("Wrote provenance %s", path)
    return path


def read_provenance(path) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as f:
            record = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"{path}: not a provenance file ({e})") from e
    for key in ("command", "args", "config"):
        if key not in record:
            raise ConfigError(f"{path}: provenance record lacks {key!r}")
    return record

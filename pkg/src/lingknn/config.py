"""Pipeline configuration: defaults, ``key = value`` files, and flag overrides."""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping

from .classifier import KnnConfig
from .clustering import ClusterParams
from .metrics import LdmConfig


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PipelineConfig:
    eps: float = 0.0375
    min_samples: int = 10
    edge_threshold: int = 2
    jaccard_threshold: float = 0.4
    soundex_threshold: float = 0.8
    k: int = 5
    use_meaning: bool = True
    test_fraction: float = 0.2
    seed: int = 42
    max_iters: int = 10
    tol: float = 1e-4

    def __post_init__(self):
        try:
            self.cluster_params
            self.knn
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not 0 < self.test_fraction < 1:
            raise ConfigError(f"test_fraction must lie in (0, 1), got {self.test_fraction}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.tol < 0:
            raise ConfigError(f"tol must be >= 0, got {self.tol}")

    @property
    def cluster_params(self) -> ClusterParams:
        return ClusterParams(self.eps, self.min_samples)

    @property
    def ldm(self) -> LdmConfig:
        return LdmConfig(self.use_meaning, self.jaccard_threshold, self.soundex_threshold, self.edge_threshold)

    @property
    def knn(self) -> KnnConfig:
        return KnnConfig(self.k, self.ldm)

    def updated(self, values: Mapping[str, Any]) -> "PipelineConfig":
        """Copy with ``values`` applied; strings are coerced to the field type."""
        types = {f.name: f.type for f in fields(self)}
        parsed = {}
        for key, value in values.items():
            if key not in types:
                raise ConfigError(f"unknown config key {key!r}")
            if value is None:
                continue
            parsed[key] = _coerce(key, value, types[key])
        return replace(self, **parsed)

    def to_text(self) -> str:
        return "".join(f"{k} = {_fmt(v)}\n" for k, v in asdict(self).items())


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    return repr(v)


def _coerce(key: str, value: Any, typ: str):
    if not isinstance(value, str):
        return value
    value = value.strip()
    try:
        if typ == "bool":
            low = value.lower()
            if low in ("true", "yes", "1", "on"):
                return True
            if low in ("false", "no", "0", "off"):
                return False
            raise ValueError(value)
        if typ == "int":
            return int(value)
        return float(value)
    except ValueError:
        raise ConfigError(f"bad value for {key}: {value!r}") from None


def parse_config_text(text: str) -> dict[str, str]:
    values = {}
    for n, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {n}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key] = value
    return values


def load_config(path: str | Path | None = None, overrides: Mapping[str, Any] | None = None) -> PipelineConfig:
    """Defaults, then the file, then ``overrides`` (``None`` values ignored)."""
    cfg = PipelineConfig()
    if path is not None:
        cfg = cfg.updated(parse_config_text(Path(path).read_text(encoding="utf-8")))
    if overrides:
        cfg = cfg.updated(overrides)
    return cfg

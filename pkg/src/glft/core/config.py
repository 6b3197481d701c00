"""
Centralized configuration module for glft.
Handles loading, validating and querying numeric settings.
"""
import json
import os
import pathlib
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from glft.utils.exceptions import ConfigError
from glft.utils.logging import log_warning


# Pydantic models for configuration validation
class NumericsModel(BaseModel):
    """Finite-difference settings."""
    model_config = ConfigDict(extra='forbid')

    fd_step: float = Field(default=1e-6, gt=0)
    hessian_step: float = Field(default=1e-4, gt=0)
    richardson: bool = False


class NewtonModel(BaseModel):
    """Damped Newton / bisection settings for gradient inversion."""
    model_config = ConfigDict(extra='forbid')

    tol: float = Field(default=1e-12, gt=0)
    max_iter: int = Field(default=100, gt=0)
    max_backtracks: int = Field(default=40, gt=0)
    divergence_bound: float = Field(default=1e8, gt=0)


class GridModel(BaseModel):
    """Default primal window for the grid engines."""
    model_config = ConfigDict(extra='forbid')

    window: float = Field(default=10.0, gt=0)
    nodes: int = Field(default=2001, ge=2)
    nodes_2d: int = Field(default=201, ge=2)


class ProbesModel(BaseModel):
    """Dual probe set used by the theorem harness."""
    model_config = ConfigDict(extra='forbid')

    count: int = Field(default=41, ge=1)
    window: List[float] = Field(default_factory=lambda: [-3.0, 3.0])

    @field_validator('window')
    @classmethod
    def _ordered(cls, value: List[float]) -> List[float]:
        if len(value) != 2 or not value[0] < value[1]:
            raise ValueError("probe window must be [lo, hi] with lo < hi")
        return value


class LegendreCheckModel(BaseModel):
    """Thresholds of the Legendre-type evidence checker."""
    model_config = ConfigDict(extra='forbid')

    boundary_samples: int = Field(default=8, ge=1)
    ray_steps: int = Field(default=6, ge=3)
    interior_window: float = Field(default=5.0, gt=0)
    pass_ratio: float = Field(default=0.5, gt=0)
    fail_ratio: float = Field(default=0.2, gt=0)


class CatalogModel(BaseModel):
    """Catalog aliases: alias -> function spec string."""
    model_config = ConfigDict(extra='forbid')

    aliases: Dict[str, str] = Field(default_factory=dict)


class GlftConfigModel(BaseModel):
    """Root configuration model for glft."""
    model_config = ConfigDict(extra='forbid')

    version: str = "1.0"
    seed: int = 0
    numerics: NumericsModel = Field(default_factory=NumericsModel)
    newton: NewtonModel = Field(default_factory=NewtonModel)
    grid: GridModel = Field(default_factory=GridModel)
    probes: ProbesModel = Field(default_factory=ProbesModel)
    legendre_check: LegendreCheckModel = Field(default_factory=LegendreCheckModel)
    tolerances: Dict[str, float] = Field(default_factory=dict)
    catalog: CatalogModel = Field(default_factory=CatalogModel)

    @field_validator('tolerances')
    @classmethod
    def _positive(cls, value: Dict[str, float]) -> Dict[str, float]:
        for name, tol in value.items():
            if not tol > 0:
                raise ValueError(f"tolerance '{name}' must be positive")
        return value


GLFT_CONFIG_DIR = pathlib.Path.home() / ".glft"
GLFT_CONFIG_FILE = GLFT_CONFIG_DIR / "config.json"
GLFT_CONFIG_ENV = "GLFT_CONFIG"

DEFAULT_CONFIG: Dict[str, Any] = {
    "version": "1.0",
    "seed": 0,
    "numerics": {
        "fd_step": 1e-6,
        "hessian_step": 1e-4,
        "richardson": False
    },
    "newton": {
        "tol": 1e-12,
        "max_iter": 100,
        "max_backtracks": 40,
        "divergence_bound": 1e8
    },
    "grid": {
        "window": 10.0,
        "nodes": 2001,
        "nodes_2d": 201
    },
    "probes": {
        "count": 41,
        "window": [-3.0, 3.0]
    },
    "legendre_check": {
        "boundary_samples": 8,
        "ray_steps": 6,
        "interior_window": 5.0,
        "pass_ratio": 0.5,
        "fail_ratio": 0.2
    },
    "tolerances": {
        "theorem_closed": 1e-9,
        "theorem_newton": 1e-6,
        "theorem_grid": 1e-3,
        "involution": 1e-10,
        "convexity": 1e-10,
        "fenchel_young": 1e-9,
        "fenchel_young_equality": 1e-6,
        "reciprocal": 1e-6,
        "divergence": 1e-6,
        "invariance": 1e-5,
        "reverse_order": 1e-12,
        "biconjugate": 1e-4,
        "closed_forms": 1e-9,
        "subdiff": 1e-5,
        "subdiff_singleton": 1e-4
    },
    "catalog": {
        "aliases": {
            "quadratic": "quadratic-form{m=1}"
        }
    }
}


class GlftConfig:
    """Configuration manager for glft (singleton)."""

    _instance: Optional['GlftConfig'] = None
    _config: Dict[str, Any]
    _path: Optional[pathlib.Path] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._config = {}
            cls._instance._loaded = False
            cls._instance._path = None
        return cls._instance

    def _ensure_loaded(self) -> None:
        """Ensure configuration is loaded."""
        if not self._loaded:
            self._load()

    def resolve_path(self) -> pathlib.Path:
        """Config file precedence: explicit path > $GLFT_CONFIG > ~/.glft/config.json."""
        if self._path is not None:
            return self._path
        env_path = os.environ.get(GLFT_CONFIG_ENV)
        if env_path:
            return pathlib.Path(os.path.expanduser(env_path))
        return GLFT_CONFIG_FILE

    def _load(self) -> None:
        """Load configuration from file or use defaults."""
        path = self.resolve_path()

        if path.exists():
            try:
                with open(path, 'r', encoding='utf-8') as f:
                    raw_config = json.load(f)
            except (json.JSONDecodeError, IOError) as e:
                if self._path is not None:
                    raise ConfigError(f"Could not read {path}: {e}")
                log_warning(f"Could not read {path}: {e}")
                raw_config = {}
            merged = self._deep_merge(self._deep_copy(DEFAULT_CONFIG), raw_config)
            self._config = self._validate_config(merged)
        else:
            if self._path is not None:
                raise ConfigError(f"Config file not found: {path}")
            self._config = self._deep_copy(DEFAULT_CONFIG)
        self._loaded = True

    def _validate_config(self, raw_config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Validate configuration using Pydantic.

        On validation error, logs a warning and falls back to defaults.
        """
        try:
            return GlftConfigModel.model_validate(raw_config).model_dump()
        except ValidationError as e:
            log_warning(f"Configuration validation failed, using defaults: {e}")
            return self._deep_copy(DEFAULT_CONFIG)

    def use_file(self, path: Optional[str]) -> None:
        """Point the singleton at an explicit config file and reload."""
        self._path = pathlib.Path(os.path.expanduser(path)) if path else None
        self.reload()

    def _deep_copy(self, d: Dict[str, Any]) -> Dict[str, Any]:
        """Deep copy a dictionary."""
        return json.loads(json.dumps(d))

    def _deep_merge(self, base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
        """Deep merge two dictionaries, override takes precedence."""
        result = self._deep_copy(base)
        for key, value in override.items():
            if key in result and isinstance(result[key], dict) and isinstance(value, dict):
                result[key] = self._deep_merge(result[key], value)
            else:
                result[key] = value
        return result

    def reload(self) -> None:
        """Force reload configuration from file."""
        self._loaded = False
        self._ensure_loaded()

    def override(self, path: str, value: Any) -> None:
        """
        Set a config value by dot-notation path for this process only.

        Used for command-line flags, which take precedence over the file.
        Example: config.override('tolerances.theorem_closed', 1e-8)
        """
        self._ensure_loaded()
        candidate = self._deep_copy(self._config)
        node = candidate
        keys = path.split('.')
        for key in keys[:-1]:
            node = node.setdefault(key, {})
        node[keys[-1]] = value
        try:
            GlftConfigModel.model_validate(candidate)
        except ValidationError as e:
            raise ConfigError(f"Invalid value for {path}: {e}") from e
        self._config = candidate

    def get(self, path: str, default: Any = None) -> Any:
        """
        Get config value by dot-notation path.

        Example: config.get('newton.tol', 1e-12)
        """
        self._ensure_loaded()
        keys = path.split('.')
        value = self._config

        for key in keys:
            if isinstance(value, dict) and key in value:
                value = value[key]
            else:
                return default

        return value if value is not None else default

    def get_with_default(self, path: str) -> Any:
        """Get config value with fallback to DEFAULT_CONFIG."""
        value = self.get(path)
        if value is not None:
            return value

        keys = path.split('.')
        default_value = DEFAULT_CONFIG
        for key in keys:
            if isinstance(default_value, dict) and key in default_value:
                default_value = default_value[key]
            else:
                return None
        return default_value

    def tolerance(self, name: str) -> float:
        """Named tolerance; unknown names are a configuration error."""
        value = self.get_with_default(f'tolerances.{name}')
        if value is None:
            raise ConfigError(f"Unknown tolerance: {name}")
        return float(value)

    def alias(self, name: str) -> Optional[str]:
        """Resolve a catalog alias to its function spec, if defined."""
        return self.get(f'catalog.aliases.{name}')

    def to_dict(self) -> Dict[str, Any]:
        """Return full configuration as dictionary."""
        self._ensure_loaded()
        return self._deep_copy(self._config)


def get_config() -> GlftConfig:
    """Get the singleton config instance."""
    return GlftConfig()


# Convenience accessors used throughout the numeric modules
def fd_step() -> float:
    """Default finite-difference step."""
    return float(get_config().get_with_default('numerics.fd_step'))


def hessian_step() -> float:
    """Default second-difference step."""
    return float(get_config().get_with_default('numerics.hessian_step'))


def tolerance(name: str) -> float:
    """Named tolerance from the active configuration."""
    return get_config().tolerance(name)

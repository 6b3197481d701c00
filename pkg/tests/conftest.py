"""Pytest configuration and fixtures for glft tests."""
import json
import sys
from pathlib import Path
from typing import Any, Dict

import numpy as np
import pytest

# Add src to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))


@pytest.fixture(autouse=True)
def reset_config_singleton(tmp_path: Path, monkeypatch):
    """Fresh GlftConfig per test, never reading the user's ~/.glft."""
    from glft.core import config as config_module
    from glft.utils import logging as logging_module

    original_instance = config_module.GlftConfig._instance
    config_module.GlftConfig._instance = None
    monkeypatch.delenv(config_module.GLFT_CONFIG_ENV, raising=False)
    monkeypatch.setattr(config_module, "GLFT_CONFIG_FILE", tmp_path / "no-such-dir" / "config.json")
    monkeypatch.setattr(logging_module, "VERBOSE", False)

    yield

    config_module.GlftConfig._instance = original_instance


@pytest.fixture
def temp_config_dir(tmp_path: Path, monkeypatch) -> Path:
    """Create temporary config directory and patch config paths."""
    from glft.core import config as config_module

    config_dir = tmp_path / ".glft"
    config_dir.mkdir(parents=True)

    monkeypatch.setattr(config_module, "GLFT_CONFIG_DIR", config_dir)
    monkeypatch.setattr(config_module, "GLFT_CONFIG_FILE", config_dir / "config.json")

    return config_dir


@pytest.fixture
def mock_config(temp_config_dir: Path) -> Dict[str, Any]:
    """Write a configuration file with a few non-default values."""
    config_data = {
        "version": "1.0",
        "seed": 11,
        "newton": {"tol": 1e-11, "max_iter": 80},
        "grid": {"window": 6.0},
        "tolerances": {"theorem_closed": 1e-8},
        "catalog": {"aliases": {"softplus-ish": "exp"}},
    }
    (temp_config_dir / "config.json").write_text(json.dumps(config_data))
    return config_data


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator so random tests replay exactly."""
    return np.random.default_rng(20240611)


@pytest.fixture
def example_params():
    """P = (2, [[2]], [1], [3], 5), the worked one-dimensional example."""
    from glft.deform.params import DeformParams

    return DeformParams(2.0, np.array([[2.0]]), np.array([1.0]), np.array([3.0]), 5.0)


@pytest.fixture
def example_params_literal() -> str:
    return '{"lambda":2,"A":[[2]],"b":[1],"c":[3],"d":5}'

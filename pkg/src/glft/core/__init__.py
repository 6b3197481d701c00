"""Core modules for glft."""

from .config import GlftConfig, get_config
from .base_command import CliCommand

__all__ = ["GlftConfig", "get_config", "CliCommand"]

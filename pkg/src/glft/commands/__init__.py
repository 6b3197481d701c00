"""CLI command modules for glft."""

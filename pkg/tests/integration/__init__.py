"""Integration tests for glft."""

"""Unit tests for glft."""

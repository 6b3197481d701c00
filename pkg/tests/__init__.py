"""Tests for the glft package."""

"""Contract errors shared across layers."""

from __future__ import annotations


class DimensionMismatchError(ValueError):
    """Vector or matrix shapes that a caller promised to align do not."""


class ConfigError(ValueError):
    """A configuration value is missing or out of range."""

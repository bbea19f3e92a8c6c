"""Utilities for IO and helpers."""

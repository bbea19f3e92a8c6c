"""Output layer: structured run log."""

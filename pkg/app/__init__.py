"""Application layer: configuration, workflows and the command-line entry point."""

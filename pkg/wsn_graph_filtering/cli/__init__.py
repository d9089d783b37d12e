"""CLI module for command-line interface."""

"""CLI package exposing Typer entry points."""

from .cli_generated import app

__all__ = ["app"]


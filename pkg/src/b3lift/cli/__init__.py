"""Command line interface and expression language."""

from .expr import parse, to_text, evaluate
from .main import main

__all__ = ["parse", "to_text", "evaluate", "main"]

"""HTTP service exposing the director pipeline."""
from .app import app

__all__ = ["app"]

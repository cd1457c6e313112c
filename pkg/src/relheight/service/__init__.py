"""HTTP service exposing the relheight pipeline."""

from .app import create_app

__all__ = ["create_app"]

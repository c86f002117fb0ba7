"""FastAPI service exposing the toolkit over typed JSON endpoints."""

from .app import create_app

__all__ = ["create_app"]

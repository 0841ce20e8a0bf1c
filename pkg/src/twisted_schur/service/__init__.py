"""HTTP service: pydantic schemas, shared handlers, and the FastAPI app."""

from .app import create_app
from .handlers import (handle_cohomology, handle_heisenberg, handle_lift,
                       handle_multiplier, handle_regular_rep,
                       handle_repgroups)

__all__ = [
    "create_app",
    "handle_multiplier",
    "handle_repgroups",
    "handle_cohomology",
    "handle_regular_rep",
    "handle_lift",
    "handle_heisenberg",
]

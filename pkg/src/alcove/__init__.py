"""Alcove geometry, Verlinde fusion and regular parts of tensor products for reductive groups."""

__version__ = "0.1.0"

from .rootsys import RootSystem, RootSystemSpec, build  # noqa: E402
from .affweyl import EllContext, context  # noqa: E402

__all__ = ["EllContext", "RootSystem", "RootSystemSpec", "__version__", "build", "context"]

"""Exact invariants of rational homogeneous varieties G/P."""
from .dynkin import DiagramSpec, build_diagram, build_root_system
from .parabolic import ParabolicSpec, dimension, grading

__all__ = ["DiagramSpec", "ParabolicSpec", "build_diagram", "build_root_system",
           "dimension", "grading"]
__version__ = "0.1.0"

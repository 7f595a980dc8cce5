"""Praeger-Xu graphs, their automorphism groups, and symmetry parameters."""
from .bitstring import BitWord
from .graph import PxGraph, Vertex, build

__all__ = ["BitWord", "PxGraph", "Vertex", "build"]
__version__ = "0.1.0"

"""Exact verification workbench for group pairs (Gamma, Gamma_0) with Gamma_0 abelian:
normal forms, exceptional sets, malnormality, and mixing defects in the group algebra."""

from .core import Ball, Element, PairContext, Side, canonicalize, enumerate_ball, enumerate_box, inv, is_in_gamma0, mul
from .config import context_from_config, context_from_file, shipped

__version__ = "0.1.0"

__all__ = [
    "Ball",
    "Element",
    "PairContext",
    "Side",
    "canonicalize",
    "context_from_config",
    "context_from_file",
    "enumerate_ball",
    "enumerate_box",
    "inv",
    "is_in_gamma0",
    "mul",
    "shipped",
]

"""Exact vertex- and edge-isoperimetric optimizers on Cayley graphs of Z and the planar grids."""

from .core import (
    GeneratorSet,
    UsageError,
    ZSet,
    boundary_size,
    canonicalize,
    edge_boundary,
    vertex_boundary,
)
from .grid2d import GridSet, boundary2d
from .kernels import BACKEND
from .search import OptimizerFamily, enumerate_optimizers, enumerate_optimizers_2d, nest_check, phase_scan
from .certify import certified_interval_threshold, epsilon_of, rooted_witness

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "GeneratorSet",
    "GridSet",
    "OptimizerFamily",
    "UsageError",
    "ZSet",
    "boundary2d",
    "boundary_size",
    "canonicalize",
    "certified_interval_threshold",
    "edge_boundary",
    "enumerate_optimizers",
    "enumerate_optimizers_2d",
    "epsilon_of",
    "nest_check",
    "phase_scan",
    "rooted_witness",
    "vertex_boundary",
]

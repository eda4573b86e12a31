"""Exact computations for translational tilings of Z^n by finite clusters."""

from .cluster import Cluster, PrismDecomposition, prism_decompose
from .errors import DomainError
from .lattice import Sublattice
from .tiler import PeriodicTiling, search_fully_periodic, tile_1d, verify_tiling
from .trichotomy import classify

__all__ = [
    "Cluster",
    "DomainError",
    "PeriodicTiling",
    "PrismDecomposition",
    "Sublattice",
    "classify",
    "prism_decompose",
    "search_fully_periodic",
    "tile_1d",
    "verify_tiling",
]

__version__ = "0.1.0"

"""Wang tiles, sparse grids and the Turing degrees of two-dimensional shifts
of finite type, at desk scale."""
from .core import Tile, Tileset, Window, superimpose, validate_window
from .solver import ResourceLimit, SolveRequest, solve

__version__ = "0.1.0"

__all__ = ["Tile", "Tileset", "Window", "superimpose", "validate_window",
           "ResourceLimit", "SolveRequest", "solve", "__version__"]

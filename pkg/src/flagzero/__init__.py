"""Schubert calculus, torsion indices and representability of points and diagonals in flag manifolds."""

__version__ = "0.1.0"

from .errors import FlagzeroError  # noqa: E402
from .rootsys import RootSystem, Weight, WeylElement, build_root_system, enumerate_weyl  # noqa: E402

__all__ = ["__version__", "FlagzeroError", "RootSystem", "Weight", "WeylElement",
           "build_root_system", "enumerate_weyl"]

"""Symbolic engine for Bar-Natan skein modules of 3-manifolds."""

from bnskein.ring import Coefficient, Laurent, Ring, QQ, ZZ
from bnskein.core import SurfaceComponent, State

__all__ = ["Coefficient", "Laurent", "Ring", "QQ", "ZZ", "SurfaceComponent", "State"]
__version__ = "0.1.0"

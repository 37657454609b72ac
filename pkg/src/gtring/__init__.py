"""Exact computations in the representation ring of the unitary groups."""

from .operators import ParameterQuadruple
from .ring import RingElement, Window
from .scalars import GaussianRational

__version__ = "0.1.0"

__all__ = ["ParameterQuadruple", "RingElement", "Window", "GaussianRational", "__version__"]

"""Modified binary tilings of the hyperbolic plane and their horoball packings.

Exact group arithmetic on dyadic labels, Ford and Hecke packings, labelled
approximants, density estimators and SVG output.  Hot loops run in a
compiled extension when it is built; ``horotile.kernels.BACKEND`` says which.
"""
from .algebra import DyadicRes, GoldenInt, GoldenRational, LAMBDA
from .geom import INF, HPoint, Horoball, Isometry
from .kernels import BACKEND

__all__ = [
    "BACKEND",
    "DyadicRes",
    "GoldenInt",
    "GoldenRational",
    "HPoint",
    "Horoball",
    "INF",
    "Isometry",
    "LAMBDA",
]
__version__ = "0.1.0"

"""
rlct

Resource lambda-calculus with tests: both the promotion-free and the full
calculus, the relational model D, definability of points, Taylor expansion
and test expansion, with a command line.
"""

from .rlct import Rlct, __version__
from .errors import RlctError
from .core.model import DElem, Point
from .core.syntax import App, Bag, Lam, Sum, TauBar, Test, Var

__author__ = "rlct developers"

__all__ = [
    "Rlct",
    "RlctError",
    "Var",
    "Lam",
    "App",
    "TauBar",
    "Bag",
    "Test",
    "Sum",
    "DElem",
    "Point",
    "__version__",
]

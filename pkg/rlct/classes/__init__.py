"""
rlct API classes
"""

from .syntax import SyntaxAPI
from .reduction import ReductionAPI
from .model import ModelAPI
from .definability import DefinabilityAPI
from .taylor import TaylorAPI
from .expansion import ExpansionAPI

__all__ = [
    "SyntaxAPI",
    "ReductionAPI",
    "ModelAPI",
    "DefinabilityAPI",
    "TaylorAPI",
    "ExpansionAPI",
]

"""
Error classes for rlct
"""

from .rlct_error import RlctError

__all__ = ["RlctError"]

"""
Utility classes for rlct
"""

from .general_utils import GeneralUtils
from .multiset_utils import MultisetUtils

__all__ = ["GeneralUtils", "MultisetUtils"]

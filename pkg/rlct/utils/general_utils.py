"""
General utilities for rlct
"""

import json
import os
from typing import Any, Collection, Optional

from ..errors import RlctError

SEED_ENV_VAR = "RLCT_SEED"


class GeneralUtils:
    """
    General utility functions
    """

    @staticmethod
    def fresh_name(base: str, avoid: Collection[str]) -> str:
        """
        Pick a variable name not in ``avoid``, derived from ``base``

        Args:
            base: Preferred name; trailing digits are replaced
            avoid: Names already in use

        Returns:
            ``base`` itself when free, otherwise the first free ``base<n>``

        Example:
            >>> GeneralUtils.fresh_name('x', {'x', 'x1'})
            'x2'
        """
        if base not in avoid:
            return base
        root = base.rstrip("0123456789") or "v"
        counter = 1
        while f"{root}{counter}" in avoid:
            counter += 1
        return f"{root}{counter}"

    @staticmethod
    def resolve_seed(seed: Optional[int] = None) -> Optional[int]:
        """
        Resolve the strategy seed, falling back to the RLCT_SEED variable

        Args:
            seed: Explicit seed; wins over the environment

        Returns:
            Integer seed, or None for the leftmost-outermost strategy

        Raises:
            RlctError: When RLCT_SEED is not an integer
        """
        if seed is not None:
            return seed
        raw = os.getenv(SEED_ENV_VAR)
        if raw is None or raw.strip() == "":
            return None
        try:
            return int(raw)
        except ValueError:
            raise RlctError.validation_error(
                f"{SEED_ENV_VAR} must be an integer", {"value": raw}
            )

    @staticmethod
    def format_json(data: Any) -> str:
        """
        Serialize with stable key order

        Example:
            >>> GeneralUtils.format_json({'b': 1, 'a': 2})
            '{\\n  "a": 2,\\n  "b": 1\\n}'
        """
        return json.dumps(data, indent=2, sort_keys=True, ensure_ascii=False)

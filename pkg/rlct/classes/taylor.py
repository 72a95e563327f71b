"""
Taylor API - approximants of full-calculus expressions
"""

from typing import Any, Dict, Optional

from ..core.printer import print_expr, print_sum
from ..core.syntax import size
from ..core.taylor import simulation_check, taylor_contains, taylor_enumerate


class TaylorAPI:
    """
    Taylor API - approximants of full-calculus expressions

    Example:
        ```python
        client = Rlct()

        result = client.taylor.enumerate(r"\\x.x[; x!]", size_bound=6)
        result["approximants"]  # ["\\x.x[]", "\\x.x[x]", "\\x.x[x, x]"]
        ```
    """

    def __init__(self, client):
        """Initialize TaylorAPI with rlct client"""
        self.client = client

    def enumerate(self, source, size_bound: Optional[int] = None) -> Dict[str, Any]:
        """
        Approximants up to a size bound, smallest first

        Returns:
            The bound, the count and the printed approximants

        Raises:
            RlctError: VALIDATION_ERROR for a negative bound
        """
        s = self.client.to_sum(source)
        bound = self.client.config["size_bound"] if size_bound is None else size_bound
        found = sorted(taylor_enumerate(s, bound), key=lambda e: (size(e), print_expr(e)))
        return {
            "input": print_sum(s),
            "size_bound": bound,
            "count": len(found),
            "approximants": [print_expr(e) for e in found],
        }

    def contains(self, candidate, source) -> Dict[str, Any]:
        """
        Whether a promotion-free expression approximates another

        Raises:
            RlctError: NOT_PROMOTION_FREE for a candidate with a promoted part
        """
        s = self.client.to_sum(source)
        c = self.client.to_sum(candidate)
        return {
            "candidate": print_sum(c),
            "input": print_sum(s),
            "contains": all(taylor_contains(item, s) for item in c),
        }

    def simulation(self, source, approximant) -> Dict[str, Any]:
        """
        Check that a head step of the approximant is matched by a head step
        of the expression

        Raises:
            RlctError: PRECONDITION_VIOLATED
        """
        s = self.client.to_sum(source)
        a_elem = self.client.to_one(approximant)
        return {
            "input": print_sum(s),
            "approximant": print_expr(a_elem),
            "simulated": simulation_check(s, a_elem),
        }

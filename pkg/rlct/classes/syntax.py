"""
Syntax API - parsing, printing and measuring expressions
"""

from typing import Any, Dict

from ..core.printer import print_sum
from ..core.syntax import (
    Sum,
    degree,
    msize,
    sum_free_vars,
    sum_is_promotion_free,
    sum_is_test_free,
)


class SyntaxAPI:
    """
    Syntax API - parsing, printing and measuring expressions

    Example:
        ```python
        client = Rlct()

        result = client.syntax.parse(r"\\x.(x + x)")
        result["sum"]  # "\\x.x"
        ```
    """

    def __init__(self, client):
        """Initialize SyntaxAPI with rlct client"""
        self.client = client

    def parse(self, source) -> Dict[str, Any]:
        """
        Parse an expression and describe its canonical sum

        Args:
            source: Expression text or a built Sum

        Returns:
            The printed sum, its sort, summands, sizes, free variables and
            fragment flags

        Raises:
            RlctError: PARSE_ERROR, SORT_MISMATCH
        """
        s = self.client.to_sum(source)
        return {
            "sum": print_sum(s),
            "sort": s.sort,
            "summands": [print_sum(Sum((item,))) for item in s],
            "msize": list(msize(s)),
            "free_vars": sorted(sum_free_vars(s)),
            "promotion_free": sum_is_promotion_free(s),
            "test_free": sum_is_test_free(s),
        }

    def format(self, source) -> str:
        """Canonical text of an expression"""
        return print_sum(self.client.to_sum(source))

    def alpha_eq(self, left, right) -> bool:
        """Alpha-equivalence of two sums"""
        return self.client.to_sum(left) == self.client.to_sum(right)

    def degree(self, variable: str, source) -> Dict[str, Any]:
        """
        Degree of a variable in every summand

        Raises:
            RlctError: DEGREE_UNDEFINED when the variable occurs under a promotion
        """
        s = self.client.to_sum(source)
        return {"variable": variable, "degrees": [degree(variable, item) for item in s]}

"""
Definability API - compiling points into terms and test-contexts
"""

from typing import Any, Dict, List, Optional

from ..core.definability import (
    alpha_minus,
    alpha_plus,
    definable_set,
    preorder_probe,
    probe_points,
    separating_context,
    separation,
)
from ..core.printer import print_expr, print_sum
from ..core.syntax import sum_free_vars


class DefinabilityAPI:
    """
    Definability API - compiling points into terms and test-contexts

    Example:
        ```python
        client = Rlct()

        result = client.definability.testctx("[*]::*")
        result["alpha_plus"]  # "\\x1.tbar(tau[x1])"
        result["alpha_minus"]  # "tau[<hole>[tbar(eps)]]"
        ```
    """

    def __init__(self, client):
        """Initialize DefinabilityAPI with rlct client"""
        self.client = client

    def testctx(self, source) -> Dict[str, Any]:
        """
        The defining term and recognizing test-context of an element of D

        Args:
            source: Element text such as ``"[*]::*"`` or a DElem

        Returns:
            ``alpha_plus`` and ``alpha_minus`` source text
        """
        alpha = self.client.to_delem(source)
        return {
            "delem": str(alpha),
            "alpha_plus": print_expr(alpha_plus(alpha)),
            "alpha_minus": print_expr(alpha_minus(alpha).body),
        }

    def separating_context(self, point) -> Dict[str, Any]:
        """The test-context sending a term to eps iff the point is a member"""
        p = self.client.to_point(point)
        return {"point": str(p), "context": print_expr(separating_context(p).body)}

    def separation(self, left, right) -> Dict[str, Any]:
        """Run the test-context of one element on the defining term of another"""
        alpha, beta = self.client.to_delem(left), self.client.to_delem(right)
        outcome = separation(alpha, beta)
        return dict(outcome.to_dict(), left=str(alpha), right=str(beta))

    def definable_set(self, elements: List[Any]) -> Dict[str, Any]:
        """The sum of defining terms of a finite set of elements"""
        u = [self.client.to_delem(item) for item in elements]
        return {
            "elements": sorted({str(alpha) for alpha in u}),
            "term": print_sum(definable_set(u)),
        }

    def probe(
        self,
        left,
        right,
        max_rank: Optional[int] = None,
        fuel: Optional[int] = None,
        limit: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Look for a point in the interpretation of ``left`` but not in that
        of ``right``

        Points are drawn from the lightest elements within the client's
        model bounds (``max_rank`` overrides the rank bound).

        Returns:
            ``included`` is True when no separating point was found among
            the ``points_checked`` points; otherwise ``point`` and its
            separating ``context`` are reported
        """
        m, n = self.client.to_sum(left), self.client.to_sum(right)
        config = self.client.config
        points = probe_points(
            sorted(sum_free_vars(m) | sum_free_vars(n)),
            config["max_rank"] if max_rank is None else max_rank,
            config["max_width"],
            config["max_length"],
            config["probe_limit"] if limit is None else limit,
        )
        found = preorder_probe(m, n, points, self.client.fuel(fuel))
        return {
            "left": print_sum(m),
            "right": print_sum(n),
            "points_checked": len(points),
            "included": found is None,
            "point": None if found is None else str(found),
            "context": None if found is None else print_expr(separating_context(found).body),
        }

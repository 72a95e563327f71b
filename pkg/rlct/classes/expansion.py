"""
Expansion API - labelled tests, index maps and solvability
"""

from typing import Any, Dict, List, Optional, Sequence, Union

from ..core.expansion import (
    EllMap,
    SearchBudget,
    dom,
    ell_expand,
    expand_separator,
    find_ell_for_convergent,
    find_k_for_divergent,
    label,
    solvable,
)
from ..core.printer import print_expr, print_sum

EllLike = Union[str, EllMap]


class ExpansionAPI:
    """
    Expansion API - labelled tests, index maps and solvability

    Example:
        ```python
        client = Rlct()

        client.expansion.expand("tau[tbar(eps), I]", "{default:0}")["expanded"]
        # "\\z1.z1[\\x.x, \\z.z[]]"
        client.expansion.solvable("D[I]")["solvable"]  # False
        ```
    """

    def __init__(self, client):
        """Initialize ExpansionAPI with rlct client"""
        self.client = client

    def _ell(self, source: EllLike) -> EllMap:
        return EllMap.parse(source) if isinstance(source, str) else source

    def _budget(self) -> SearchBudget:
        return SearchBudget(max_value=self.client.config["ell_budget"])

    def expand(self, source, ell: EllLike = "{default:0}") -> Dict[str, Any]:
        """
        Label an expression left to right and expand it under an index map

        Returns:
            The index domain, the map and the expanded test-free expression

        Raises:
            RlctError: NOT_PROMOTION_FREE, PARSE_ERROR for a malformed map
        """
        e = self.client.to_one(source)
        ell_map = self._ell(ell)
        le = label(e)
        return {
            "input": print_expr(e),
            "dom": sorted(dom(le)),
            "ell": str(ell_map),
            "expanded": print_expr(ell_expand(le, ell_map)),
        }

    def solvable(self, source) -> Dict[str, Any]:
        """
        Whether a test-free promotion-free term is solvable

        Raises:
            RlctError: NOT_TEST_FREE, NOT_PROMOTION_FREE
        """
        s = self.client.to_sum(source)
        return {"term": print_sum(s), "solvable": solvable(s)}

    def find_ell(self, source, k_samples: Sequence[int] = (0, 1, 2)) -> Dict[str, Any]:
        """
        Search an index map expanding a convergent closed test to solvable
        terms under every sampled shift

        Raises:
            RlctError: PRECONDITION_VIOLATED when the test does not converge
        """
        v = self.client.to_one(source, "test")
        found = find_ell_for_convergent(v, k_samples, self._budget())
        return {
            "test": print_expr(v),
            "k_samples": list(k_samples),
            "ell": None if found is None else str(found),
        }

    def find_k(self, source, ell_samples: Optional[List[EllLike]] = None) -> Dict[str, Any]:
        """
        Search a shift expanding a divergent closed test to unsolvable terms
        under every sampled index map (constant maps 0, 1, 2 by default)

        Raises:
            RlctError: PRECONDITION_VIOLATED when the test does not reduce to 0
        """
        v = self.client.to_one(source, "test")
        samples = [self._ell(item) for item in ell_samples] if ell_samples else [
            EllMap.constant(value) for value in range(3)
        ]
        k = find_k_for_divergent(v, samples, self.client.config["k_budget"])
        return {"test": print_expr(v), "ell_samples": [str(item) for item in samples], "k": k}

    def separator(self, left, right, point) -> Dict[str, Any]:
        """
        Test-free term context separating two test-free terms at a point

        Raises:
            RlctError: NOT_TEST_FREE, PRECONDITION_VIOLATED
        """
        m = self.client.to_one(left, "term")
        n = self.client.to_one(right, "term")
        p = self.client.to_point(point)
        context = expand_separator(m, n, p, self._budget(), self.client.config["k_budget"])
        return {
            "left": print_expr(m),
            "right": print_expr(n),
            "point": str(p),
            "context": None if context is None else print_expr(context.body),
        }

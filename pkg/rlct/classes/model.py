"""
Model API - elements of D, points and membership queries
"""

from itertools import islice
from typing import Any, Dict, Optional

from ..core.definability import member_by_test, member_by_test_full
from ..core.model import (
    delem_key,
    enumerate_D,
    interp_member,
    interp_nonempty,
    iter_D,
    length,
    print_delem,
    print_point,
    rank,
)
from ..core.printer import print_sum
from ..core.syntax import sum_is_promotion_free
from ..core.taylor import taylor_member
from ..errors import RlctError

MEMBER_ROUTES = ("direct", "test", "taylor")


class ModelAPI:
    """
    Model API - elements of D, points and membership queries

    Membership can be decided three ways: ``direct`` by the interpretation
    clauses on the normal form, ``test`` by running the separating
    test-context, ``taylor`` by searching Taylor approximants. Full-calculus
    terms use the convergence check unless the Taylor route is chosen.

    Example:
        ```python
        client = Rlct()

        client.model.member("I", "|- [*]::*")["member"]  # True
        client.model.member("D[; I!]", "|- [*]::*", via="test")["outcome"]  # "epsilon"
        ```
    """

    def __init__(self, client):
        """Initialize ModelAPI with rlct client"""
        self.client = client

    def describe(self, source) -> Dict[str, Any]:
        """Canonical text, rank and length of an element of D"""
        alpha = self.client.to_delem(source)
        return {"delem": print_delem(alpha), "rank": rank(alpha), "length": length(alpha)}

    def enumerate(
        self,
        max_rank: Optional[int] = None,
        max_width: Optional[int] = None,
        max_length: Optional[int] = None,
        limit: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Elements of D within the bounds (client bounds by default)

        Args:
            limit: When given, only the ``limit`` lightest elements are
                produced, in canonical order

        Returns:
            Bounds, count and printed elements
        """
        bounds = (
            self.client.config["max_rank"] if max_rank is None else max_rank,
            self.client.config["max_width"] if max_width is None else max_width,
            self.client.config["max_length"] if max_length is None else max_length,
        )
        if limit is None:
            elements = enumerate_D(*bounds)
        else:
            elements = sorted(islice(iter_D(*bounds), limit), key=delem_key)
        return {
            "bounds": {"max_rank": bounds[0], "max_width": bounds[1], "max_length": bounds[2]},
            "count": len(elements),
            "elements": [print_delem(alpha) for alpha in elements],
        }

    def member(
        self,
        term,
        point,
        via: str = "direct",
        full: Optional[bool] = None,
        fuel: Optional[int] = None,
        size_bound: Optional[int] = None,
    ) -> Dict[str, Any]:
        """
        Decide whether a point lies in the interpretation of a term

        Args:
            term: Term text or value
            point: Point text (``"x=[*] |- *"``) or Point
            via: "direct", "test" or "taylor"
            full: Force the convergence-based route; defaults to whether the
                term has a promoted part
            fuel: Rounds for the convergence-based route
            size_bound: Approximant size bound for the Taylor route

        Returns:
            ``member`` is True/False, or None when the answer is unknown;
            ``outcome`` carries the test outcome on test-based routes

        Raises:
            RlctError: ENV_MISMATCH, NOT_PROMOTION_FREE, VALIDATION_ERROR
        """
        if via not in MEMBER_ROUTES:
            raise RlctError.validation_error(
                f"via must be one of {', '.join(MEMBER_ROUTES)}", {"via": via}
            )
        s = self.client.to_sum(term)
        p = self.client.to_point(point)
        if full is None:
            full = not sum_is_promotion_free(s)
        result: Dict[str, Any] = {
            "term": print_sum(s),
            "point": print_point(p),
            "via": via,
            "outcome": None,
        }
        if via == "taylor":
            bound = self.client.config["size_bound"] if size_bound is None else size_bound
            result.update(member=taylor_member(s, p, bound), size_bound=bound)
        elif full:
            outcome = member_by_test_full(s, p, self.client.fuel(fuel))
            result.update(
                via="test",
                member=None if outcome.is_unknown else outcome.is_epsilon,
                outcome=outcome.to_dict()["outcome"],
                reason=outcome.to_dict()["reason"],
            )
        elif via == "test":
            found = member_by_test(s, p)
            result.update(member=found, outcome="epsilon" if found else "zero")
        else:
            result.update(member=interp_member(s, p))
        return result

    def nonempty(self, term) -> Dict[str, Any]:
        """Whether the interpretation of a promotion-free term is nonempty"""
        s = self.client.to_sum(term)
        return {"term": print_sum(s), "nonempty": interp_nonempty(s)}

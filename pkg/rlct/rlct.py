"""
Main rlct client class
"""

import logging
from typing import Any, Dict, Optional, Union

from .classes.definability import DefinabilityAPI
from .classes.expansion import ExpansionAPI
from .classes.model import ModelAPI
from .classes.reduction import ReductionAPI
from .classes.syntax import SyntaxAPI
from .classes.taylor import TaylorAPI
from .core.model import DElem, Point, parse_delem, parse_point
from .core.parser import parse
from .core.reduce import Fuel, Strategy
from .core.syntax import Expr, Sum, sort_of
from .errors import RlctError
from .utils.general_utils import GeneralUtils

logger = logging.getLogger(__name__)

__version__ = "1.0.0"

SumLike = Union[str, Sum, Expr]


class Rlct:
    """
    Resource lambda-calculus with tests

    Bundles the configuration shared by every operation (fuel, model
    bounds, search budgets, strategy seed) and exposes one API object per
    area. Every API method accepts source text or built values and returns
    a plain dict.

    Example:
        ```python
        from rlct import Rlct

        client = Rlct(fuel=1000)

        client.reduction.normalize("D[I, F]")["normal_form"]  # "F"
        client.definability.testctx("[*]::*")["alpha_minus"]  # "tau[<hole>[tbar(eps)]]"
        ```
    """

    def __init__(
        self,
        fuel: int = 10000,
        max_rank: int = 3,
        max_width: int = 3,
        max_length: int = 3,
        size_bound: int = 9,
        ell_budget: int = 3,
        k_budget: int = 6,
        seed: Optional[int] = None,
        cycle_memory: int = 4096,
        probe_limit: int = 200,
    ):
        """
        Initialize the client

        Args:
            fuel: Rounds of fair head reduction before giving up (default: 10000)
            max_rank: Largest rank of enumerated model elements (default: 3)
            max_width: Largest multiset cardinality in enumerated elements (default: 3)
            max_length: Largest number of levels of enumerated elements (default: 3)
            size_bound: Largest size of enumerated Taylor approximants (default: 9)
            ell_budget: Largest value tried in index-map searches (default: 3)
            k_budget: Largest shift tried for divergent tests (default: 6)
            seed: Redex-selection seed; falls back to RLCT_SEED, None means
                leftmost-outermost
            cycle_memory: Visited states remembered by convergence checks (default: 4096)
            probe_limit: Number of points examined by preorder probes (default: 200)

        Raises:
            RlctError: When a bound is negative or the seed is not an integer
        """
        bounds = {
            "fuel": fuel,
            "max_rank": max_rank,
            "max_width": max_width,
            "max_length": max_length,
            "size_bound": size_bound,
            "ell_budget": ell_budget,
            "k_budget": k_budget,
            "cycle_memory": cycle_memory,
            "probe_limit": probe_limit,
        }
        for name, value in bounds.items():
            if not isinstance(value, int) or isinstance(value, bool) or value < 0:
                raise RlctError.validation_error(
                    f"{name} must be a non-negative integer", {name: value}
                )
        if cycle_memory < 1 or probe_limit < 1:
            raise RlctError.validation_error("cycle_memory and probe_limit must be positive")
        if seed is not None and (not isinstance(seed, int) or isinstance(seed, bool)):
            raise RlctError.validation_error("seed must be an integer", {"seed": seed})

        self.config: Dict[str, Any] = dict(bounds, seed=GeneralUtils.resolve_seed(seed))
        logger.debug("rlct client configured: %s", self.config)

        self.syntax = SyntaxAPI(self)
        self.reduction = ReductionAPI(self)
        self.model = ModelAPI(self)
        self.definability = DefinabilityAPI(self)
        self.taylor = TaylorAPI(self)
        self.expansion = ExpansionAPI(self)

        self.utils = GeneralUtils()

    # Input coercion shared by the API classes

    def to_sum(self, source: SumLike) -> Sum:
        """
        Parse text, or wrap an already built expression

        Raises:
            RlctError: PARSE_ERROR, SORT_MISMATCH
        """
        if isinstance(source, str):
            return parse(source)
        if isinstance(source, Sum):
            return source
        return Sum((source,))

    def to_one(self, source: SumLike, sort: Optional[str] = None) -> Expr:
        """
        A single expression, of the given sort when one is named

        Raises:
            RlctError: PRECONDITION_VIOLATED for 0 or a proper sum,
                SORT_MISMATCH for the wrong sort
        """
        s = self.to_sum(source)
        if len(s) != 1:
            raise RlctError.precondition_violated(
                f"expected a single {sort or 'expression'}, got a sum of {len(s)} summands",
                {"summands": len(s)},
            )
        e = s.summands[0]
        if sort is not None and sort_of(e) != sort:
            raise RlctError.sort_mismatch(sort, sort_of(e))
        return e

    def to_delem(self, source: Union[str, DElem]) -> DElem:
        return parse_delem(source) if isinstance(source, str) else source

    def to_point(self, source: Union[str, Point]) -> Point:
        return parse_point(source) if isinstance(source, str) else source

    def fuel(self, fuel: Optional[int] = None) -> Fuel:
        return Fuel(self.config["fuel"] if fuel is None else fuel)

    def strategy(self) -> Strategy:
        return Strategy(self.config["seed"])

    def get_config(self) -> Dict[str, Any]:
        """
        Get the effective configuration

        Returns:
            Copy of the configuration dictionary
        """
        return dict(self.config)

    def get_info(self) -> Dict[str, Any]:
        """
        Get package version and information

        Returns:
            Package information dictionary
        """
        return {
            "name": "rlct",
            "version": __version__,
            "description": "Resource lambda-calculus with tests: reduction, relational model, "
            "definability, Taylor expansion and test expansion",
            "config": self.get_config(),
            "features": [
                "Syntax API",
                "Reduction API",
                "Model API",
                "Definability API",
                "Taylor API",
                "Expansion API",
            ],
        }

"""
Reduction API - normalization, head reduction and convergence
"""

import logging
from typing import Any, Dict, Optional

from ..core.parser import prelude_name
from ..core.printer import print_sum
from ..core.reduce import (
    closed_test_outcome,
    converges,
    head_step,
    normalize,
    normalize_with,
    redexes,
    step,
)

logger = logging.getLogger(__name__)


class ReductionAPI:
    """
    Reduction API - normalization, head reduction and convergence

    Normalization covers the promotion-free calculus only; head reduction
    and convergence work on both calculi.

    Example:
        ```python
        client = Rlct(fuel=100)

        client.reduction.normalize("D[I, F]")["normal_form"]  # "F"
        client.reduction.converges("tau[Omega]")["outcome"]  # "unknown"
        ```
    """

    def __init__(self, client):
        """Initialize ReductionAPI with rlct client"""
        self.client = client

    def normalize(self, source) -> Dict[str, Any]:
        """
        Normal form of a promotion-free expression

        With a configured seed the small-step evaluator runs under the
        seeded strategy; otherwise the big-step evaluator is used.

        Returns:
            Input and normal form text, the prelude constant the normal form
            equals (if any), and whether the result is 0

        Raises:
            RlctError: NOT_PROMOTION_FREE
        """
        s = self.client.to_sum(source)
        seed = self.client.config["seed"]
        result = normalize(s) if seed is None else normalize_with(s, self.client.strategy())
        return {
            "input": print_sum(s),
            "normal_form": print_sum(result),
            "prelude_name": prelude_name(result),
            "is_zero": not result,
            "seed": seed,
        }

    def step(self, source) -> Dict[str, Any]:
        """
        One reduction step under the configured strategy

        Returns:
            The reduct text, or None in normal form, and the redex kinds
            present before the step
        """
        s = self.client.to_sum(source)
        reduct = step(s, self.client.strategy())
        return {
            "input": print_sum(s),
            "redexes": [kind.value for kind in redexes(s)],
            "reduct": None if reduct is None else print_sum(reduct),
        }

    def head(self, source, steps: int = 1) -> Dict[str, Any]:
        """
        Follow up to ``steps`` head reduction steps

        Returns:
            The trace (input first) and whether head normal form was reached
        """
        s = self.client.to_sum(source)
        trace = [print_sum(s)]
        head_normal = False
        for _ in range(steps):
            reduct = head_step(s)
            if reduct is None:
                head_normal = True
                break
            s = reduct
            trace.append(print_sum(s))
        else:
            head_normal = head_step(s) is None
        return {"trace": trace, "result": trace[-1], "head_normal": head_normal}

    def closed_test_outcome(self, source) -> Dict[str, Any]:
        """
        Outcome of a closed promotion-free test

        Raises:
            RlctError: NOT_CLOSED, NOT_PROMOTION_FREE
        """
        s = self.client.to_sum(source)
        return dict(closed_test_outcome(s).to_dict(), input=print_sum(s))

    def converges(self, source, fuel: Optional[int] = None) -> Dict[str, Any]:
        """
        Fair head reduction of a closed test of either calculus

        Args:
            source: Closed test text or value
            fuel: Rounds to run (default: client fuel)

        Returns:
            Outcome, reason (for unknown outcomes) and the fuel used

        Raises:
            RlctError: NOT_CLOSED
        """
        s = self.client.to_sum(source)
        budget = self.client.fuel(fuel)
        outcome = converges(s, budget, self.client.config["cycle_memory"])
        logger.debug("converges: %s after at most %d rounds", outcome, budget.max_rounds)
        return dict(outcome.to_dict(), input=print_sum(s), fuel=budget.max_rounds)

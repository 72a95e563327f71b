"""
Definability: compile points of D into closed terms and test-contexts

For every element alpha of D there is a closed term alpha+ whose
interpretation is exactly {alpha}, and a test-context alpha- that accepts a
closed term exactly when alpha lies in its interpretation. Both are defined
by mutual recursion on the structure of alpha.
"""

import logging
from itertools import islice
from typing import Dict, Iterable, List, Optional, Sequence, Union

from ..errors import RlctError
from .model import (
    DElem,
    Point,
    enumerate_points,
    interp_member,
    iter_D,
)
from .reduce import Fuel, Outcome, UnknownReason, closed_test_outcome, converges
from .syntax import (
    Bag,
    Sum,
    TauBar,
    Term,
    Test,
    TestContext,
    Var,
    apps,
    hole,
    lams,
    single,
    sum_free_vars,
    sum_is_promotion_free,
)

logger = logging.getLogger(__name__)


def alpha_plus(alpha: DElem) -> Term:
    """
    \\x1..xr.tbar(|| alpha_ij-<xi>) where alpha = a1::...::ar::* and alpha_ij
    ranges over the members of ai

    Example:
        ```python
        print_expr(alpha_plus(parse_delem("[*]::*")))  # \\x1.tbar(tau[x1])
        ```
    """
    binders = [f"x{i}" for i in range(1, len(alpha.levels) + 1)]
    elements: List[Term] = []
    for binder, level in zip(binders, alpha.levels):
        for member in level:
            elements.extend(alpha_minus(member).fill(Var(binder)).elements)
    return lams(binders, TauBar(Test(tuple(elements))))


def bag_plus(a: Iterable[DElem]) -> Bag:
    return Bag(tuple(alpha_plus(member) for member in a))


def alpha_minus(alpha: DElem) -> TestContext:
    """tau[<hole>[a1+]...[ar+]]; for * this is tau[<hole>]"""
    return TestContext(Test((apps(hole(), [bag_plus(level) for level in alpha.levels]),)))


def definable_set(u: Iterable[DElem]) -> Sum:
    """The sum of alpha+ over u, whose interpretation is exactly u"""
    return Sum(alpha_plus(alpha) for alpha in u)


def separation(alpha: DElem, beta: DElem) -> Outcome:
    """alpha-<beta+> reduces to eps iff alpha = beta, and to 0 otherwise"""
    return closed_test_outcome(alpha_minus(alpha).fill(alpha_plus(beta)))


def separating_context(p: Point) -> TestContext:
    """
    alpha-<(\\x1..xn.<hole>) a1+ ... an+> for the point (a1..an, alpha); it
    sends a term to eps exactly when the point lies in its interpretation
    """
    names = [name for name, _ in p.env]
    inner = apps(lams(names, hole()), [bag_plus(mset) for _, mset in p.env])
    return TestContext(alpha_minus(p.target).fill(inner))


def _filled(m: Union[Term, Sum], p: Point) -> Sum:
    s = m if isinstance(m, Sum) else single(m)
    missing = set(sum_free_vars(s)) - set(p.names)
    if missing:
        raise RlctError.env_mismatch(missing)
    context = separating_context(p)
    return Sum(context.fill(n) for n in s)  # type: ignore[arg-type]


def member_by_test(m: Union[Term, Sum], p: Point) -> bool:
    """
    Operational membership: run the separating context on m

    Raises:
        RlctError: ENV_MISMATCH, NOT_PROMOTION_FREE
    """
    tests = _filled(m, p)
    if not sum_is_promotion_free(tests):
        raise RlctError.not_promotion_free("member_by_test")
    return closed_test_outcome(tests).is_epsilon


def member_by_test_full(m: Union[Term, Sum], p: Point, fuel: Union[Fuel, int]) -> Outcome:
    """
    Operational membership in the full calculus; epsilon means member, zero
    means not a member, unknown is inconclusive

    Raises:
        RlctError: ENV_MISMATCH
    """
    return converges(_filled(m, p), fuel)


def _certainly_not(outcome: Outcome) -> bool:
    # a repeated state of the deterministic fair schedule never reaches eps
    return outcome.is_zero or outcome.reason is UnknownReason.CYCLE_DETECTED


def preorder_probe(
    m: Union[Term, Sum], n: Union[Term, Sum], points: Sequence[Point], fuel: Union[Fuel, int]
) -> Optional[Point]:
    """
    First point in the interpretation of m but not in that of n, if any

    Promotion-free pairs are compared semantically; otherwise both sides
    are run through their separating contexts, and a point counts only when
    m certainly converges and n certainly does not.
    """
    left = m if isinstance(m, Sum) else single(m)
    right = n if isinstance(n, Sum) else single(n)
    free = sum_free_vars(left) | sum_free_vars(right)
    linear = sum_is_promotion_free(left) and sum_is_promotion_free(right)
    for p in points:
        if not free <= set(p.names):
            logger.debug("skipping %s: environment does not cover %s", p, sorted(free))
            continue
        if linear:
            found = interp_member(left, p) and not interp_member(right, p)
        else:
            found = member_by_test_full(left, p, fuel).is_epsilon and _certainly_not(
                member_by_test_full(right, p, fuel)
            )
        if found:
            logger.info("separating point %s", p)
            return p
    return None


def probe_points(
    names: Sequence[str], max_rank: int, max_width: int, max_length: int, limit: int
) -> List[Point]:
    """
    Up to ``limit`` points built from the lightest elements within the
    bounds, growing the pool of elements one at a time
    """
    elements = list(islice(iter_D(max_rank, max_width, max_length), limit))
    found: Dict[Point, None] = {}
    for n in range(1, len(elements) + 1):
        for p in enumerate_points(sorted(names), elements[:n], max_width):
            found.setdefault(p, None)
            if len(found) >= limit:
                return list(found)
    return list(found)

"""
Reduction: redexes, one-step contextual reduction, normalization of the
promotion-free calculus, head reduction and fueled convergence for the full
calculus
"""

import logging
import random
from collections import OrderedDict
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Callable, Iterator, List, Optional, Sequence, Tuple, Union

from ..errors import RlctError
from .subst import linear_subst_bag_sum, subst, subst_sum
from .syntax import (
    EPSILON,
    TEST,
    ZERO,
    App,
    Bag,
    Expr,
    Lam,
    Sum,
    TauBar,
    Term,
    Test,
    Var,
    app_s,
    apps,
    bag_s,
    free_vars,
    freshen_binder,
    lam_s,
    lams,
    single,
    spine,
    strip_lams,
    sum_free_vars,
    sum_is_promotion_free,
    taubar_s,
    test_s,
)

logger = logging.getLogger(__name__)


class RedexKind(str, Enum):
    BETA = "beta"
    TAUBAR_APP = "taubar_app"
    TAU_LAM = "tau_lam"
    GAMMA = "gamma"


class OutcomeKind(str, Enum):
    EPSILON = "epsilon"
    ZERO = "zero"
    UNKNOWN = "unknown"


class UnknownReason(str, Enum):
    FUEL_EXHAUSTED = "fuel_exhausted"
    CYCLE_DETECTED = "cycle_detected"


@dataclass(frozen=True)
class Outcome:
    """Result of evaluating a closed test"""

    kind: OutcomeKind
    reason: Optional[UnknownReason] = None

    @classmethod
    def epsilon(cls) -> "Outcome":
        return cls(OutcomeKind.EPSILON)

    @classmethod
    def zero(cls) -> "Outcome":
        return cls(OutcomeKind.ZERO)

    @classmethod
    def unknown(cls, reason: UnknownReason) -> "Outcome":
        return cls(OutcomeKind.UNKNOWN, reason)

    @property
    def is_epsilon(self) -> bool:
        return self.kind is OutcomeKind.EPSILON

    @property
    def is_zero(self) -> bool:
        return self.kind is OutcomeKind.ZERO

    @property
    def is_unknown(self) -> bool:
        return self.kind is OutcomeKind.UNKNOWN

    def to_dict(self) -> dict:
        return {
            "outcome": self.kind.value,
            "reason": self.reason.value if self.reason else None,
        }

    def __str__(self) -> str:
        if self.reason is None:
            return self.kind.value
        return f"{self.kind.value}({self.reason.value})"


@dataclass(frozen=True)
class Fuel:
    max_rounds: int

    def __post_init__(self) -> None:
        if self.max_rounds < 0:
            raise RlctError.validation_error(
                "fuel must be non-negative", {"max_rounds": self.max_rounds}
            )


class Strategy:
    """
    Redex selector. Without a seed it always picks the leftmost-outermost
    redex; with a seed it picks pseudo-randomly, reproducibly.
    """

    def __init__(self, seed: Optional[int] = None):
        self.seed = seed
        self._rng = random.Random(seed) if seed is not None else None

    def choose(self, count: int) -> int:
        if self._rng is None:
            return 0
        return self._rng.randrange(count)

    def __repr__(self) -> str:
        return f"Strategy(seed={self.seed})"


Site = Tuple[RedexKind, Callable[[], Sum]]
TestLike = Union[Test, Sum]


# Contractions


def contract_beta(lam: Lam, bag: Bag) -> Sum:
    """(\\x.M)[L; N!] -> M<L/x>[N/x]"""
    if lam.binder in free_vars(bag):
        lam = freshen_binder(lam, free_vars(bag))
    linear = linear_subst_bag_sum(single(lam.body), lam.binder, bag.linear)
    return subst_sum(linear, lam.binder, bag.promoted)


def contract_taubar_app(head: TauBar, bag: Bag) -> Sum:
    return ZERO if bag.linear else single(head)


def contract_tau_lam(lam: Lam, rest: Sequence[Term]) -> Sum:
    """tau[\\x.M] | V -> tau[M[0/x]] | V"""
    return test_s([subst(lam.body, lam.binder, ZERO)] + [single(item) for item in rest])


def contract_gamma(head: TauBar, rest: Sequence[Term]) -> Sum:
    """tau[tbar(V)] | W -> V | W"""
    return single(Test(head.inner.elements + tuple(rest)))


def _contract_application(head: Term, bag: Bag) -> Sum:
    if isinstance(head, Lam):
        return contract_beta(head, bag)
    return contract_taubar_app(head, bag)  # type: ignore[arg-type]


def _others(items: Sequence[Term], index: int) -> Tuple[Term, ...]:
    return tuple(items[:index]) + tuple(items[index + 1 :])


# Redex occurrences, outermost-leftmost


def _mapped(fire: Callable[[], Sum], rebuild: Callable[[Sum], Sum]) -> Callable[[], Sum]:
    return lambda: rebuild(fire())


def _in_linear(bag: Bag, index: int) -> Callable[[Sum], Sum]:
    def rebuild(result: Sum) -> Sum:
        positions = [single(item) for item in bag.linear]
        positions[index] = result
        return bag_s(positions, bag.promoted)

    return rebuild


def _in_promoted(bag: Bag, index: int) -> Callable[[Sum], Sum]:
    others = _others(bag.promoted.summands, index)  # type: ignore[arg-type]
    return lambda result: single(Bag(bag.linear, Sum(others) + result))


def _in_element(test: Test, index: int) -> Callable[[Sum], Sum]:
    def rebuild(result: Sum) -> Sum:
        positions = [single(item) for item in test.elements]
        positions[index] = result
        return test_s(positions)

    return rebuild


def _sites(e: Expr) -> Iterator[Site]:
    if isinstance(e, Var):
        return
    if isinstance(e, Lam):
        for kind, fire in _sites(e.body):
            yield kind, _mapped(fire, lambda r: lam_s(e.binder, r))
    elif isinstance(e, App):
        if isinstance(e.fun, Lam):
            yield RedexKind.BETA, lambda: contract_beta(e.fun, e.arg)  # type: ignore[arg-type]
        elif isinstance(e.fun, TauBar):
            taubar: TauBar = e.fun
            yield RedexKind.TAUBAR_APP, lambda: contract_taubar_app(taubar, e.arg)
        for kind, fire in _sites(e.fun):
            yield kind, _mapped(fire, lambda r: app_s(r, single(e.arg)))
        for kind, fire in _sites(e.arg):
            yield kind, _mapped(fire, lambda r: app_s(single(e.fun), r))
    elif isinstance(e, TauBar):
        for kind, fire in _sites(e.inner):
            yield kind, _mapped(fire, taubar_s)
    elif isinstance(e, Bag):
        for index, item in enumerate(e.linear):
            for kind, fire in _sites(item):
                yield kind, _mapped(fire, _in_linear(e, index))
        for index, item in enumerate(e.promoted):
            for kind, fire in _sites(item):
                yield kind, _mapped(fire, _in_promoted(e, index))
    elif isinstance(e, Test):
        for index, item in enumerate(e.elements):
            yield from _element_redex(e, index, item)
            for kind, fire in _sites(item):
                yield kind, _mapped(fire, _in_element(e, index))


def _element_redex(test: Test, index: int, item: Term) -> Iterator[Site]:
    rest = _others(test.elements, index)
    if isinstance(item, Lam):
        yield RedexKind.TAU_LAM, lambda: contract_tau_lam(item, rest)
    elif isinstance(item, TauBar):
        yield RedexKind.GAMMA, lambda: contract_gamma(item, rest)


def _sum_sites(s: Sum) -> Iterator[Site]:
    for index, summand in enumerate(s):
        others = Sum(_others(s.summands, index))  # type: ignore[arg-type]
        for kind, fire in _sites(summand):
            yield kind, _mapped(fire, lambda r, others=others: others + r)


def redexes(s: Sum) -> List[RedexKind]:
    """Kinds of every redex occurrence, outermost-leftmost"""
    return [kind for kind, _ in _sum_sites(s)]


def is_normal(s: Sum) -> bool:
    return next(_sum_sites(s), None) is None


def step(s: Sum, strategy: Optional[Strategy] = None) -> Optional[Sum]:
    """
    Contract one redex, chosen by the strategy (leftmost-outermost when
    none is given)

    Returns:
        The reduct, or None when s is in normal form
    """
    strategy = strategy or Strategy()
    if strategy.seed is None:
        site = next(_sum_sites(s), None)
    else:
        sites = list(_sum_sites(s))
        site = sites[strategy.choose(len(sites))] if sites else None
    if site is None:
        return None
    kind, fire = site
    logger.debug("contracting %s redex", kind.value)
    return fire()


def normalize_with(s: Sum, strategy: Optional[Strategy] = None) -> Sum:
    """Iterate ``step`` under a strategy until no redex is left"""
    _require_promotion_free(s, "normalize")
    strategy = strategy or Strategy()
    while True:
        reduct = step(s, strategy)
        if reduct is None:
            return s
        s = reduct


# Big-step normalization


@lru_cache(maxsize=1 << 14)
def _nf(e: Expr) -> Sum:
    if isinstance(e, Var):
        return single(e)
    if isinstance(e, Lam):
        return lam_s(e.binder, _nf(e.body))
    if isinstance(e, App):
        parts = []
        for fun in _nf(e.fun):
            for bag in _nf(e.arg):
                if isinstance(fun, (Lam, TauBar)):
                    parts.append(_nf_sum(_contract_application(fun, bag)))  # type: ignore[arg-type]
                else:
                    parts.append(single(App(fun, bag)))  # type: ignore[arg-type]
        return Sum.union(parts)
    if isinstance(e, TauBar):
        return taubar_s(_nf(e.inner))
    if isinstance(e, Bag):
        return bag_s([_nf(item) for item in e.linear])
    if isinstance(e, Test):
        parts = []
        for choice in product(*(_nf(item) for item in e.elements)):
            parts.append(_nf_test(choice))  # type: ignore[arg-type]
        return Sum.union(parts)
    raise TypeError(f"not an expression: {e!r}")


def _nf_test(elements: Tuple[Term, ...]) -> Sum:
    """Normal form of a test whose elements are already normal"""
    for index, item in enumerate(elements):
        rest = _others(elements, index)
        if isinstance(item, Lam):
            return _nf_sum(contract_tau_lam(item, rest))
        if isinstance(item, TauBar):
            return _nf_sum(contract_gamma(item, rest))
    return single(Test(elements))


def _nf_sum(s: Sum) -> Sum:
    return Sum.union(_nf(item) for item in s)


def normalize(s: Sum) -> Sum:
    """
    Normal form of a promotion-free sum

    Raises:
        RlctError: NOT_PROMOTION_FREE for full-calculus input

    Example:
        ```python
        normalize(parse("D[I, F]"))  # F
        ```
    """
    _require_promotion_free(s, "normalize")
    return _nf_sum(s)


def _require_promotion_free(s: Sum, operation: str) -> None:
    if not sum_is_promotion_free(s):
        raise RlctError.not_promotion_free(operation)


# Head reduction


def _head_application(head: Term, bags: Tuple[Bag, ...]) -> Optional[Callable[[], Sum]]:
    if not bags or not isinstance(head, (Lam, TauBar)):
        return None
    return lambda: _contract_application(head, bags[0])


def _head_sites(e: Expr) -> List[Site]:
    if isinstance(e, Test):
        sites: List[Site] = []
        for index, item in enumerate(e.elements):
            rest = _others(e.elements, index)
            redex = list(_element_redex(e, index, item))
            if redex:
                sites.extend(redex)
                continue
            head, bags = spine(item)
            fire = _head_application(head, bags)
            if fire is not None:
                kind = RedexKind.BETA if isinstance(head, Lam) else RedexKind.TAUBAR_APP
                sites.append((kind, _mapped(fire, _rebuild_element(rest, bags[1:]))))
        return sites
    if isinstance(e, Bag):
        return []
    binders, body = strip_lams(e)
    head, bags = spine(body)
    fire = _head_application(head, bags)
    if fire is None:
        return []
    kind = RedexKind.BETA if isinstance(head, Lam) else RedexKind.TAUBAR_APP

    def rebuild(result: Sum) -> Sum:
        return Sum(lams(binders, apps(r, bags[1:])) for r in result)  # type: ignore[arg-type]

    return [(kind, _mapped(fire, rebuild))]


def _rebuild_element(rest: Tuple[Term, ...], bags: Tuple[Bag, ...]) -> Callable[[Sum], Sum]:
    def rebuild(result: Sum) -> Sum:
        element = Sum(apps(r, bags) for r in result)  # type: ignore[arg-type]
        return test_s([element] + [single(item) for item in rest])

    return rebuild


def is_head_normal(e: Expr) -> bool:
    """
    Head normal forms are \\x1..xn.y P1..Pk, \\x1..xn.tbar(V) and tests
    whose elements all have a variable head
    """
    return not _head_sites(e)


def head_steps(e: Expr) -> List[Sum]:
    """Every result of contracting one head redex of e"""
    return [fire() for _, fire in _head_sites(e)]


def head_step(s: Sum) -> Optional[Sum]:
    """
    Contract the leftmost head redex of the first reducible summand

    Returns:
        The reduct, or None when every summand is in head normal form
    """
    for index, summand in enumerate(s):
        sites = _head_sites(summand)
        if sites:
            kind, fire = sites[0]
            logger.debug("head step: %s redex in summand %d", kind.value, index)
            return Sum(_others(s.summands, index)) + fire()  # type: ignore[arg-type]
    return None


# Closed tests


def _closed_tests(v: TestLike) -> Sum:
    s = v if isinstance(v, Sum) else single(v)
    if s.sort not in (None, TEST):
        raise RlctError.sort_mismatch(TEST, str(s.sort))
    free = sum_free_vars(s)
    if free:
        raise RlctError.not_closed(free)
    return s


def closed_test_outcome(v: TestLike) -> Outcome:
    """
    Evaluate a closed promotion-free test by head reduction; the answer is
    always epsilon or zero

    Raises:
        RlctError: NOT_CLOSED, NOT_PROMOTION_FREE
    """
    s = _closed_tests(v)
    _require_promotion_free(s, "closed_test_outcome")
    while True:
        if EPSILON in s:
            return Outcome.epsilon()
        reduct = head_step(s)
        if reduct is None:
            # closed head normal tests other than eps do not exist
            return Outcome.zero()
        s = reduct


def _fair_step(summand: Expr) -> Sum:
    reduct = head_step(single(summand))
    return single(summand) if reduct is None else reduct


def converges(v: TestLike, fuel: Union[Fuel, int], memory: int = 4096) -> Outcome:
    """
    Fair head reduction of a closed test of either calculus

    Each round head-steps every reducible summand once. Stops with epsilon
    as soon as eps is a summand, with zero when the sum vanishes, and with
    an unknown outcome on a repeated state or after ``fuel`` rounds.

    Raises:
        RlctError: NOT_CLOSED
    """
    rounds = fuel.max_rounds if isinstance(fuel, Fuel) else Fuel(fuel).max_rounds
    s = _closed_tests(v)
    visited: "OrderedDict[tuple, None]" = OrderedDict()
    evicted = False
    for round_number in range(rounds + 1):
        if EPSILON in s:
            return Outcome.epsilon()
        if not s:
            return Outcome.zero()
        if s.keys in visited:
            logger.debug("state repeats after %d rounds", round_number)
            return Outcome.unknown(UnknownReason.CYCLE_DETECTED)
        visited[s.keys] = None
        if len(visited) > memory:
            visited.popitem(last=False)
            if not evicted:
                logger.warning("converges: visited-state memory of %d exceeded", memory)
                evicted = True
        if round_number == rounds:
            break
        s = Sum.union(_fair_step(summand) for summand in s)
    return Outcome.unknown(UnknownReason.FUEL_EXHAUSTED)

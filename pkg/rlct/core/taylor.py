"""
Taylor expansion of full-calculus expressions

The Taylor expansion of an expression is the set of its promotion-free
approximants: every promoted part [..; N!] is replaced by every finite
multiset of approximants of N. The set is infinite as soon as a promoted
part is nonempty, so it is handled through a containment check and an
enumeration bounded by the size of the approximants.
"""

import logging
from functools import lru_cache
from typing import Iterator, List, Optional, Sequence, Tuple, Union

from ..errors import RlctError
from .definability import member_by_test
from .model import Point
from .reduce import head_step, head_steps, is_head_normal
from .syntax import (
    App,
    Bag,
    Expr,
    Lam,
    Sum,
    TauBar,
    Term,
    Test,
    Var,
    canonical_key,
    is_promotion_free,
    single,
    sum_free_vars,
)

logger = logging.getLogger(__name__)

ExprLike = Union[Expr, Sum]
Binders = Tuple[str, ...]


def _bound_index(binders: Binders, name: str) -> Optional[int]:
    for depth, binder in enumerate(reversed(binders)):
        if binder == name:
            return depth
    return None


def _contains(c: Expr, a: Expr, cenv: Binders, aenv: Binders) -> bool:
    if isinstance(c, Var) and isinstance(a, Var):
        left, right = _bound_index(cenv, c.name), _bound_index(aenv, a.name)
        return left == right and (left is not None or c.name == a.name)
    if isinstance(c, Lam) and isinstance(a, Lam):
        return _contains(c.body, a.body, cenv + (c.binder,), aenv + (a.binder,))
    if isinstance(c, App) and isinstance(a, App):
        return _contains(c.fun, a.fun, cenv, aenv) and _contains(c.arg, a.arg, cenv, aenv)
    if isinstance(c, TauBar) and isinstance(a, TauBar):
        return _contains(c.inner, a.inner, cenv, aenv)
    if isinstance(c, Bag) and isinstance(a, Bag):
        if c.promoted:
            return False
        return _match(list(c.linear), list(a.linear), a.promoted, cenv, aenv)
    if isinstance(c, Test) and isinstance(a, Test):
        return len(c.elements) == len(a.elements) and _match(
            list(c.elements), list(a.elements), Sum(), cenv, aenv
        )
    return False


def _match(
    candidates: List[Term], pattern: List[Term], promoted: Sum, cenv: Binders, aenv: Binders
) -> bool:
    """
    Assign every pattern element its own candidate element; the candidates
    left over must each approximate some summand of the promoted part
    """
    if not pattern:
        return all(
            any(_contains(item, summand, cenv, aenv) for summand in promoted) for item in candidates
        )
    first, rest = pattern[0], pattern[1:]
    tried = set()
    for index, item in enumerate(candidates):
        key = canonical_key(item)
        if key in tried:
            continue
        tried.add(key)
        if _contains(item, first, cenv, aenv) and _match(
            candidates[:index] + candidates[index + 1 :], rest, promoted, cenv, aenv
        ):
            return True
    return False


def taylor_contains(candidate: Expr, a: ExprLike) -> bool:
    """
    Whether the promotion-free candidate belongs to the Taylor expansion of a

    Example:
        ```python
        taylor_contains(parse_one(r"\\x.x[x, x]"), parse_one(r"\\x.x[; x!]"))  # True
        ```

    Raises:
        RlctError: NOT_PROMOTION_FREE when the candidate has a promoted part
    """
    if not is_promotion_free(candidate):
        raise RlctError.not_promotion_free("taylor_contains")
    summands = a if isinstance(a, Sum) else single(a)
    return any(_contains(candidate, summand, (), ()) for summand in summands)


# Bounded enumeration

Sized = Tuple[Expr, int]


def _multisets(
    pool: Sequence[Sized], budget: int, start: int = 0
) -> Iterator[Tuple[Tuple[Term, ...], int]]:
    yield (), 0
    for index in range(start, len(pool)):
        item, weight = pool[index]
        if weight > budget:
            continue
        for rest, total in _multisets(pool, budget - weight, index):
            yield (item,) + rest, weight + total  # type: ignore[operator]


def _enum_seq(items: Sequence[Expr], budget: int) -> List[Tuple[Tuple[Expr, ...], int]]:
    if not items:
        return [((), 0)]
    results = []
    first, rest = items[0], items[1:]
    for head, size in _enum(first, budget - len(rest)):
        for tail, total in _enum_seq(rest, budget - size):
            results.append(((head,) + tail, size + total))
    return results


@lru_cache(maxsize=65536)
def _enum(e: Expr, budget: int) -> Tuple[Sized, ...]:
    """Approximants of e with their sizes, every size at most budget"""
    if budget < 1:
        return ()
    if isinstance(e, Var):
        return ((e, 1),)
    if isinstance(e, Lam):
        return tuple((Lam(e.binder, body), size + 1) for body, size in _enum(e.body, budget - 1))
    if isinstance(e, TauBar):
        return tuple((TauBar(inner), size + 1) for inner, size in _enum(e.inner, budget - 1))
    if isinstance(e, App):
        return tuple(
            (App(fun, arg), fsize + asize + 1)
            for fun, fsize in _enum(e.fun, budget - 2)
            for arg, asize in _enum(e.arg, budget - 1 - fsize)
        )
    if isinstance(e, Test):
        return tuple(
            (Test(elements), size + 1) for elements, size in _enum_seq(e.elements, budget - 1)
        )
    if isinstance(e, Bag):
        pool = {}
        for summand in e.promoted:
            for item, size in _enum(summand, budget - 1):
                pool.setdefault(canonical_key(item), (item, size))
        copies = sorted(pool.values(), key=lambda entry: (entry[1], canonical_key(entry[0])))
        results = []
        for linear, size in _enum_seq(e.linear, budget - 1):
            for extra, extra_size in _multisets(copies, budget - 1 - size):
                bag = Bag(linear + extra)  # type: ignore[operator]
                results.append((bag, size + extra_size + 1))
        return tuple(results)
    raise TypeError(f"not an expression: {e!r}")


def taylor_enumerate(a: ExprLike, size_bound: int) -> Sum:
    """
    Every element of the Taylor expansion of a whose size is at most
    ``size_bound``

    Raises:
        RlctError: VALIDATION_ERROR for a negative bound
    """
    if size_bound < 0:
        raise RlctError.validation_error("size_bound must be >= 0", {"size_bound": size_bound})
    summands = a if isinstance(a, Sum) else single(a)
    found = Sum(item for summand in summands for item, _ in _enum(summand, size_bound))
    logger.debug("taylor_enumerate: %d approximants of size <= %d", len(found), size_bound)
    return found


def simulation_check(a: ExprLike, a_elem: Expr) -> bool:
    """
    Head reduction of an approximant is simulated by head reduction of the
    expression it approximates: the head reduct of ``a_elem`` must lie in
    the Taylor expansion of some single head step of ``a``

    Raises:
        RlctError: PRECONDITION_VIOLATED when a_elem is not an approximant
            of a or has no head redex
    """
    if not taylor_contains(a_elem, a):
        raise RlctError.precondition_violated("not an element of the Taylor expansion")
    if is_head_normal(a_elem):
        raise RlctError.precondition_violated("the approximant is in head normal form")
    reduct = head_step(single(a_elem)) or Sum()
    summands = a if isinstance(a, Sum) else single(a)
    for summand in summands:
        for candidate in head_steps(summand):
            if all(taylor_contains(item, candidate) for item in reduct):
                return True
    logger.warning("simulation_check: no head step of the expression covers the reduct")
    return False


def taylor_member(m: ExprLike, p: Point, size_bound: int) -> bool:
    """
    Membership through approximants: true when some approximant of size at
    most ``size_bound`` passes the separating test at p; false only means
    that no witness exists within the bound

    Raises:
        RlctError: ENV_MISMATCH
    """
    summands = m if isinstance(m, Sum) else single(m)
    missing = set(sum_free_vars(summands)) - set(p.names)
    if missing:
        raise RlctError.env_mismatch(missing)
    for item in taylor_enumerate(summands, size_bound):
        if member_by_test(item, p):  # type: ignore[arg-type]
            logger.info("taylor_member: witness of size <= %d", size_bound)
            return True
    return False

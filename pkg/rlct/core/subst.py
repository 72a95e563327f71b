"""
Linear and ordinary substitution, extended to sums and bags

Linear substitution ``a<n/x>`` replaces exactly one free occurrence of x,
summing over the choices, and is 0 when x does not occur. In the full
calculus an occurrence inside a promoted part may also be chosen: the chosen
copy is moved into the linear part while the promoted part stays.
Ordinary substitution ``a[n/x]`` replaces every occurrence by the whole sum
n; it is linear in a but not in n.
"""

import logging
from typing import List, Sequence

from ..errors import RlctError
from .syntax import (
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
    bag_s,
    free_vars,
    freshen_binder,
    lam_s,
    single,
    sum_free_vars,
    taubar_s,
    test_s,
)

logger = logging.getLogger(__name__)


def _one_position(items: Sequence[Term], x: str, n: Term) -> List[List[Sum]]:
    """Linear positions of a multiset, one choice per occurrence-carrying item"""
    choices = []
    for i, item in enumerate(items):
        if x in free_vars(item):
            positions = [single(other) for other in items]
            positions[i] = linear_subst(item, x, n)
            choices.append(positions)
    return choices


def linear_subst(a: Expr, x: str, n: Term) -> Sum:
    """
    Linear substitution of the term n for one free occurrence of x in a

    Example:
        ```python
        # (\\y.y[x][x])<I/x> = \\y.y[I][x] + \\y.y[x][I]
        linear_subst(term, "x", identity)
        ```
    """
    if x not in free_vars(a):
        return ZERO
    if isinstance(a, Var):
        return single(n)
    if isinstance(a, Lam):
        lam = a
        if a.binder in free_vars(n):
            lam = freshen_binder(a, free_vars(n) | {x})
        return lam_s(lam.binder, linear_subst(lam.body, x, n))
    if isinstance(a, App):
        return app_s(linear_subst(a.fun, x, n), single(a.arg)) + app_s(
            single(a.fun), linear_subst(a.arg, x, n)
        )
    if isinstance(a, TauBar):
        return taubar_s(linear_subst(a.inner, x, n))
    if isinstance(a, Bag):
        parts = [bag_s(positions, a.promoted) for positions in _one_position(a.linear, x, n)]
        if x in sum_free_vars(a.promoted):
            copy = linear_subst_sum(a.promoted, x, single(n))
            linear = [single(item) for item in a.linear] + [copy]
            parts.append(bag_s(linear, a.promoted))
        return Sum.union(parts)
    if isinstance(a, Test):
        return Sum.union(test_s(positions) for positions in _one_position(a.elements, x, n))
    raise TypeError(f"not an expression: {a!r}")


def linear_subst_sum(a: Sum, x: str, n: Sum) -> Sum:
    """Bilinear extension: union over all pairs of summands"""
    return Sum.union(linear_subst(item, x, m) for item in a for m in n)  # type: ignore[arg-type]


def linear_subst_bag(a: Expr, x: str, p: Sequence[Term]) -> Sum:
    """
    Iterated linear substitution ``a<L1/x>...<Lk/x>``; ``a<[]/x> = a``

    Raises:
        RlctError: PRECONDITION_VIOLATED when x is free in the bag
    """
    if any(x in free_vars(item) for item in p):
        raise RlctError.precondition_violated(
            f"{x} must not occur free in the substituted bag", {"variable": x}
        )
    return linear_subst_bag_sum(single(a), x, p)


def linear_subst_bag_sum(a: Sum, x: str, p: Sequence[Term]) -> Sum:
    result = a
    for item in p:
        if not result:
            break
        result = linear_subst_sum(result, x, single(item))
    return result


def subst(a: Expr, x: str, n: Sum) -> Sum:
    """
    Capture-free substitution of the sum n for every free occurrence of x

    A promoted occurrence keeps the whole sum: ``(x[;x!])[(y+z)/x]`` is
    ``y[;(y+z)!] + z[;(y+z)!]``.
    """
    if x not in free_vars(a):
        return single(a)
    if isinstance(a, Var):
        return n
    if isinstance(a, Lam):
        lam = a
        if a.binder in sum_free_vars(n):
            lam = freshen_binder(a, sum_free_vars(n) | {x})
        return lam_s(lam.binder, subst(lam.body, x, n))
    if isinstance(a, App):
        return app_s(subst(a.fun, x, n), subst(a.arg, x, n))
    if isinstance(a, TauBar):
        return taubar_s(subst(a.inner, x, n))
    if isinstance(a, Bag):
        return bag_s([subst(item, x, n) for item in a.linear], subst_sum(a.promoted, x, n))
    if isinstance(a, Test):
        return test_s([subst(item, x, n) for item in a.elements])
    raise TypeError(f"not an expression: {a!r}")


def subst_sum(a: Sum, x: str, n: Sum) -> Sum:
    return Sum.union(subst(item, x, n) for item in a)

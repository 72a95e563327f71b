"""
Abstract syntax for terms, bags, tests and sums of the resource calculus

Both the promotion-free calculus and the full calculus share these node
classes: a promotion-free bag is simply a bag whose promoted part is the
empty sum. Nodes are immutable and hashable. Sums are idempotent sets of
same-sort expressions, deduplicated up to alpha-equivalence through a
canonical de Bruijn key, and stored in canonical order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Any, FrozenSet, Iterable, Iterator, Optional, Sequence, Tuple, Union

from ..errors import RlctError
from ..utils import GeneralUtils, MultisetUtils

logger = logging.getLogger(__name__)

TERM = "term"
BAG = "bag"
TEST = "test"

# Reserved variable marking the hole of a context; not a lexable identifier
HOLE = "<hole>"

Key = Tuple[Any, ...]


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Lam:
    binder: str
    body: "Term"


@dataclass(frozen=True)
class App:
    fun: "Term"
    arg: "Bag"


@dataclass(frozen=True)
class TauBar:
    inner: "Test"


class Sum:
    """
    Idempotent formal sum of expressions of a single sort

    The empty sum is 0. Inserting an alpha-equal summand is a no-op, and
    equality and hashing are alpha-equivalence on the whole set.

    Example:
        ```python
        Sum([Lam("x", Var("x")), Lam("y", Var("y"))])  # one summand
        ```
    """

    __slots__ = ("summands", "keys", "_hash")

    def __init__(self, items: Iterable["Expr"] = ()):
        table = {}
        for item in items:
            table.setdefault(canonical_key(item), item)
        sorts = {sort_of(item) for item in table.values()}
        if len(sorts) > 1:
            raise RlctError.mixed_sorts(sorts)
        ordered = sorted(table)
        self.keys: Tuple[Key, ...] = tuple(ordered)
        self.summands: Tuple["Expr", ...] = tuple(table[key] for key in ordered)
        self._hash = hash(self.keys)

    @classmethod
    def of(cls, *items: "Expr") -> "Sum":
        return cls(items)

    @property
    def sort(self) -> Optional[str]:
        """Sort of the summands, None for 0"""
        return sort_of(self.summands[0]) if self.summands else None

    def __iter__(self) -> Iterator["Expr"]:
        return iter(self.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __bool__(self) -> bool:
        return bool(self.summands)

    def __contains__(self, item: object) -> bool:
        return canonical_key(item) in self.keys  # type: ignore[arg-type]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Sum):
            return NotImplemented
        return self.keys == other.keys

    def __hash__(self) -> int:
        return self._hash

    def __add__(self, other: "Sum") -> "Sum":
        return Sum(self.summands + other.summands)

    def __repr__(self) -> str:
        return f"Sum({list(self.summands)!r})"

    @staticmethod
    def union(sums: Iterable["Sum"]) -> "Sum":
        return Sum(item for s in sums for item in s)


ZERO = Sum()


@dataclass(frozen=True)
class Bag:
    """
    Argument of an application: a multiset of linear resources and a
    promoted sum (the ``!`` part), where the empty sum means no promotion
    """

    linear: Tuple["Term", ...] = ()
    promoted: Sum = field(default=ZERO)

    def __post_init__(self) -> None:
        if self.promoted.sort not in (None, TERM):
            raise RlctError.sort_mismatch(TERM, str(self.promoted.sort))
        object.__setattr__(self, "linear", _canonical_order(self.linear))


@dataclass(frozen=True)
class Test:
    """Multiset of terms under tau; the empty test is epsilon"""

    __test__ = False

    elements: Tuple["Term", ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "elements", _canonical_order(self.elements))


Term = Union[Var, Lam, App, TauBar]
Expr = Union[Var, Lam, App, TauBar, Bag, Test]



def sort_of(e: Expr) -> str:
    if isinstance(e, Bag):
        return BAG
    if isinstance(e, Test):
        return TEST
    if isinstance(e, (Var, Lam, App, TauBar)):
        return TERM
    raise TypeError(f"not an expression: {e!r}")


# Canonical forms


@lru_cache(maxsize=1 << 16)
def _key(e: Expr, env: Tuple[str, ...]) -> Key:
    if isinstance(e, Var):
        for depth, name in enumerate(reversed(env)):
            if name == e.name:
                return (0, depth, "")
        return (1, 0, e.name)
    if isinstance(e, Lam):
        return (2, _key(e.body, env + (e.binder,)))
    if isinstance(e, App):
        return (3, _key(e.fun, env), _key(e.arg, env))
    if isinstance(e, TauBar):
        return (4, _key(e.inner, env))
    if isinstance(e, Bag):
        return (
            5,
            tuple(sorted(_key(item, env) for item in e.linear)),
            tuple(sorted(_key(item, env) for item in e.promoted)),
        )
    if isinstance(e, Test):
        return (6, tuple(sorted(_key(item, env) for item in e.elements)))
    raise TypeError(f"not an expression: {e!r}")


def canonical_key(e: Expr) -> Key:
    """
    Nameless key of an expression: bound variables become binder distances,
    multisets are sorted. Two expressions are alpha-equal iff their keys are
    equal, and keys are totally ordered.
    """
    return _key(e, ())


def _canonical_order(items: Sequence["Term"]) -> Tuple["Term", ...]:
    return tuple(sorted(items, key=canonical_key))


EPSILON = Test()
EMPTY_BAG = Bag()


def alpha_eq(a: Expr, b: Expr) -> bool:
    """Alpha-equivalence, decided on canonical keys"""
    return canonical_key(a) == canonical_key(b)


# Variables


@lru_cache(maxsize=1 << 16)
def free_vars(e: Expr) -> FrozenSet[str]:
    """
    Free variables, including those occurring under a promoted part

    Example:
        >>> sorted(free_vars(Lam("x", App(Var("x"), Bag((Var("y"),))))))
        ['y']
    """
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, Lam):
        return free_vars(e.body) - {e.binder}
    if isinstance(e, App):
        return free_vars(e.fun) | free_vars(e.arg)
    if isinstance(e, TauBar):
        return free_vars(e.inner)
    if isinstance(e, Bag):
        return frozenset().union(
            *(free_vars(item) for item in e.linear),
            *(free_vars(item) for item in e.promoted),
        )
    if isinstance(e, Test):
        return frozenset().union(*(free_vars(item) for item in e.elements))
    raise TypeError(f"not an expression: {e!r}")


def sum_free_vars(s: Sum) -> FrozenSet[str]:
    return frozenset().union(*(free_vars(item) for item in s))


# Not memoised: bags compare up to alpha, their binder names do not.
def all_names(e: Expr) -> FrozenSet[str]:
    """Every variable name occurring in ``e``, bound or free"""
    if isinstance(e, Var):
        return frozenset((e.name,))
    if isinstance(e, Lam):
        return all_names(e.body) | {e.binder}
    return frozenset().union(*(all_names(child) for child in children(e)))


def children(e: Expr) -> Tuple[Expr, ...]:
    """Immediate subexpressions, promoted summands included"""
    if isinstance(e, Var):
        return ()
    if isinstance(e, Lam):
        return (e.body,)
    if isinstance(e, App):
        return (e.fun, e.arg)
    if isinstance(e, TauBar):
        return (e.inner,)
    if isinstance(e, Bag):
        return e.linear + e.promoted.summands
    if isinstance(e, Test):
        return e.elements
    raise TypeError(f"not an expression: {e!r}")


def is_closed(e: Expr) -> bool:
    return not free_vars(e)


def fresh_var(base: str, *avoid_in: Iterable[str]) -> str:
    avoid = set()
    for names in avoid_in:
        avoid.update(names)
    return GeneralUtils.fresh_name(base, avoid)


def rename_free(e: Expr, old: str, new: str) -> Expr:
    """
    Rename free occurrences of ``old`` to ``new``; ``new`` must not occur in
    ``e`` at all, so no capture can happen
    """
    if old not in free_vars(e):
        return e
    if isinstance(e, Var):
        return Var(new)
    if isinstance(e, Lam):
        return Lam(e.binder, rename_free(e.body, old, new))  # type: ignore[arg-type]
    if isinstance(e, App):
        fun, arg = rename_free(e.fun, old, new), rename_free(e.arg, old, new)
        return App(fun, arg)  # type: ignore[arg-type]
    if isinstance(e, TauBar):
        return TauBar(rename_free(e.inner, old, new))  # type: ignore[arg-type]
    if isinstance(e, Bag):
        return Bag(
            tuple(rename_free(item, old, new) for item in e.linear),  # type: ignore[misc]
            Sum(rename_free(item, old, new) for item in e.promoted),
        )
    if isinstance(e, Test):
        return Test(tuple(rename_free(item, old, new) for item in e.elements))  # type: ignore[misc]
    raise TypeError(f"not an expression: {e!r}")


def freshen_binder(lam: Lam, avoid: Iterable[str]) -> Lam:
    """Alpha-rename the binder of ``lam`` away from ``avoid``"""
    new = fresh_var(lam.binder, avoid, all_names(lam.body))
    if new == lam.binder:
        return lam
    return Lam(new, rename_free(lam.body, lam.binder, new))  # type: ignore[arg-type]


# Fragments


@lru_cache(maxsize=1 << 16)
def is_promotion_free(e: Expr) -> bool:
    if isinstance(e, Bag) and e.promoted:
        return False
    return all(is_promotion_free(child) for child in children(e))


@lru_cache(maxsize=1 << 16)
def is_test_free(e: Expr) -> bool:
    if isinstance(e, (TauBar, Test)):
        return False
    return all(is_test_free(child) for child in children(e))


def sum_is_promotion_free(s: Sum) -> bool:
    return all(is_promotion_free(item) for item in s)


def sum_is_test_free(s: Sum) -> bool:
    return all(is_test_free(item) for item in s)


# Measures


def degree(x: str, e: Expr) -> int:
    """
    Number of free occurrences of ``x``

    Raises:
        RlctError: DEGREE_UNDEFINED when ``x`` occurs free in a promoted part
    """
    if isinstance(e, Var):
        return 1 if e.name == x else 0
    if isinstance(e, Lam):
        return 0 if e.binder == x else degree(x, e.body)
    if isinstance(e, Bag):
        if any(x in free_vars(item) for item in e.promoted):
            raise RlctError.degree_undefined(x)
        return sum(degree(x, item) for item in e.linear)
    return sum(degree(x, child) for child in children(e))


@lru_cache(maxsize=1 << 16)
def size(e: Expr) -> int:
    """
    Size of an expression; a nonempty promoted part counts one plus the
    sizes of its summands

    Example:
        >>> size(App(Var("x"), Bag()))
        3
    """
    if isinstance(e, Var):
        return 1
    if isinstance(e, Bag):
        promoted = 1 + sum(size(item) for item in e.promoted) if e.promoted else 0
        return 1 + sum(size(item) for item in e.linear) + promoted
    return 1 + sum(size(child) for child in children(e))


def msize(s: Sum) -> Tuple[int, ...]:
    """Multiset of the sizes of the summands, sorted"""
    return tuple(sorted(size(item) for item in s))


def msize_lt(a: Sequence[int], b: Sequence[int]) -> bool:
    return MultisetUtils.multiset_lt(a, b)


# Multilinear constructors: 0 annihilates, sums distribute


def single(e: Expr) -> Sum:
    return Sum((e,))


def lam_s(binder: str, body: Sum) -> Sum:
    return Sum(Lam(binder, item) for item in body)  # type: ignore[arg-type]


def lams(binders: Sequence[str], body: "Term") -> "Term":
    for binder in reversed(binders):
        body = Lam(binder, body)
    return body


def app_s(fun: Sum, arg: Sum) -> Sum:
    return Sum(App(m, p) for m in fun for p in arg)  # type: ignore[arg-type]


def apps(fun: "Term", bags: Sequence[Bag]) -> "Term":
    for bag in bags:
        fun = App(fun, bag)
    return fun


def taubar_s(inner: Sum) -> Sum:
    return Sum(TauBar(v) for v in inner)  # type: ignore[arg-type]


def bag_s(linear: Sequence[Sum], promoted: Sum = ZERO) -> Sum:
    """
    Bag whose linear positions range over sums; the promoted sum is kept
    whole, never distributed
    """
    return Sum(Bag(tuple(choice), promoted) for choice in product(*linear))


def test_s(elements: Sequence[Sum]) -> Sum:
    return Sum(Test(tuple(choice)) for choice in product(*elements))


def bag_union(p: Bag, q: Bag) -> Bag:
    """Monoid on bags: linear parts add, promoted parts are summed"""
    return Bag(p.linear + q.linear, p.promoted + q.promoted)


def test_par(v: Test, w: Test) -> Test:
    """Parallel composition; epsilon is neutral"""
    return Test(v.elements + w.elements)


def test_par_s(v: Sum, w: Sum) -> Sum:
    return Sum(test_par(a, b) for a in v for b in w)  # type: ignore[arg-type]


def spine(m: "Term") -> Tuple["Term", Tuple[Bag, ...]]:
    """Split ``h P1 ... Pn`` into its head and its bags"""
    bags = []
    while isinstance(m, App):
        bags.append(m.arg)
        m = m.fun
    return m, tuple(reversed(bags))


def strip_lams(m: "Term") -> Tuple[Tuple[str, ...], "Term"]:
    binders = []
    while isinstance(m, Lam):
        binders.append(m.binder)
        m = m.body
    return tuple(binders), m


# Contexts


def count_holes(e: Expr) -> int:
    if isinstance(e, Var):
        return 1 if e.name == HOLE else 0
    return sum(count_holes(child) for child in children(e))


def plug(e: Expr, m: "Term") -> Expr:
    """Replace the hole by ``m`` blindly: binders above the hole may capture"""
    if isinstance(e, Var):
        return m if e.name == HOLE else e
    if isinstance(e, Lam):
        return Lam(e.binder, plug(e.body, m))  # type: ignore[arg-type]
    if isinstance(e, App):
        return App(plug(e.fun, m), plug(e.arg, m))  # type: ignore[arg-type]
    if isinstance(e, TauBar):
        return TauBar(plug(e.inner, m))  # type: ignore[arg-type]
    if isinstance(e, Bag):
        return Bag(
            tuple(plug(item, m) for item in e.linear),  # type: ignore[misc]
            Sum(plug(item, m) for item in e.promoted),
        )
    return Test(tuple(plug(item, m) for item in e.elements))  # type: ignore[union-attr, misc]


@dataclass(frozen=True)
class Context:
    """An expression with exactly one hole in term position"""

    body: Expr
    expected_sort = TERM

    def __post_init__(self) -> None:
        if sort_of(self.body) != self.expected_sort:
            raise RlctError.sort_mismatch(self.expected_sort, sort_of(self.body))
        holes = count_holes(self.body)
        if holes != 1:
            raise RlctError.precondition_violated(
                f"a context needs exactly one hole, found {holes}", {"holes": holes}
            )

    def fill(self, m: "Term") -> Expr:
        return plug(self.body, m)


class TermContext(Context):
    expected_sort = TERM


class TestContext(Context):
    __test__ = False
    expected_sort = TEST

    def fill(self, m: "Term") -> "Test":
        return plug(self.body, m)  # type: ignore[return-value]


def hole() -> Var:
    return Var(HOLE)

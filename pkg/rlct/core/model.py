"""
The relational model D

An element of D is a finite sequence of finite multisets of elements of D,
read as an infinite sequence padded with empty multisets. The empty sequence
is ``*`` and ``a::alpha`` prepends a multiset. Membership of a point in the
interpretation of a promotion-free term is decided on normal forms by
structural recursion, splitting environments over subterms according to
variable degrees.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple, Union

from lark import Transformer

from ..errors import RlctError
from ..utils import MultisetUtils
from .parser import parse_tree, transform
from .reduce import is_normal, normalize
from .syntax import (
    Bag,
    Expr,
    Lam,
    Sum,
    TauBar,
    Term,
    Var,
    degree,
    free_vars,
    is_promotion_free,
    single,
    spine,
    sum_free_vars,
    sum_is_promotion_free,
)

logger = logging.getLogger(__name__)

Multiset = Tuple["DElem", ...]


@lru_cache(maxsize=None)
def delem_key(alpha: "DElem") -> tuple:
    """Total order: by length, then level by level, recursively"""
    return (
        len(alpha.levels),
        tuple(tuple(delem_key(member) for member in level) for level in alpha.levels),
    )


def _sorted_mset(items: Iterable["DElem"]) -> Multiset:
    return tuple(sorted(items, key=delem_key))


@dataclass(frozen=True)
class DElem:
    """
    Element of D in canonical form: each level sorted, no trailing empty
    level, so ``*`` is the empty tuple of levels
    """

    levels: Tuple[Multiset, ...] = ()

    def __post_init__(self) -> None:
        levels = [_sorted_mset(level) for level in self.levels]
        while levels and not levels[-1]:
            levels.pop()
        object.__setattr__(self, "levels", tuple(levels))

    def __str__(self) -> str:
        return print_delem(self)


STAR = DElem()


def cons(a: Iterable[DElem], alpha: DElem) -> DElem:
    """a::alpha"""
    return DElem((tuple(a),) + alpha.levels)


def head(alpha: DElem) -> Multiset:
    return alpha.levels[0] if alpha.levels else ()


def tail(alpha: DElem) -> DElem:
    return DElem(alpha.levels[1:])


@lru_cache(maxsize=None)
def rank(alpha: DElem) -> int:
    """Least n such that alpha lies in the n+1-th approximant of D"""
    if not alpha.levels:
        return 0
    return 1 + max(rank(member) for level in alpha.levels for member in level)


def length(alpha: DElem) -> int:
    return len(alpha.levels)


# Enumeration, graded by weight: w(*) = 1, each level adds 1 plus its members


@lru_cache(maxsize=None)
def weight(alpha: DElem) -> int:
    return 1 + sum(1 + sum(weight(member) for member in level) for level in alpha.levels)


def _max_weight(max_rank: int, max_width: int, max_length: int) -> int:
    bound = 1
    for _ in range(max_rank):
        bound = 1 + max_length * (1 + max_width * bound)
    return bound


@lru_cache(maxsize=None)
def _of_weight(n: int, r: int, w: int, l: int) -> Tuple[DElem, ...]:
    """Elements of weight n and rank at most r, in canonical order"""
    if n == 1:
        return (STAR,)
    if r == 0:
        return ()
    found = [DElem(levels) for levels in _level_seqs(n - 1, r, w, l, l)]
    return tuple(sorted(found, key=delem_key))


@lru_cache(maxsize=None)
def _level_seqs(
    m: int, r: int, w: int, l: int, slots: int
) -> Tuple[Tuple[Multiset, ...], ...]:
    """Level sequences of total weight m, at most ``slots`` long, last level nonempty"""
    if slots == 0:
        return ()
    found = []
    for first_weight in range(1, m + 1):
        for first in _msets(first_weight - 1, r, w, l):
            rest_weight = m - first_weight
            if rest_weight == 0:
                if first:
                    found.append((first,))
            else:
                for rest in _level_seqs(rest_weight, r, w, l, slots - 1):
                    found.append((first,) + rest)
    return tuple(found)


@lru_cache(maxsize=None)
def _msets(total: int, r: int, w: int, l: int) -> Tuple[Multiset, ...]:
    """Multisets of at most w members of rank < r whose weights add to total"""
    pool = [(n, alpha) for n in range(1, total + 1) for alpha in _of_weight(n, r - 1, w, l)]
    found: List[Multiset] = []

    def walk(start: int, left: int, chosen: Tuple[DElem, ...]) -> None:
        if left == 0:
            found.append(_sorted_mset(chosen))
            return
        if len(chosen) == w:
            return
        for index in range(start, len(pool)):
            n, alpha = pool[index]
            if n <= left:
                walk(index, left - n, chosen + (alpha,))

    walk(0, total, ())
    return tuple(found)


def iter_D(max_rank: int, max_width: int, max_length: int) -> Iterator[DElem]:
    """
    Lazily yield every element within the bounds, lightest first; usable
    with ``islice`` on slices too large to materialize
    """
    if min(max_rank, max_width, max_length) < 0:
        raise RlctError.validation_error("model bounds must be non-negative")
    for n in range(1, _max_weight(max_rank, max_width, max_length) + 1):
        yield from _of_weight(n, max_rank, max_width, max_length)


def enumerate_D(max_rank: int, max_width: int, max_length: int) -> List[DElem]:
    """
    Every canonical element with rank, multiset cardinalities and length
    within the bounds, in canonical order

    Example:
        >>> [str(a) for a in enumerate_D(1, 1, 1)]
        ['*', '[*]::*']
    """
    return sorted(iter_D(max_rank, max_width, max_length), key=delem_key)


# Points


Env = Tuple[Tuple[str, Multiset], ...]


@dataclass(frozen=True)
class Point:
    """An environment of multisets over D, one per variable, and a target"""

    env: Env
    target: DElem

    def __post_init__(self) -> None:
        names = [name for name, _ in self.env]
        if len(set(names)) != len(names):
            raise RlctError.validation_error("point binds a variable twice", {"names": names})
        env = tuple(sorted((name, _sorted_mset(mset)) for name, mset in self.env))
        object.__setattr__(self, "env", env)

    @classmethod
    def of(cls, env: Mapping[str, Sequence[DElem]], target: DElem) -> "Point":
        return cls(tuple((name, tuple(mset)) for name, mset in env.items()), target)

    def env_dict(self) -> Dict[str, Multiset]:
        return dict(self.env)

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.env)

    def __str__(self) -> str:
        return print_point(self)


def enumerate_points(
    names: Sequence[str], elements: Sequence[DElem], max_card: int
) -> List[Point]:
    """All points over ``names`` drawing multisets and targets from ``elements``"""
    msets = list(MultisetUtils.multisets_up_to(_sorted_mset(elements), max_card))
    points = []
    for choice in product(msets, repeat=len(names)):
        for target in elements:
            points.append(Point(tuple(zip(names, choice)), target))
    return points


# Text form


def print_mset(a: Multiset) -> str:
    return "[" + ", ".join(print_delem(member) for member in a) + "]"


def print_delem(alpha: DElem) -> str:
    return "".join(print_mset(level) + "::" for level in alpha.levels) + "*"


def print_point(p: Point) -> str:
    bindings = "; ".join(f"{name}={print_mset(mset)}" for name, mset in p.env)
    return f"{bindings} |- {print_delem(p.target)}" if bindings else f"|- {print_delem(p.target)}"


class DElemBuilder(Transformer):
    def star(self, _items: list) -> DElem:
        return STAR

    def cons(self, items: list) -> DElem:
        return cons(items[0], items[1])

    def mset(self, items: list) -> Multiset:
        return tuple(items[0] or ())

    def delems(self, items: list) -> list:
        return list(items)

    def point(self, items: list) -> Point:
        bindings, target = items
        return Point(tuple(bindings or ()), target)

    def bindings(self, items: list) -> list:
        return list(items)

    def binding(self, items: list) -> Tuple[str, Multiset]:
        return str(items[0]), items[1]


def parse_delem(text: str) -> DElem:
    """Parse ``*`` or ``[d, ...]::d``"""
    return transform(DElemBuilder(), parse_tree(text, "delem"))


def parse_point(text: str) -> Point:
    """Parse ``x=[d, ...]; y=[...] |- d``"""
    return transform(DElemBuilder(), parse_tree(text, "point"))


# Membership


def _env_get(env: Env, name: str) -> Multiset:
    for bound, mset in env:
        if bound == name:
            return mset
    return ()


def _with(env: Env, name: str, mset: Multiset) -> Env:
    rest = tuple(entry for entry in env if entry[0] != name)
    if not mset:
        return rest
    return tuple(sorted(rest + ((name, mset),)))


def _consistent(e: Expr, env: Env) -> bool:
    """Linearity: each free variable receives exactly as many points as it has occurrences"""
    free = free_vars(e)
    if any(name not in free for name, _ in env):
        return False
    return all(len(_env_get(env, name)) == degree(name, e) for name in free)


def _splits(env: Env, part: Expr) -> Iterator[Tuple[Env, Env]]:
    """Ways to hand part of ``env`` to the subexpression ``part``"""
    free = sorted(free_vars(part))
    options = []
    for name in free:
        mset = _env_get(env, name)
        options.append(list(MultisetUtils.sub_multisets(mset, degree(name, part))))
    for choice in product(*options):
        mine: Env = ()
        rest = env
        for name, (taken, left) in zip(free, choice):
            mine = _with(mine, name, taken)
            rest = _with(rest, name, left)
        yield mine, rest


@lru_cache(maxsize=1 << 16)
def _member_term(m: Term, env: Env, alpha: DElem) -> bool:
    if not _consistent(m, env):
        return False
    if isinstance(m, Var):
        return env == ((m.name, (alpha,)),)
    if isinstance(m, Lam):
        return _member_term(m.body, _with(env, m.binder, head(alpha)), tail(alpha))
    if isinstance(m, TauBar):
        elements = m.inner.elements
        return alpha == STAR and _member_elements(elements, (STAR,) * len(elements), env)
    fun, bags = spine(m)
    if not isinstance(fun, Var):
        raise RlctError.not_normal_form()
    return _member_application(fun.name, bags, env, alpha)


def _member_application(x: str, bags: Tuple[Bag, ...], env: Env, alpha: DElem) -> bool:
    """
    The head occurrence takes some b1::...::bn::alpha from env(x); the rest
    is split over the bags
    """
    candidates = _env_get(env, x)
    n = len(bags)
    for beta, _ in MultisetUtils.group(candidates):
        padded = beta.levels + ((),) * max(0, n - len(beta.levels))
        if DElem(padded[n:]) != alpha:
            continue
        remaining = list(candidates)
        remaining.remove(beta)
        rest = _with(env, x, tuple(remaining))
        if _member_bags(bags, padded[:n], rest):
            return True
    return False


def _member_bags(bags: Sequence[Bag], targets: Sequence[Multiset], env: Env) -> bool:
    if not bags:
        return not env
    for mine, rest in _splits(env, bags[0]):
        if _member_elements(bags[0].linear, targets[0], mine) and _member_bags(
            bags[1:], targets[1:], rest
        ):
            return True
    return False


def _member_elements(items: Sequence[Term], targets: Multiset, env: Env) -> bool:
    """Match a multiset of terms against a multiset of targets, splitting env"""
    if len(items) != len(targets):
        return False
    if not items:
        return not env
    first, others = items[0], items[1:]
    for beta, _ in MultisetUtils.group(targets):
        remaining = list(targets)
        remaining.remove(beta)
        for mine, rest in _splits(env, first):
            if _member_term(first, mine, beta) and _member_elements(others, tuple(remaining), rest):
                return True
    return False


def _require_env(free: Iterable[str], p: Point) -> None:
    missing = set(free) - set(p.names)
    if missing:
        raise RlctError.env_mismatch(missing)


def _point_env(p: Point) -> Env:
    return tuple((name, mset) for name, mset in p.env if mset)


def interp_member_nf(m: Term, p: Point) -> bool:
    """
    Decide whether the point lies in the interpretation of a normal term

    Raises:
        RlctError: NOT_PROMOTION_FREE, NOT_NORMAL_FORM, ENV_MISMATCH
    """
    if not is_promotion_free(m):
        raise RlctError.not_promotion_free("interp_member_nf")
    if not is_normal(single(m)):
        raise RlctError.not_normal_form()
    _require_env(free_vars(m), p)
    return _member_term(m, _point_env(p), p.target)


def interp_member(m: Union[Term, Sum], p: Point) -> bool:
    """
    Membership for any promotion-free term: the interpretation is invariant
    under reduction, so the normal form decides

    Raises:
        RlctError: NOT_PROMOTION_FREE, ENV_MISMATCH
    """
    s = m if isinstance(m, Sum) else single(m)
    if not sum_is_promotion_free(s):
        raise RlctError.not_promotion_free("interp_member")
    _require_env(sum_free_vars(s), p)
    env = _point_env(p)
    return any(_member_term(n, env, p.target) for n in normalize(s))  # type: ignore[arg-type]


def interp_nonempty(m: Union[Term, Sum]) -> bool:
    """The interpretation is nonempty iff the normal form is not 0"""
    s = m if isinstance(m, Sum) else single(m)
    return bool(normalize(s))

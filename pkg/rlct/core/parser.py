"""
Parser for the concrete syntax, built on lark

The grammar lives in ``grammar.lark`` next to this module and has one start
symbol per input kind (expressions, model elements, points, index maps).
Multilinear sugar is expanded while building: every rule produces a Sum.
"""

import logging
from functools import lru_cache
from typing import Any, List, Optional, Sequence

from lark import Lark, Transformer, Tree
from lark.exceptions import UnexpectedInput, VisitError

from ..errors import RlctError
from .syntax import (
    EPSILON,
    HOLE,
    TERM,
    TEST,
    ZERO,
    App,
    Bag,
    Lam,
    Sum,
    Term,
    Var,
    app_s,
    bag_s,
    lam_s,
    lams,
    single,
    taubar_s,
    test_par_s,
    test_s,
)

logger = logging.getLogger(__name__)

PRELUDE_SOURCE = {
    "I": r"\x.x",
    "T": r"\x y.x",
    "F": r"\x y.y",
    "D": r"\x.x[x]",
    "Delta": r"\x.x[; x!]",
    "Omega": "Delta[; Delta!]",
}
RESERVED = frozenset(PRELUDE_SOURCE) | {HOLE}

START_SYMBOLS = ["start", "delem", "point", "ellmap"]


@lru_cache(maxsize=None)
def get_parser() -> Lark:
    return Lark.open(
        "grammar.lark",
        rel_to=__file__,
        parser="lalr",
        start=START_SYMBOLS,
        maybe_placeholders=True,
    )


def parse_tree(text: str, start: str = "start") -> Tree:
    """
    Run the lark parser, converting its errors

    Raises:
        RlctError: PARSE_ERROR with line and column details
    """
    try:
        return get_parser().parse(text, start=start)
    except UnexpectedInput as e:
        line = e.line if e.line > 0 else None
        column = e.column if e.column > 0 else None
        where = f" at line {line}, column {column}" if line is not None else " at end of input"
        raise RlctError.parse_error(f"unexpected input{where}", line, column)


def transform(transformer: Transformer, tree: Tree) -> Any:
    """Apply a transformer, unwrapping errors raised by its callbacks"""
    try:
        return transformer.transform(tree)
    except VisitError as e:
        if isinstance(e.orig_exc, RlctError):
            raise e.orig_exc
        raise


def expect_sort(s: Sum, sort: str) -> Sum:
    if s.sort not in (None, sort):
        raise RlctError.sort_mismatch(sort, str(s.sort))
    return s


def xi(ns: Sequence[int]) -> Term:
    """
    Xi(n1, ..., nm) = \\x1 ... xm.I[x1]^n1 ... [xm]^nm, where [x]^n stands
    for n successive singleton bags
    """
    binders = [f"x{i}" for i in range(1, len(ns) + 1)]
    body: Term = Lam("x", Var("x"))
    for binder, count in zip(binders, ns):
        for _ in range(count):
            body = App(body, Bag((Var(binder),)))
    return lams(binders, body)


@lru_cache(maxsize=None)
def prelude(name: str) -> Sum:
    return parse(PRELUDE_SOURCE[name])


def prelude_name(s: Sum) -> Optional[str]:
    """Name of the prelude constant alpha-equal to s, if there is one"""
    for name in PRELUDE_SOURCE:
        if prelude(name) == s:
            return name
    return None


class ExprBuilder(Transformer):
    """Builds canonical sums bottom-up, checking sorts at every constructor"""

    def start(self, items: List[Sum]) -> Sum:
        return items[0]

    def sum(self, items: List[Sum]) -> Sum:
        return Sum.union(items)

    def addend(self, items: List[Sum]) -> Sum:
        if len(items) == 1:
            return items[0]
        result = expect_sort(items[0], TEST)
        for item in items[1:]:
            result = test_par_s(result, expect_sort(item, TEST))
        return result

    def lam(self, items: List[Any]) -> Sum:
        *binders, body = items
        result = expect_sort(body, TERM)
        for token in reversed(binders):
            name = str(token)
            if name in RESERVED:
                raise RlctError.parse_error(
                    f"{name} is a prelude constant and cannot be bound",
                    token.line,
                    token.column,
                )
            result = lam_s(name, result)
        return result

    def app(self, items: List[Sum]) -> Sum:
        head, *bags = items
        if not bags:
            return head
        result = expect_sort(head, TERM)
        for bag in bags:
            result = app_s(result, bag)
        return result

    def var(self, items: List[Any]) -> Sum:
        name = str(items[0])
        if name in PRELUDE_SOURCE:
            return prelude(name)
        return single(Var(name))

    def zero(self, _items: List[Any]) -> Sum:
        return ZERO

    def group(self, items: List[Sum]) -> Sum:
        return items[0]

    def taubar(self, items: List[Sum]) -> Sum:
        return taubar_s(expect_sort(items[0], TEST))

    def tau(self, items: List[Optional[List[Sum]]]) -> Sum:
        elements = items[0] or []
        return test_s([expect_sort(e, TERM) for e in elements])

    def eps(self, _items: List[Any]) -> Sum:
        return single(EPSILON)

    def xi(self, items: List[Optional[List[int]]]) -> Sum:
        return single(xi(items[0] or []))

    def bag(self, items: List[Any]) -> Sum:
        elements, promoted = items
        linear = [expect_sort(e, TERM) for e in elements or []]
        return bag_s(linear, ZERO if promoted is None else expect_sort(promoted, TERM))

    def elems(self, items: List[Sum]) -> List[Sum]:
        return list(items)

    def ints(self, items: List[Any]) -> List[int]:
        return [int(token) for token in items]


def parse(text: str) -> Sum:
    """
    Parse an expression of either calculus into its canonical sum

    Args:
        text: Source text, e.g. ``"\\x.x[y; z!]"`` or ``"tau[I] | eps"``

    Returns:
        Canonical Sum; sort is available as ``result.sort``

    Raises:
        RlctError: PARSE_ERROR or SORT_MISMATCH

    Example:
        ```python
        parse(r"\\x.(x + x)")  # the single summand \\x.x
        ```
    """
    result = transform(ExprBuilder(), parse_tree(text))
    logger.debug("parsed %d summand(s) of sort %s", len(result), result.sort)
    return result

"""
Printer for the concrete syntax; ``parse(print_sum(s))`` is alpha-equal to s
"""

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
    spine,
    strip_lams,
)


def print_sum(s: Sum) -> str:
    """
    Render a sum in canonical summand order, ``0`` when empty

    Example:
        ```python
        print_sum(parse(r"\\x y.x"))  # "\\x y.x"
        ```
    """
    if not s:
        return "0"
    return " + ".join(print_expr(e) for e in s)


def print_expr(e: Expr) -> str:
    if isinstance(e, Bag):
        return _bag(e)
    if isinstance(e, Test):
        return _test(e)
    return _term(e)


def _term(m: Term) -> str:
    if isinstance(m, Lam):
        binders, body = strip_lams(m)
        return "\\" + " ".join(binders) + "." + _term(body)
    head, bags = spine(m)
    return _atom(head) + "".join(_bag(bag) for bag in bags)


def _atom(m: Term) -> str:
    if isinstance(m, Var):
        return m.name
    if isinstance(m, TauBar):
        return f"tbar({_test(m.inner)})"
    if isinstance(m, (Lam, App)):
        return f"({_term(m)})"
    raise TypeError(f"not a term: {m!r}")


def _bag(bag: Bag) -> str:
    text = ", ".join(_term(item) for item in bag.linear)
    if bag.promoted:
        promoted = print_sum(bag.promoted)
        if len(bag.promoted) > 1:
            promoted = f"({promoted})"
        text += f"; {promoted}!"
    return f"[{text}]"


def _test(v: Test) -> str:
    if not v.elements:
        return "eps"
    return "tau[" + ", ".join(_term(item) for item in v.elements) + "]"

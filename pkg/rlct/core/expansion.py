"""
Test expansion: eliminating tests from promotion-free expressions

Every tbar occurrence and every test element is decorated with a distinct
index. Given a map from indices to naturals, a labelled expression expands
to a test-free term: tbar_i(V) becomes a block of dummy abstractions and a
test element (L)_i is applied to a block of empty bags, their lengths read
from the map. Convergent closed tests expand to solvable terms for a
suitable map, divergent ones to unsolvable terms once the map is shifted
far enough; both facts are realized here as bounded searches.
"""

import logging
from dataclasses import dataclass
from itertools import count
from typing import Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple, Union

from lark import Transformer

from ..errors import RlctError
from .definability import separating_context
from .model import Point, interp_member
from .parser import parse_tree, transform
from .reduce import closed_test_outcome, normalize
from .syntax import (
    EMPTY_BAG,
    App,
    Bag,
    Expr,
    Lam,
    Sum,
    TauBar,
    Term,
    TermContext,
    Test,
    Var,
    all_names,
    apps,
    fresh_var,
    is_promotion_free,
    lams,
    single,
    sum_is_promotion_free,
    sum_is_test_free,
)

logger = logging.getLogger(__name__)

IDENTITY = Lam("x", Var("x"))


# Labelled expressions


@dataclass(frozen=True)
class LVar:
    name: str


@dataclass(frozen=True)
class LLam:
    binder: str
    body: "LTerm"


@dataclass(frozen=True)
class LApp:
    fun: "LTerm"
    arg: "LBag"


@dataclass(frozen=True)
class LTauBar:
    index: int
    inner: "LTest"


@dataclass(frozen=True)
class LBag:
    linear: Tuple["LTerm", ...] = ()


@dataclass(frozen=True)
class LTest:
    """Test whose elements are (index, term) pairs"""

    __test__ = False

    elements: Tuple[Tuple[int, "LTerm"], ...] = ()


LTerm = Union[LVar, LLam, LApp, LTauBar]
LNode = Union[LVar, LLam, LApp, LTauBar, LBag, LTest]


def _indices(node: LNode) -> Iterator[int]:
    if isinstance(node, LLam):
        yield from _indices(node.body)
    elif isinstance(node, LApp):
        yield from _indices(node.fun)
        yield from _indices(node.arg)
    elif isinstance(node, LTauBar):
        yield node.index
        yield from _indices(node.inner)
    elif isinstance(node, LBag):
        for item in node.linear:
            yield from _indices(item)
    elif isinstance(node, LTest):
        for index, item in node.elements:
            yield index
            yield from _indices(item)


@dataclass(frozen=True)
class LabelledExpr:
    """
    A promotion-free expression whose tbar occurrences and test elements
    carry pairwise distinct natural-number indices

    Raises:
        RlctError: INVALID_LABELLING on a repeated or negative index
    """

    root: LNode

    def __post_init__(self) -> None:
        seen = set()
        for index in _indices(self.root):
            if index < 0 or index in seen:
                raise RlctError.invalid_labelling(index)
            seen.add(index)


def label(e: Expr) -> LabelledExpr:
    """
    Index tbar occurrences and test elements left to right, from 1

    Raises:
        RlctError: NOT_PROMOTION_FREE
    """
    if not is_promotion_free(e):
        raise RlctError.not_promotion_free("label")
    return LabelledExpr(_label(e, count(1)))


def _label(e: Expr, counter: Iterator[int]) -> LNode:
    if isinstance(e, Var):
        return LVar(e.name)
    if isinstance(e, Lam):
        return LLam(e.binder, _label(e.body, counter))  # type: ignore[arg-type]
    if isinstance(e, App):
        fun = _label(e.fun, counter)
        return LApp(fun, _label(e.arg, counter))  # type: ignore[arg-type]
    if isinstance(e, TauBar):
        index = next(counter)
        return LTauBar(index, _label(e.inner, counter))  # type: ignore[arg-type]
    if isinstance(e, Bag):
        return LBag(tuple(_label(item, counter) for item in e.linear))  # type: ignore[misc]
    if isinstance(e, Test):
        elements = []
        for item in e.elements:
            index = next(counter)
            elements.append((index, _label(item, counter)))
        return LTest(tuple(elements))  # type: ignore[arg-type]
    raise TypeError(f"not an expression: {e!r}")


def strip(le: LabelledExpr) -> Expr:
    return _strip(le.root)


def _strip(node: LNode) -> Expr:
    if isinstance(node, LVar):
        return Var(node.name)
    if isinstance(node, LLam):
        return Lam(node.binder, _strip(node.body))  # type: ignore[arg-type]
    if isinstance(node, LApp):
        return App(_strip(node.fun), _strip(node.arg))  # type: ignore[arg-type]
    if isinstance(node, LTauBar):
        return TauBar(_strip(node.inner))  # type: ignore[arg-type]
    if isinstance(node, LBag):
        return Bag(tuple(_strip(item) for item in node.linear))  # type: ignore[misc]
    return Test(tuple(_strip(item) for _, item in node.elements))  # type: ignore[misc]


def dom(le: LabelledExpr) -> frozenset:
    return frozenset(_indices(le.root))


# Index maps


@dataclass(frozen=True)
class EllMap:
    """
    Total map from indices to naturals: finitely many explicit values over
    a default

    Example:
        ```python
        ell = EllMap.parse("{1:0, 2:3, default:0}")
        ell(2), ell(7), str(ell.shift(1))  # 3, 0, "{1:1, 2:4, default:1}"
        ```
    """

    values: Tuple[Tuple[int, int], ...] = ()
    default: int = 0

    def __post_init__(self) -> None:
        indices = [index for index, _ in self.values]
        if len(set(indices)) != len(indices):
            raise RlctError.validation_error("an index is given twice", {"indices": indices})
        if self.default < 0 or any(value < 0 for _, value in self.values):
            raise RlctError.validation_error("index map values must be >= 0")
        object.__setattr__(self, "values", tuple(sorted(self.values)))

    @classmethod
    def constant(cls, value: int) -> "EllMap":
        return cls((), value)

    @classmethod
    def from_dict(cls, values: Mapping[int, int], default: int = 0) -> "EllMap":
        return cls(tuple(values.items()), default)

    @classmethod
    def parse(cls, text: str) -> "EllMap":
        return transform(EllMapBuilder(), parse_tree(text, "ellmap"))

    def __call__(self, index: int) -> int:
        return dict(self.values).get(index, self.default)

    def shift(self, k: int) -> "EllMap":
        """The map i -> ell(i) + k"""
        return EllMap(tuple((index, value + k) for index, value in self.values), self.default + k)

    def agrees_on(self, other: "EllMap", indices: Iterable[int]) -> bool:
        return all(self(index) == other(index) for index in indices)

    def __str__(self) -> str:
        entries = [f"{index}:{value}" for index, value in self.values]
        entries.append(f"default:{self.default}")
        return "{" + ", ".join(entries) + "}"


class EllMapBuilder(Transformer):
    def ellmap(self, items: list) -> EllMap:
        values, default = [], 0
        for entry in items[0] or ():
            if entry[0] is None:
                default = entry[1]
            else:
                values.append(entry)
        return EllMap(tuple(values), default)

    def entries(self, items: list) -> list:
        return list(items)

    def index_entry(self, items: list) -> Tuple[int, int]:
        return int(items[0]), int(items[1])

    def default_entry(self, items: list) -> Tuple[None, int]:
        return None, int(items[0])


# Expansion


def _fresh_names(base: str, k: int, avoid: Iterable[str]) -> List[str]:
    taken = set(avoid)
    names = []
    for _ in range(k):
        name = fresh_var(base, taken)
        taken.add(name)
        names.append(name)
    return names


def ell_expand(le: LabelledExpr, ell: EllMap) -> Expr:
    """
    Expand a labelled expression into a test-free one

    ``tbar_i(V)`` becomes ``\\x1..xn.V'`` with n = ell(i), and a test
    ``tau[(L1)_i1, ...]`` becomes ``\\z.z[L1'[]..[], ...]`` with ell(i1)
    empty bags after L1', so that eps expands to ``\\z.z[]``.
    """
    return _expand(le.root, ell)


def _expand(node: LNode, ell: EllMap) -> Expr:
    if isinstance(node, LVar):
        return Var(node.name)
    if isinstance(node, LLam):
        return Lam(node.binder, _expand(node.body, ell))  # type: ignore[arg-type]
    if isinstance(node, LApp):
        return App(_expand(node.fun, ell), _expand(node.arg, ell))  # type: ignore[arg-type]
    if isinstance(node, LBag):
        return Bag(tuple(_expand(item, ell) for item in node.linear))  # type: ignore[misc]
    if isinstance(node, LTauBar):
        body = _expand(node.inner, ell)
        binders = _fresh_names("x", ell(node.index), all_names(body))
        return lams(binders, body)  # type: ignore[arg-type]
    elements = tuple(
        apps(_expand(item, ell), [EMPTY_BAG] * ell(index))  # type: ignore[arg-type]
        for index, item in node.elements
    )
    avoid = frozenset().union(*(all_names(item) for item in elements))
    z = fresh_var("z", avoid)
    return Lam(z, App(Var(z), Bag(elements)))


# Solvability


def solvable(m: Union[Term, Sum]) -> bool:
    """
    A test-free term is solvable iff its normal form is not 0

    Raises:
        RlctError: NOT_TEST_FREE, NOT_PROMOTION_FREE
    """
    s = m if isinstance(m, Sum) else single(m)
    if not sum_is_test_free(s):
        raise RlctError.not_test_free("solvable")
    if not sum_is_promotion_free(s):
        raise RlctError.not_promotion_free("solvable")
    return bool(normalize(s))


def pad_with_identities(m: Term, k: int) -> Term:
    """m[I][I]...[I] with k singleton bags"""
    return apps(m, [Bag((IDENTITY,))] * k)


@dataclass(frozen=True)
class SearchBudget:
    """Bounds of the index-map search: largest value, number of candidates"""

    max_value: int = 3
    max_candidates: int = 20000

    def __post_init__(self) -> None:
        if self.max_value < 0 or self.max_candidates < 1:
            raise RlctError.validation_error(
                "invalid search budget",
                {"max_value": self.max_value, "max_candidates": self.max_candidates},
            )


def _compositions(total: int, parts: int, cap: int) -> Iterator[Tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, cap) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def graded_maps(indices: Sequence[int], max_value: int) -> Iterator[EllMap]:
    """Maps supported on ``indices`` with values <= max_value, by increasing total"""
    ordered = sorted(indices)
    for total in range(len(ordered) * max_value + 1):
        for values in _compositions(total, len(ordered), max_value):
            yield EllMap(tuple(zip(ordered, values)))


def _closed_test(v: Union[Test, Sum]) -> Test:
    if isinstance(v, Sum):
        if len(v) != 1 or not isinstance(v.summands[0], Test):
            raise RlctError.precondition_violated("expected a single closed test")
        return v.summands[0]
    return v


def find_ell_for_convergent(
    v: Union[Test, Sum], k_samples: Sequence[int] = (0, 1, 2), budget: Optional[SearchBudget] = None
) -> Optional[EllMap]:
    """
    Search for a map whose shifts by every sampled k expand v to a solvable
    term

    Raises:
        RlctError: PRECONDITION_VIOLATED when v does not reduce to eps
    """
    budget = budget or SearchBudget()
    test = _closed_test(v)
    if not closed_test_outcome(test).is_epsilon:
        raise RlctError.precondition_violated("the test does not converge")
    le = label(test)
    for tried, ell in enumerate(graded_maps(sorted(dom(le)), budget.max_value)):
        if tried >= budget.max_candidates:
            break
        logger.debug("trying %s", ell)
        if all(solvable(ell_expand(le, ell.shift(k))) for k in k_samples):  # type: ignore[arg-type]
            logger.info("index map %s expands the test to solvable terms", ell)
            return ell
    logger.warning("no index map found within the budget for a convergent test")
    return None


def find_k_for_divergent(
    v: Union[Test, Sum], ell_samples: Sequence[EllMap], budget: int = 6
) -> Optional[int]:
    """
    Smallest shift k <= budget such that v expands to an unsolvable term
    under every sampled map shifted by k

    Raises:
        RlctError: PRECONDITION_VIOLATED when v does not reduce to 0
    """
    test = _closed_test(v)
    if not closed_test_outcome(test).is_zero:
        raise RlctError.precondition_violated("the test does not reduce to 0")
    le = label(test)
    samples = list(ell_samples) or [EllMap()]
    for k in range(budget + 1):
        expansions = [ell_expand(le, ell.shift(k)) for ell in samples]
        if not any(solvable(m) for m in expansions):  # type: ignore[arg-type]
            logger.info("shift %d expands the test to unsolvable terms", k)
            return k
    logger.warning("no shift <= %d found for a divergent test", budget)
    return None


def expand_separator(
    m: Term, n: Term, p: Point, budget: Optional[SearchBudget] = None, k_budget: int = 6
) -> Optional[TermContext]:
    """
    Turn the separating test-context of p into a test-free term context
    sending m to a solvable term and n to an unsolvable one

    Raises:
        RlctError: NOT_TEST_FREE, PRECONDITION_VIOLATED when p lies outside
            the interpretation of m or inside that of n
    """
    for term in (m, n):
        if not sum_is_test_free(single(term)):
            raise RlctError.not_test_free("expand_separator")
    if not interp_member(m, p) or interp_member(n, p):
        raise RlctError.precondition_violated(
            "the point does not separate the terms", {"point": str(p)}
        )
    context = separating_context(p)
    ell = find_ell_for_convergent(context.fill(m), range(k_budget + 1), budget)
    if ell is None:
        return None
    k = find_k_for_divergent(context.fill(n), [ell], k_budget)
    if k is None:
        return None
    return TermContext(ell_expand(label(context.body), ell.shift(k)))

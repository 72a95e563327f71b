"""
Finite multiset helpers shared by the calculus and the model
"""

from collections import Counter
from itertools import combinations_with_replacement, groupby
from typing import Hashable, Iterator, List, Sequence, Tuple, TypeVar

T = TypeVar("T", bound=Hashable)


class MultisetUtils:
    """
    Multisets are represented as sorted tuples; these helpers never reorder
    their input, so callers keep control of the canonical order.
    """

    @staticmethod
    def group(items: Sequence[T]) -> List[Tuple[T, int]]:
        """
        Collapse a sorted multiset into (element, multiplicity) pairs

        Example:
            >>> MultisetUtils.group((1, 1, 2))
            [(1, 2), (2, 1)]
        """
        return [(key, len(list(run))) for key, run in groupby(items)]

    @staticmethod
    def sub_multisets(
        items: Sequence[T], size: int
    ) -> Iterator[Tuple[Tuple[T, ...], Tuple[T, ...]]]:
        """
        Enumerate the distinct ways of taking ``size`` elements out of a
        sorted multiset

        Args:
            items: Sorted multiset
            size: Number of elements to take

        Yields:
            (chosen, rest) pairs, both sorted; each distinct choice once

        Example:
            >>> list(MultisetUtils.sub_multisets((1, 1, 2), 1))
            [((1,), (1, 2)), ((2,), (1, 1))]
        """
        groups = MultisetUtils.group(items)

        def walk(index: int, left: int) -> Iterator[Tuple[Tuple[T, ...], Tuple[T, ...]]]:
            if index == len(groups):
                if left == 0:
                    yield (), ()
                return
            value, count = groups[index]
            for taken in range(min(count, left), -1, -1):
                for chosen, rest in walk(index + 1, left - taken):
                    yield (value,) * taken + chosen, (value,) * (count - taken) + rest

        if 0 <= size <= len(items):
            yield from walk(0, size)

    @staticmethod
    def multisets_up_to(elements: Sequence[T], max_card: int) -> Iterator[Tuple[T, ...]]:
        """
        All multisets over ``elements`` with at most ``max_card`` members,
        smallest cardinality first
        """
        for card in range(max_card + 1):
            yield from combinations_with_replacement(elements, card)

    @staticmethod
    def multiset_lt(smaller: Sequence[int], larger: Sequence[int]) -> bool:
        """
        Multiset order induced by < on naturals: ``smaller`` is obtained from
        ``larger`` by replacing elements with finitely many strictly smaller
        ones

        Example:
            >>> MultisetUtils.multiset_lt([4, 4, 4], [5])
            True
        """
        left, right = Counter(smaller), Counter(larger)
        if left == right:
            return False
        surplus = left - right
        deficit = right - left
        return all(any(y > x for y in deficit) for x in surplus)

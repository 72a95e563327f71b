"""
Test cases for expressions, sums, the parser and the printer
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rlct.core.parser import parse, prelude, prelude_name
from rlct.core.printer import print_expr, print_sum
from rlct.core.syntax import (
    EMPTY_BAG,
    EPSILON,
    ZERO,
    App,
    Bag,
    Lam,
    Sum,
    TauBar,
    TermContext,
    Test,
    TestContext,
    Var,
    all_names,
    alpha_eq,
    bag_union,
    degree,
    free_vars,
    fresh_var,
    hole,
    msize,
    msize_lt,
    size,
    sort_of,
)
from rlct.core.syntax import test_par as parallel
from rlct.errors import RlctError
from tests.strategies import bags, linear_sums, tau_tests, terms


def one(text):
    s = parse(text)
    assert len(s) == 1
    return s.summands[0]


@pytest.mark.unit
class TestParser:
    """Test cases for the concrete syntax"""

    def test_parse_identity(self):
        """Test that \\x.x is a single abstraction"""
        assert one(r"\x.x") == Lam("x", Var("x"))

    def test_epsilon_is_neutral(self):
        """Test that parallel composition with an empty test is a no-op"""
        assert parse(r"tau[\x.x] | tau[]") == Sum([Test((Lam("x", Var("x")),))])

    def test_sums_are_idempotent(self):
        """Test multilinear expansion of \\x.(x + x)"""
        result = parse(r"\x.(x + x)")

        assert len(result) == 1
        assert result == parse(r"\y.y")

    def test_multilinear_expansion(self):
        """Test that application distributes over sums"""
        assert parse("(x + y)[z]") == parse("x[z] + y[z]")

    def test_zero_annihilates(self):
        """Test that 0 absorbs every constructor"""
        assert parse("0") == ZERO
        assert parse(r"\x.0") == ZERO
        assert parse("x[0]") == ZERO
        assert parse("tau[0, x]") == ZERO

    def test_prelude_constants(self):
        """Test the named constants"""
        assert parse("I") == parse(r"\x.x")
        assert parse("F") == parse(r"\a b.b")
        assert one("Omega") == App(one("Delta"), Bag((), parse("Delta")))

    def test_xi_constant(self):
        """Test the Xi family"""
        assert print_expr(one("Xi(2, 1)")) == r"\x1 x2.(\x.x)[x1][x1][x2]"
        assert one("Xi()") == one("I")

    def test_sort_of(self):
        """Test the three sorts"""
        assert parse("x").sort == "term"
        assert parse("[x]").sort == "bag"
        assert parse("tau[x]").sort == "test"
        assert ZERO.sort is None
        assert sort_of(EPSILON) == "test"

    def test_parse_error(self):
        """Test malformed input"""
        with pytest.raises(RlctError) as exc_info:
            parse(r"\x.")

        assert exc_info.value.code == "PARSE_ERROR"
        assert exc_info.value.status == 2

    def test_reserved_binder(self):
        """Test that prelude names cannot be bound"""
        with pytest.raises(RlctError) as exc_info:
            parse(r"\I.I")

        assert exc_info.value.code == "PARSE_ERROR"

    def test_sort_mismatch(self):
        """Test mixing sorts"""
        for text in ["tau[x] + y", "x | y", "[x][y]", "tbar(x)"]:
            with pytest.raises(RlctError) as exc_info:
                parse(text)

            assert exc_info.value.code == "SORT_MISMATCH"

    def test_prelude_name(self):
        """Test recognizing prelude constants"""
        assert prelude_name(parse(r"\a b.b")) == "F"
        assert prelude_name(parse("x")) is None
        assert prelude("T") == parse(r"\x y.x")


@pytest.mark.unit
class TestPrinter:
    """Test cases for the printer"""

    def test_round_trip(self):
        """Test printing a parsed abstraction"""
        assert print_sum(parse(r"\x y.x")) == r"\x y.x"

    def test_zero(self):
        """Test printing the empty sum"""
        assert print_sum(ZERO) == "0"

    def test_promoted_bag(self):
        """Test the bag shape with a promoted sum"""
        assert print_sum(parse("f[y, x; (N + M)!]")) == "f[x, y; (M + N)!]"
        assert print_sum(parse("f[; x!]")) == "f[; x!]"

    def test_tests(self):
        """Test printing tests and tbar"""
        assert print_sum(parse("tau[]")) == "eps"
        assert print_sum(parse("tbar(tau[x])[y]")) == "tbar(tau[x])[y]"

    def test_redex_head_is_parenthesized(self):
        """Test printing an abstraction in head position"""
        assert print_sum(parse(r"(\x.x)[y]")) == r"(\x.x)[y]"

    @pytest.mark.properties
    @settings(max_examples=60, deadline=None)
    @given(terms(promotion=True))
    def test_parse_print_round_trip(self, m):
        """Test that parsing the printed form gives back an alpha-equal term"""
        assert parse(print_expr(m)) == Sum([m])

    @pytest.mark.properties
    @settings(max_examples=40, deadline=None)
    @given(tau_tests(promotion=True))
    def test_parse_print_round_trip_tests(self, v):
        """Test the round trip on tests"""
        assert parse(print_expr(v)) == Sum([v])


@pytest.mark.unit
class TestSums:
    """Test cases for canonical sums"""

    def test_alpha_equal_summands_collapse(self):
        """Test that alpha-equal summands are stored once"""
        s = Sum([Lam("x", Var("x")), Lam("y", Var("y"))])

        assert len(s) == 1
        assert Lam("z", Var("z")) in s

    def test_mixed_sorts(self):
        """Test that a sum holds a single sort"""
        with pytest.raises(RlctError) as exc_info:
            Sum([Var("x"), EPSILON])

        assert exc_info.value.code == "SORT_MISMATCH"
        assert exc_info.value.details == {"found": "term + test"}

    def test_bag_promoted_sort(self):
        """Test that a promoted part holds terms"""
        with pytest.raises(RlctError) as exc_info:
            Bag((), Sum([EPSILON]))

        assert exc_info.value.code == "SORT_MISMATCH"

    def test_union(self):
        """Test the sum of sums"""
        assert parse("x") + parse("y") == parse("y + x")
        assert Sum.union([parse("x"), ZERO, parse("x")]) == parse("x")

    @pytest.mark.properties
    @settings(max_examples=50, deadline=None)
    @given(linear_sums())
    def test_union_is_idempotent(self, s):
        """Test s + s = s"""
        assert s + s == s


@pytest.mark.unit
class TestMeasures:
    """Test cases for free variables, degree and size"""

    def test_free_vars(self):
        """Test free variables across constructors"""
        assert free_vars(one(r"\x.x[y; 0!]")) == {"y"}
        assert free_vars(one(r"tbar(tau[x, \y.y])")) == {"x"}
        assert free_vars(one("I")) == frozenset()
        assert free_vars(one("x[; z!]")) == {"x", "z"}

    def test_degree(self):
        """Test counting free occurrences"""
        assert degree("x", one(r"\y.y[x][x]")) == 2
        assert degree("x", one("y")) == 0
        assert degree("x", one(r"\x.x")) == 0

    def test_degree_undefined(self):
        """Test degree of a variable under a promotion"""
        with pytest.raises(RlctError) as exc_info:
            degree("x", one("y[x; x!]"))

        assert exc_info.value.code == "DEGREE_UNDEFINED"

    def test_size(self):
        """Test the size clauses"""
        assert size(one("x")) == 1
        assert size(one(r"\y.x")) == 2
        assert size(one("x[]")) == 3
        assert size(one("x[; y!]")) == 5

    def test_msize(self):
        """Test sizes of summands"""
        assert msize(parse(r"x + \y.x")) == (1, 2)
        assert msize(ZERO) == ()

    def test_msize_lt(self):
        """Test the multiset order"""
        assert msize_lt([3], [5])
        assert msize_lt([4, 4, 4], [5])
        assert not msize_lt([5], [5])
        assert not msize_lt([6], [5, 5])
        assert msize_lt([], [1])


@pytest.mark.unit
class TestNames:
    """Test cases for alpha-equivalence and fresh names"""

    def test_alpha_eq(self):
        """Test equivalence up to bound names"""
        assert alpha_eq(one(r"\x.x"), one(r"\y.y"))
        assert not alpha_eq(one(r"\x.x[y]"), one(r"\y.y[y]"))
        assert not alpha_eq(one("x"), one("y"))

    def test_fresh_var(self):
        """Test fresh name generation"""
        assert fresh_var("z", ["x"]) == "z"
        assert fresh_var("z", ["z"], ["z1"]) == "z2"


@pytest.mark.unit
class TestContexts:
    """Test cases for one-hole contexts"""

    def test_fill_is_blind(self):
        """Test that binders above the hole capture"""
        context = TermContext(Lam("x", hole()))

        assert context.fill(Var("x")) == Lam("x", Var("x"))

    def test_test_context(self):
        """Test filling a test-context"""
        context = TestContext(Test((App(hole(), Bag((TauBar(EPSILON),))),)))

        assert print_expr(context.body) == "tau[<hole>[tbar(eps)]]"
        assert print_expr(context.fill(one("I"))) == r"tau[(\x.x)[tbar(eps)]]"

    def test_exactly_one_hole(self):
        """Test that a context needs one hole"""
        with pytest.raises(RlctError) as exc_info:
            TestContext(Test((Var("x"),)))

        assert exc_info.value.code == "PRECONDITION_VIOLATED"

    def test_context_sort(self):
        """Test that a term context holds a term"""
        with pytest.raises(RlctError) as exc_info:
            TermContext(Test((hole(),)))

        assert exc_info.value.code == "SORT_MISMATCH"


@pytest.mark.unit
class TestModuleConstants:
    """Test cases for the constants built at import time"""

    def test_empty_test_and_bag(self):
        """Test that eps and the empty bag are canonical and empty"""
        assert EPSILON == Test()
        assert EPSILON.elements == ()
        assert EMPTY_BAG == Bag()
        assert EMPTY_BAG.linear == () and not EMPTY_BAG.promoted

    def test_package_exports(self):
        """Test that the package imports and re-exports the node classes"""
        import rlct

        assert rlct.Test is Test
        assert rlct.Bag is Bag
        assert rlct.Sum is Sum


@pytest.mark.unit
class TestAllNames:
    """Test cases for the names occurring in an expression"""

    def test_bound_and_free(self):
        """Test that binders and free variables are both listed"""
        assert all_names(one(r"\x.y[x; (\w.w)!]")) == {"x", "y", "w"}

    def test_alpha_equal_bags_keep_their_own_names(self):
        """Test that an alpha-equal bag seen earlier does not leak its binders"""
        first = Bag((), Sum([Lam("q", Var("z1"))]))
        second = Bag((), Sum([Lam("z2", Var("z1"))]))

        assert first == second
        assert all_names(first) == {"q", "z1"}
        assert all_names(second) == {"z2", "z1"}


@pytest.mark.unit
class TestMonoids:
    """Test cases for bag union and parallel composition"""

    @pytest.mark.properties
    @settings(max_examples=60, deadline=None)
    @given(bags(promotion=True), bags(promotion=True), bags(promotion=True))
    def test_bag_union_laws(self, p, q, r):
        """Test associativity, commutativity and the empty bag as unit"""
        assert alpha_eq(bag_union(bag_union(p, q), r), bag_union(p, bag_union(q, r)))
        assert alpha_eq(bag_union(p, q), bag_union(q, p))
        assert alpha_eq(bag_union(p, EMPTY_BAG), p)

    def test_bag_union_sums_promoted_parts(self):
        """Test that promoted parts are added"""
        p = Bag((Var("x"),), Sum([Var("y")]))
        q = Bag((Var("z"),), Sum([Var("w")]))

        assert print_expr(bag_union(p, q)) == "[x, z; (w + y)!]"

    @pytest.mark.properties
    @settings(max_examples=60, deadline=None)
    @given(tau_tests(), tau_tests(), tau_tests())
    def test_parallel_laws(self, u, v, w):
        """Test associativity, commutativity and eps as unit"""
        assert alpha_eq(parallel(parallel(u, v), w), parallel(u, parallel(v, w)))
        assert alpha_eq(parallel(u, v), parallel(v, u))
        assert alpha_eq(parallel(u, EPSILON), u)


@pytest.mark.unit
@pytest.mark.properties
class TestMultisetOrder:
    """Test cases for the order on size multisets"""

    @settings(max_examples=200, deadline=None)
    @given(st.lists(st.integers(0, 6), max_size=5))
    def test_irreflexive(self, a):
        """Test that no multiset is below itself"""
        assert not msize_lt(sorted(a), sorted(a))

    @settings(max_examples=300, deadline=None)
    @given(
        st.lists(st.integers(0, 4), max_size=4),
        st.lists(st.integers(0, 4), max_size=4),
        st.lists(st.integers(0, 4), max_size=4),
    )
    def test_transitive(self, a, b, c):
        """Test transitivity on generated triples"""
        a, b, c = sorted(a), sorted(b), sorted(c)
        if msize_lt(a, b) and msize_lt(b, c):
            assert msize_lt(a, c)
        assert not (msize_lt(a, b) and msize_lt(b, a))

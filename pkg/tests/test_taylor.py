"""
Test cases for Taylor expansion
"""

import pytest
from hypothesis import HealthCheck, assume, given, settings

from rlct.core.model import Point, parse_delem
from rlct.core.parser import parse
from rlct.core.reduce import closed_test_outcome, converges, is_head_normal
from rlct.core.syntax import ZERO, is_promotion_free, size
from rlct.core.taylor import simulation_check, taylor_contains, taylor_enumerate, taylor_member
from rlct.errors import RlctError
from tests.strategies import closed_tests, terms


def one(text):
    return parse(text).summands[0]


@pytest.mark.unit
class TestTaylorContains:
    """Test cases for the containment check"""

    def test_promoted_copies(self):
        """Test any number of copies of a promoted variable"""
        a = one(r"\x.x[; x!]")

        assert taylor_contains(one(r"\x.x[]"), a)
        assert taylor_contains(one(r"\x.x[x, x]"), a)
        assert taylor_contains(one(r"\y.y[y]"), a)

    def test_linear_part_is_required(self):
        """Test that linear resources are kept"""
        a = one("x[y; z!]")

        assert taylor_contains(one("x[y]"), a)
        assert taylor_contains(one("x[z, y, z]"), a)
        assert not taylor_contains(one("x[]"), a)
        assert not taylor_contains(one("x[z]"), a)

    def test_promotion_free_input(self):
        """Test that a promotion-free expression approximates only itself"""
        assert taylor_contains(one("I"), one(r"\y.y"))
        assert not taylor_contains(one("F"), one("I"))

    def test_sums(self):
        """Test containment in a sum"""
        assert taylor_contains(one("y"), parse("x + y"))
        assert not taylor_contains(one("z"), parse("x + y"))

    def test_tests(self):
        """Test containment between tests"""
        assert taylor_contains(one("tau[x[y, y]]"), one("tau[x[; y!]]"))
        assert not taylor_contains(one("tau[x[], y]"), one("tau[x[; y!]]"))

    def test_candidate_with_promotion(self):
        """Test that candidates must be promotion-free"""
        with pytest.raises(RlctError) as exc_info:
            taylor_contains(one("x[; y!]"), one("x[; y!]"))

        assert exc_info.value.code == "NOT_PROMOTION_FREE"


@pytest.mark.unit
class TestTaylorEnumerate:
    """Test cases for size-bounded enumeration"""

    def test_copies_by_size(self):
        """Test the approximants of \\x.x[; x!]"""
        a = one(r"\x.x[; x!]")

        assert taylor_enumerate(a, 6) == parse(r"\x.x[] + \x.x[x] + \x.x[x, x]")
        assert taylor_enumerate(a, 5) == parse(r"\x.x[] + \x.x[x]")
        assert taylor_enumerate(a, 3) == ZERO

    def test_promotion_free(self):
        """Test that a promotion-free term enumerates to itself"""
        assert taylor_enumerate(one("I"), 10) == parse("I")
        assert taylor_enumerate(one("I"), 1) == ZERO

    def test_negative_bound(self):
        """Test bound validation"""
        with pytest.raises(RlctError) as exc_info:
            taylor_enumerate(one("I"), -1)

        assert exc_info.value.code == "VALIDATION_ERROR"

    @pytest.mark.properties
    @settings(max_examples=40, deadline=None)
    @given(terms(promotion=True, depth=2))
    def test_enumerated_are_contained(self, a):
        """Test that each enumerated approximant is small, linear and contained"""
        for item in taylor_enumerate(a, 7):
            assert size(item) <= 7
            assert is_promotion_free(item)
            assert taylor_contains(item, a)


@pytest.mark.unit
class TestSimulation:
    """Test cases for the head-reduction simulation check"""

    def test_promoted_argument(self):
        """Test an approximant taking the argument linearly"""
        assert simulation_check(one(r"(\x.x[])[; y!]"), one(r"(\x.x[])[y]"))

    def test_duplicator(self):
        """Test an approximant of D applied to a promoted identity"""
        assert simulation_check(one("D[; I!]"), one("D[I, I]"))

    def test_not_an_approximant(self):
        """Test the containment precondition"""
        with pytest.raises(RlctError) as exc_info:
            simulation_check(one("I"), one("F"))

        assert exc_info.value.code == "PRECONDITION_VIOLATED"

    def test_head_normal_approximant(self):
        """Test the head redex precondition"""
        with pytest.raises(RlctError) as exc_info:
            simulation_check(one(r"\x.x[; x!]"), one(r"\x.x[]"))

        assert exc_info.value.code == "PRECONDITION_VIOLATED"


@pytest.mark.unit
class TestTaylorMember:
    """Test cases for membership through approximants"""

    def test_witness_within_bound(self):
        """Test that a small approximant witnesses membership"""
        m = one(r"(\z.I)[; I!]")
        p = Point((), parse_delem("[*]::*"))

        assert taylor_member(m, p, 5)
        assert not taylor_member(m, p, 4)

    def test_env_mismatch(self):
        """Test a point missing a free variable"""
        with pytest.raises(RlctError) as exc_info:
            taylor_member(one("x"), Point((), parse_delem("*")), 5)

        assert exc_info.value.code == "ENV_MISMATCH"


@pytest.mark.unit
@pytest.mark.properties
@pytest.mark.slow
class TestSimulationCorpus:
    """Simulation and convergence transfer over generated full-calculus expressions"""

    @settings(
        max_examples=300,
        deadline=None,
        suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
    )
    @given(terms(promotion=True, depth=2))
    def test_head_steps_of_approximants_are_simulated(self, a):
        """Test every approximant of size <= 12 that has a head redex"""
        assume(size(a) <= 12)
        for item in list(taylor_enumerate(a, 12))[:40]:
            if not is_head_normal(item):
                assert simulation_check(a, item)

    @settings(
        max_examples=100,
        deadline=None,
        suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow],
    )
    @given(closed_tests(promotion=True, depth=2))
    def test_converging_approximant_makes_the_test_converge(self, v):
        """Test that an approximant reducing to eps means the test converges"""
        approximants = taylor_enumerate(v, 10)
        assume(any(closed_test_outcome(item).is_epsilon for item in approximants))

        assert converges(v, 1000).is_epsilon

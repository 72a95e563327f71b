"""
Test cases for the main rlct client
"""

from unittest.mock import patch

import pytest

from rlct import Rlct, __version__
from rlct.core.parser import parse
from rlct.core.reduce import Outcome
from rlct.core.syntax import Var
from rlct.errors import RlctError


@pytest.fixture(autouse=True)
def no_seed(monkeypatch):
    monkeypatch.delenv("RLCT_SEED", raising=False)


class TestRlct:
    """Test cases for the rlct client"""

    def test_default_configuration(self):
        """Test the default bounds"""
        client = Rlct()

        assert client.config["fuel"] == 10000
        assert client.config["max_rank"] == 3
        assert client.config["max_width"] == 3
        assert client.config["max_length"] == 3
        assert client.config["seed"] is None

    def test_custom_configuration(self):
        """Test overriding bounds"""
        client = Rlct(fuel=50, size_bound=4, seed=9)

        assert client.config["fuel"] == 50
        assert client.config["size_bound"] == 4
        assert client.config["seed"] == 9
        assert client.get_config() == client.config
        assert client.get_config() is not client.config

    @pytest.mark.parametrize(
        "kwargs",
        [{"fuel": -1}, {"max_rank": -2}, {"fuel": True}, {"cycle_memory": 0}, {"seed": "3"}],
    )
    def test_invalid_configuration(self, kwargs):
        """Test configuration validation"""
        with pytest.raises(RlctError) as exc_info:
            Rlct(**kwargs)

        assert exc_info.value.code == "VALIDATION_ERROR"

    def test_seed_from_environment(self, monkeypatch):
        """Test the RLCT_SEED fallback"""
        monkeypatch.setenv("RLCT_SEED", "7")

        assert Rlct().config["seed"] == 7
        assert Rlct(seed=2).config["seed"] == 2

    def test_invalid_seed_in_environment(self, monkeypatch):
        """Test a malformed RLCT_SEED"""
        monkeypatch.setenv("RLCT_SEED", "abc")

        with pytest.raises(RlctError) as exc_info:
            Rlct()

        assert exc_info.value.code == "VALIDATION_ERROR"

    def test_get_info(self):
        """Test package information retrieval"""
        info = Rlct().get_info()

        assert info["name"] == "rlct"
        assert info["version"] == __version__
        assert "Taylor API" in info["features"]
        assert info["config"]["fuel"] == 10000

    def test_api_modules_initialization(self):
        """Test that all API modules are initialized"""
        client = Rlct()

        for name in ["syntax", "reduction", "model", "definability", "taylor", "expansion"]:
            assert hasattr(client, name)
        assert hasattr(client, "utils")

    def test_to_sum(self):
        """Test input coercion"""
        client = Rlct()

        assert client.to_sum("x") == parse("x")
        assert client.to_sum(Var("x")) == parse("x")
        assert client.to_sum(parse("x + y")) == parse("y + x")

    @pytest.mark.parametrize("source", ["x + y", "0"])
    def test_to_one_needs_a_single_summand(self, source):
        """Test that proper sums and 0 are refused"""
        with pytest.raises(RlctError) as exc_info:
            Rlct().to_one(source)

        assert exc_info.value.code == "PRECONDITION_VIOLATED"

    def test_to_one_sort(self):
        """Test the sort check"""
        with pytest.raises(RlctError) as exc_info:
            Rlct().to_one("tau[x]", "term")

        assert exc_info.value.code == "SORT_MISMATCH"


class TestSyntaxAPI:
    """Test cases for the syntax API"""

    def setup_method(self):
        """Setup test client"""
        self.client = Rlct()

    def test_parse(self):
        """Test describing a parsed expression"""
        result = self.client.syntax.parse(r"\x.(x + x)")

        assert result["sum"] == r"\x.x"
        assert result["sort"] == "term"
        assert result["msize"] == [2]
        assert result["free_vars"] == []
        assert result["promotion_free"] is True
        assert result["test_free"] is True

    def test_degree(self):
        """Test degrees per summand"""
        assert self.client.syntax.degree("x", r"\y.y[x][x]")["degrees"] == [2]

    def test_alpha_eq(self):
        """Test alpha-equivalence"""
        assert self.client.syntax.alpha_eq(r"\x.x", r"\y.y")
        assert self.client.syntax.format("tau[]") == "eps"


class TestReductionAPI:
    """Test cases for the reduction API"""

    def setup_method(self):
        """Setup test client"""
        self.client = Rlct(fuel=100)

    def test_normalize(self):
        """Test normalization through the client"""
        result = self.client.reduction.normalize("D[I, F]")

        assert result["prelude_name"] == "F"
        assert result["is_zero"] is False
        assert result["seed"] is None

    def test_normalize_with_seed(self):
        """Test the seeded small-step evaluator"""
        result = Rlct(seed=3).reduction.normalize("D[I, F]")

        assert result["prelude_name"] == "F"
        assert result["seed"] == 3

    def test_step_in_normal_form(self):
        """Test a step on a normal form"""
        result = self.client.reduction.step("x")

        assert result["reduct"] is None
        assert result["redexes"] == []

    def test_head(self):
        """Test a head reduction trace"""
        result = self.client.reduction.head("tau[I[tbar(eps)]]", steps=5)

        assert result["trace"][0] == r"tau[(\x.x)[tbar(eps)]]"
        assert result["trace"][1] == "tau[tbar(eps)]"
        assert result["result"] == "eps"
        assert result["head_normal"] is True

    def test_closed_test_outcome(self):
        """Test the outcome of a closed test"""
        assert self.client.reduction.closed_test_outcome("tau[I]")["outcome"] == "zero"

    @patch("rlct.classes.reduction.converges")
    def test_converges_passes_configuration(self, mock_converges):
        """Test that fuel and cycle memory reach the evaluator"""
        mock_converges.return_value = Outcome.epsilon()

        result = self.client.reduction.converges("eps", fuel=5)

        _, fuel, memory = mock_converges.call_args[0]
        assert fuel.max_rounds == 5
        assert memory == 4096
        assert result["outcome"] == "epsilon"
        assert result["fuel"] == 5

    def test_converges_cycle(self):
        """Test an inconclusive outcome"""
        result = self.client.reduction.converges("tau[Omega]")

        assert result["outcome"] == "unknown"
        assert result["reason"] == "cycle_detected"


class TestModelAPI:
    """Test cases for the model API"""

    def setup_method(self):
        """Setup test client"""
        self.client = Rlct(fuel=100)

    def test_describe(self):
        """Test describing an element"""
        result = self.client.model.describe("[[*]::*]::*")

        assert result == {"delem": "[[*]::*]::*", "rank": 2, "length": 1}

    def test_enumerate(self):
        """Test enumerating a slice"""
        result = self.client.model.enumerate(1, 1, 1)

        assert result["count"] == 2
        assert result["elements"] == ["*", "[*]::*"]
        assert self.client.model.enumerate(limit=2)["elements"] == ["*", "[*]::*"]

    def test_member_direct(self):
        """Test the semantic route"""
        result = self.client.model.member("x", "x=[*] |- *")

        assert result["member"] is True
        assert result["via"] == "direct"

    def test_member_taylor(self):
        """Test the Taylor route"""
        result = self.client.model.member(
            r"(\z.I)[; I!]", "|- [*]::*", via="taylor", size_bound=5
        )

        assert result["member"] is True
        assert result["size_bound"] == 5

    def test_member_unknown(self):
        """Test an inconclusive full-calculus query"""
        result = self.client.model.member("Omega", "|- *", fuel=5)

        assert result["member"] is None
        assert result["outcome"] == "unknown"
        assert result["reason"] == "cycle_detected"

    def test_member_invalid_route(self):
        """Test route validation"""
        with pytest.raises(RlctError) as exc_info:
            self.client.model.member("I", "|- *", via="bogus")

        assert exc_info.value.code == "VALIDATION_ERROR"

    def test_nonempty(self):
        """Test emptiness of an interpretation"""
        assert self.client.model.nonempty("D[I]")["nonempty"] is False


class TestDefinabilityAPI:
    """Test cases for the definability API"""

    def setup_method(self):
        """Setup test client"""
        self.client = Rlct()

    def test_testctx(self):
        """Test compiling an element"""
        result = self.client.definability.testctx("[*]::*")

        assert result["alpha_plus"] == r"\x1.tbar(tau[x1])"
        assert result["alpha_minus"] == "tau[<hole>[tbar(eps)]]"

    def test_separation(self):
        """Test running alpha- on beta+"""
        result = self.client.definability.separation("*", "*")

        assert result["outcome"] == "epsilon"
        assert result["left"] == "*"

    def test_definable_set(self):
        """Test the sum of defining terms"""
        result = self.client.definability.definable_set(["[*]::*", "*", "*"])

        assert result["elements"] == ["*", "[*]::*"]
        assert result["term"] == r"\x1.tbar(tau[x1]) + tbar(eps)"

    def test_separating_context(self):
        """Test the context of a point"""
        result = self.client.definability.separating_context("x=[*] |- *")

        assert result["context"] == r"tau[(\x.<hole>)[tbar(eps)]]"


class TestTaylorAPI:
    """Test cases for the Taylor API"""

    def setup_method(self):
        """Setup test client"""
        self.client = Rlct()

    def test_enumerate(self):
        """Test approximants in size order"""
        result = self.client.taylor.enumerate(r"\x.x[; x!]", size_bound=6)

        assert result["count"] == 3
        assert result["approximants"] == [r"\x.x[]", r"\x.x[x]", r"\x.x[x, x]"]

    def test_contains(self):
        """Test containment"""
        assert self.client.taylor.contains(r"\x.x[x, x]", r"\x.x[; x!]")["contains"] is True

    def test_simulation(self):
        """Test the simulation check"""
        assert self.client.taylor.simulation("D[; I!]", "D[I, I]")["simulated"] is True


class TestExpansionAPI:
    """Test cases for the expansion API"""

    def setup_method(self):
        """Setup test client"""
        self.client = Rlct()

    def test_expand(self):
        """Test labelling and expanding"""
        result = self.client.expansion.expand("tau[tbar(eps), I]")

        assert result["dom"] == [1, 2, 3]
        assert result["ell"] == "{default:0}"
        assert result["expanded"] == r"\z1.z1[\x.x, \z.z[]]"

    def test_solvable(self):
        """Test solvability"""
        assert self.client.expansion.solvable("D[I]")["solvable"] is False

    def test_find_ell(self):
        """Test the index-map search"""
        assert self.client.expansion.find_ell("tau[tbar(eps)]")["ell"] == "{1:0, 2:0, default:0}"

    def test_find_k(self):
        """Test the shift search with default samples"""
        result = self.client.expansion.find_k("tau[I]")

        assert result["k"] == 1
        assert result["ell_samples"] == ["{default:0}", "{default:1}", "{default:2}"]

    def test_find_ell_needs_a_test(self):
        """Test the sort check on searches"""
        with pytest.raises(RlctError) as exc_info:
            self.client.expansion.find_ell("I")

        assert exc_info.value.code == "SORT_MISMATCH"

    def test_separator(self):
        """Test a test-free separating context"""
        result = self.client.expansion.separator("I", "F", "|- [*]::*")

        assert result["context"] == r"\z1.z1[<hole>[\z.z[]]]"

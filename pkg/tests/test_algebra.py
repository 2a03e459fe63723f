import random

import pytest

from leavitt import format_element, parse_element
from leavitt.algebra import Monomial, graded_parts, in_A_subalgebra, involution, multiply
from leavitt.errors import GraphError, ParseError, SessionMismatch
from leavitt.oracle import SampleConfig, random_element, random_monomial
from leavitt.scalars import parse_poly

from conftest import oracle_terms


class TestNormalForm:
    def test_seam_rewrite(self, R2, P):
        x = P("e2*e2'")
        assert format_element(x) == "v - e1*e1'"
        assert x.terms == oracle_terms(R2, [(1, "e2*e2'")])
        assert x + P("e1*e1'") == P("v")

    def test_ck2_sum(self, P):
        assert P("e1*e1' + e2*e2'") == P("v")
        assert format_element(P("e1*e1' + e2*e2'")) == "v"

    def test_zero(self, R2):
        assert format_element(R2.zero()) == "0" and R2.zero().is_zero()

    def test_idempotent(self, R3):
        cfg = SampleConfig(R3, seed=5)
        for i in range(200):
            x = random_element(cfg, i)
            assert R3.element(x.terms) == x

    def test_canonical_monomials_only(self, R3):
        cfg = SampleConfig(R3, seed=9)
        for i in range(200):
            assert all(R3.is_canonical(m) for m in random_element(cfg, i).terms)

    def test_first_table_gives_other_basis(self, R2):
        alt = R2.with_special("first")
        x = alt.edge("e1") * alt.ghost("e1")
        assert format_element(x) == "v - e2*e2'"
        assert x == R2.edge("e1") * R2.ghost("e1")

    def test_vertices_are_nonzero(self, M5):
        for v in M5.graph.vertices:
            assert not M5.vertex(v).is_zero()


class TestMultiply:
    def test_ghost_edge(self, P):
        assert P("e1'*e1") == P("v")
        assert P("e1'*e2").is_zero()

    def test_expand(self, R2, P):
        x = multiply(P("e1 + e2"), P("e1' + e2'"))
        assert format_element(x) == "v + e1*e2' + e2*e1'"
        raw = [(1, a + "*" + b) for a in ("e1", "e2") for b in ("e1'", "e2'")]
        assert x.terms == oracle_terms(R2, raw)

    def test_vertex_unit(self, M5):
        cfg = SampleConfig(M5, seed=3)
        for i in range(100):
            x = random_element(cfg, i)
            assert M5.one() * x == x == x * M5.one()

    def test_vertex_orthogonality(self, M5):
        a, b = M5.vertex("a"), M5.vertex("b")
        assert (a * b).is_zero() and a * a == a

    def test_path_mismatch_is_zero(self, M5):
        assert (M5.edge("f3") * M5.edge("f1")).is_zero()

    def test_associativity_samples(self, R2, R3):
        for alg in (R2, R3):
            rng = random.Random(1)
            for _ in range(300):
                a, b, c = (alg.element({random_monomial(rng, alg, 4): 1}) for _ in range(3))
                assert (a * b) * c == a * (b * c)

    def test_sessions_do_not_mix(self, R2, R3):
        with pytest.raises(SessionMismatch):
            R2.edge("e1") * R3.edge("e1")


class TestInvolution:
    def test_swap(self, P):
        assert involution(P("e1*e2'")) == P("e2*e1'")

    def test_reverses_products(self, R3):
        cfg = SampleConfig(R3, seed=13)
        for i in range(150):
            x, y = random_element(cfg, 2 * i), random_element(cfg, 2 * i + 1)
            assert x.star().star() == x
            assert (x * y).star() == y.star() * x.star()

    def test_negates_degree(self, R3):
        cfg = SampleConfig(R3, seed=21)
        for i in range(100):
            x = random_element(cfg, i)
            assert set(graded_parts(x.star())) == {-d for d in graded_parts(x)}


class TestGrading:
    def test_parts(self, P):
        assert {d: format_element(x) for d, x in graded_parts(P("e1")).items()} == {1: "e1"}
        assert set(graded_parts(P("v + e1"))) == {0, 1}
        assert set(graded_parts(P("e1*e2'"))) == {0}

    def test_multiplicative(self, R2):
        cfg = SampleConfig(R2, seed=4)
        for i in range(100):
            for m, xm in graded_parts(random_element(cfg, 2 * i)).items():
                for n, yn in graded_parts(random_element(cfg, 2 * i + 1)).items():
                    assert all(t.degree == m + n for t in (xm * yn).terms)


class TestPolynomialsAtCycles:
    def test_linear(self, R2, P):
        c = R2.graph.path(("e2",))
        assert R2.eval_poly_at_cycle(parse_poly("1 - x", R2.field), c) == P("v - e2")

    def test_quadratic(self, R2, P):
        c = R2.graph.path(("e1", "e2"))
        f = parse_poly("1 - x - x^2", R2.field)
        assert R2.eval_poly_at_cycle(f, c) == P("v - e1*e2 - e1*e2*e1*e2")

    def test_constant(self, R2, P):
        assert R2.eval_poly_at_cycle(parse_poly("1", R2.field), R2.graph.path(("e1",))) == P("v")

    def test_open_path_rejected(self, M5):
        with pytest.raises(GraphError):
            M5.eval_poly_at_cycle(parse_poly("1 - x", M5.field), M5.graph.path(("f3",)))


class TestASubalgebra:
    def test_membership(self, R2, R3, P):
        assert in_A_subalgebra(parse_element("e1*e3*e2'", R3))
        assert not in_A_subalgebra(P("e2"))
        assert in_A_subalgebra(P("v"))
        assert in_A_subalgebra(parse_element("e3*e3'", R3))
        assert not in_A_subalgebra(P("e1'"))
        assert in_A_subalgebra(P("e1*e1*e2' - 3*e2'"))


class TestParsing:
    @pytest.mark.parametrize("text, shown", [
        ("e1'*e1", "v"),
        ("e1' - e1*e2'", "e1' - e1*e2'"),
        ("(e1+e2)*(e1'+e2')", "v + e1*e2' + e2*e1'"),
        ("2/3*e1^2", "2/3*e1*e1"),
        ("(e1*e2)'", "e2'*e1'"),
        ("-v", "-v"),
        ("e1^0", "v"),
    ])
    def test_examples(self, P, text, shown):
        assert format_element(P(text)) == shown

    @pytest.mark.parametrize("text", ["e1*", "e1 e2", "x9", "v^2'", "2/0", "e1 & e2", "(e1", ""])
    def test_errors(self, P, text):
        with pytest.raises(ParseError):
            P(text)

    def test_error_position(self, P):
        with pytest.raises(ParseError, match="position 3"):
            P("e1*")

    def test_round_trip(self, R3):
        cfg = SampleConfig(R3, seed=17)
        for i in range(300):
            x = random_element(cfg, i)
            assert parse_element(format_element(x), R3) == x

    def test_over_gf(self, R2_F5):
        assert format_element(parse_element("6*e1 + 1/2*e2", R2_F5)) == "e1 + 3*e2"


def test_monomial_star():
    m = Monomial(("e1",), ("e2", "e1"), "v")
    assert m.star() == Monomial(("e2", "e1"), ("e1",), "v") and m.degree == -1

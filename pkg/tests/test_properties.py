"""Property-based checks of the algebra axioms with hypothesis-driven sampling."""

from hypothesis import given, settings
from hypothesis import strategies as st

from leavitt import LeavittPathAlgebra, format_element, parse_element, rose
from leavitt.modules import sfc_act, sfc_witness
from leavitt.morphisms import apply_hom, build_anick, compose_homs
from leavitt.oracle import cross_check_zero, element_to_raw, reduction_verdicts

from conftest import make_spec

R2 = LeavittPathAlgebra(rose(2))
R3 = LeavittPathAlgebra(rose(3))
SPEC = make_spec(R2, "e1*e2", "1 - x - x^2")


def monomials(alg, max_len=4):
    edges = [e.name for e in alg.graph.edges]
    path = st.lists(st.sampled_from(edges), max_size=max_len).map(tuple)
    return st.tuples(path, path).map(lambda pq: alg.monomial(pq[0], pq[1], "v"))


def elements(alg, max_len=4):
    coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    term = st.tuples(coeff, monomials(alg, max_len)).map(lambda t: t[1] * t[0])
    return st.lists(term, max_size=4).map(lambda ts: sum(ts, alg.zero()))


def a_elements(max_len=3):
    """Elements of A(e1, e2) in R_2: combinations of e1^a (e2*)^b."""
    basis = st.tuples(st.integers(0, max_len), st.integers(0, max_len)).filter(
        lambda ab: sum(ab) <= max_len).map(
        lambda ab: R2.monomial(("e1",) * ab[0], ("e2",) * ab[1], "v"))
    coeff = st.integers(-2, 2)
    return st.lists(st.tuples(coeff, basis), max_size=3).map(
        lambda ts: sum((m * k for k, m in ts), R2.zero()))


@given(elements(R3), elements(R3), elements(R3))
def test_ring_axioms(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@given(elements(R3), elements(R3))
def test_involution_antimultiplicative(x, y):
    assert (x * y).star() == y.star() * x.star()
    assert x.star().star() == x


@given(elements(R3, 5))
def test_format_parse_round_trip(x):
    assert parse_element(format_element(x), R3) == x


@given(elements(R2, 5))
def test_strategies_agree(x):
    assert cross_check_zero(x)
    assert cross_check_zero(x - x)


@given(elements(R2, 3), elements(R2, 3))
def test_strategies_agree_on_products(x, y):
    raw = [(a * b, u + w) for a, u in element_to_raw(x) for b, w in element_to_raw(y)]
    assert len(set(reduction_verdicts(raw, R2).values())) == 1


@settings(max_examples=40, deadline=None)
@given(a_elements(), elements(R2, 3))
def test_anick_round_trip_and_multiplicative(p, x):
    sigma, inv = build_anick(p, "e1", "e2")
    both = compose_homs(sigma, inv)
    assert all(both(g) == g for g in R2.generators().values())
    assert apply_hom(inv, apply_hom(sigma, x)) == x


@settings(max_examples=40, deadline=None)
@given(elements(R2, 3).filter(lambda r: not r.is_zero()))
def test_witness(r):
    y = sfc_act(r, SPEC.z())
    if not y.is_zero():
        assert sfc_act(sfc_witness(y), y) == SPEC.z()


@given(st.integers(0, 6), st.integers(0, 6))
def test_grading(a, b):
    x = R2.monomial(("e1",) * a, ("e2",) * b, "v")
    assert set(x.algebra.graded_parts(x)) == ({a - b} if a or b else {0})

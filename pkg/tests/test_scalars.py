import itertools
import random
from fractions import Fraction

import pytest

from leavitt.errors import MathDomainError, ParseError
from leavitt.scalars import (GF, Field, Irreducibility, IrrPoly, Poly, Residue, format_poly,
                             is_irreducible, parse_poly, poly_arith, poly_gcd, poly_xgcd,
                             residue_inverse, split_f1)

Q = Field()
F5 = Field.parse("Fp:5")


def poly(text, field=Q):
    return parse_poly(text, field)


class TestField:
    def test_parse(self):
        assert Field.parse("Q") == Q
        assert Field.parse("Fp:7").characteristic == 7
        with pytest.raises(MathDomainError):
            Field.parse("Fp:6")
        with pytest.raises(ParseError):
            Field.parse("R")

    def test_gf_arithmetic(self):
        a, b = F5(3), F5(4)
        assert a + b == 2 and a * b == 2 and a / b == F5(3) * F5(4)
        assert F5(Fraction(1, 2)) == 3
        with pytest.raises(MathDomainError):
            F5(Fraction(1, 5))

    def test_gf_inverse_round_trip(self):
        for a in F5.elements()[1:]:
            assert a * (F5.one / a) == 1

    def test_mixing_characteristics(self):
        with pytest.raises(MathDomainError):
            Field.parse("Fp:7")(GF(1, 5))


class TestPoly:
    def test_mul(self):
        assert poly("1 - x") * poly("1 + x") == poly("1 - x^2")
        assert poly_arith("mul", poly("1 - x"), poly("1 + x")) == poly("1 - x^2")

    def test_divmod_example(self):
        q, r = poly_arith("divmod", poly("x^2"), poly("1 - x - x^2"))
        assert q == poly("-1") and r == poly("1 - x")

    def test_add_zero(self):
        f = poly("1 - x - x^2")
        assert poly_arith("add", f, Poly(Q)) == f

    def test_unknown_op(self):
        with pytest.raises(ValueError):
            poly_arith("pow", poly("x"), poly("x"))

    def test_divmod_reconstruction(self):
        rng = random.Random(7)
        for _ in range(500):
            a = Poly(Q, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(0, 6))])
            b = Poly(Q, [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(rng.randint(1, 4))])
            if not b:
                continue
            q, r = divmod(a, b)
            assert q * b + r == a and r.degree < b.degree

    def test_xgcd(self):
        a, b = poly("x^3 - 1"), poly("x^2 - 1")
        g, s, t = poly_xgcd(a, b)
        assert s * a + t * b == g and g == poly("x - 1").monic()
        assert poly_gcd(a, b) == g

    def test_evaluate(self):
        assert poly("1 - x - x^2")(2) == -5

    @pytest.mark.parametrize("text, shown", [
        ("1 - x - x^2", "1 - x - x^2"),
        ("1 - 2/3*x", "1 - 2/3*x"),
        ("x^3 + 2x", "2*x + x^3"),
        ("0", "0"),
        ("-x", "-x"),
    ])
    def test_text_round_trip(self, text, shown):
        assert format_poly(poly(text)) == shown
        assert poly(shown) == poly(text)

    def test_gf_text(self):
        assert poly("1 + 6x", F5) == poly("1 + x", F5)

    @pytest.mark.parametrize("bad", ["", "1 -", "1 x", "x^", "*x", "1/0"])
    def test_bad_text(self, bad):
        with pytest.raises(ParseError):
            poly(bad)


def _brute_irreducible(f: Poly) -> bool:
    """Trial division by every monic polynomial of degree 1..deg/2 over GF(p)."""
    field = f.field
    els = field.elements()
    for d in range(1, f.degree // 2 + 1):
        for tail in itertools.product(els, repeat=d):
            g = Poly(field, list(tail) + [field.one])
            if not (f % g):
                return False
    return True


class TestIrreducibility:
    @pytest.mark.parametrize("text, verdict", [
        ("1 - x", Irreducibility.YES),
        ("1 - x - x^2", Irreducibility.YES),
        ("1 - x^2", Irreducibility.NO),
        ("1 + x^3", Irreducibility.NO),
        ("1 - 2x^3", Irreducibility.YES),
        ("1 + x^2 + x^4", Irreducibility.UNDECIDED),
        ("1 - x^4", Irreducibility.NO),
    ])
    def test_rational(self, text, verdict):
        assert is_irreducible(poly(text)) is verdict

    def test_finite_field_against_trial_division(self):
        els = F5.elements()
        for deg in (1, 2, 3):
            for tail in itertools.product(els, repeat=deg):
                if not tail[-1]:
                    continue
                f = Poly(F5, [F5.one, *tail])
                expected = Irreducibility.YES if _brute_irreducible(f) else Irreducibility.NO
                assert is_irreducible(f) is expected, f

    def test_irrpoly_guards(self):
        with pytest.raises(MathDomainError):
            IrrPoly.make(poly("1"))
        with pytest.raises(MathDomainError):
            IrrPoly.make(poly("2 - x"))
        with pytest.raises(MathDomainError):
            IrrPoly.make(poly("1 - x^2"))
        with pytest.raises(MathDomainError):
            IrrPoly.make(poly("1 + x^2 + x^4"))
        f = IrrPoly.make(poly("1 + x^2 + x^4 + x"), assume_irreducible=True)
        assert f.asserted
        assert not IrrPoly.make(poly("1 - x")).asserted

    @pytest.mark.parametrize("text, f1", [("1 - x", "1"), ("1 - x - x^2", "1 + x"), ("1 + x", "-1")])
    def test_split_f1(self, text, f1):
        f = IrrPoly.make(poly(text))
        assert split_f1(f) == poly(f1)
        assert 1 - Poly.x(Q) * split_f1(f) == f.poly
        assert f.coefficients_a() == list(poly(f1).coeffs)


class TestResidues:
    def test_inverse_of_x(self):
        f = IrrPoly.make(poly("1 - x - x^2"))
        assert residue_inverse(Residue.x(f)) == Residue(poly("1 + x"), f)
        assert Residue.x(f).inverse() == Residue(split_f1(f), f)

    def test_trivial_inverses(self):
        f = IrrPoly.make(poly("1 - x"))
        assert residue_inverse(Residue(1, f)) == 1
        assert residue_inverse(Residue.x(f)) == 1

    def test_zero_has_no_inverse(self):
        with pytest.raises(ZeroDivisionError):
            Residue(0, IrrPoly.make(poly("1 - x"))).inverse()

    def test_reducible_modulus_detected(self):
        fake = IrrPoly(poly("1 - x^2"))
        with pytest.raises(MathDomainError):
            Residue(poly("1 - x"), fake).inverse()

    def test_random_inverses_gf(self):
        f = IrrPoly.make(poly("1 + x + 2x^2", F5))
        rng = random.Random(3)
        for _ in range(1000):
            u = Residue(Poly(F5, [F5(rng.randrange(5)) for _ in range(2)]), f)
            if u:
                assert u * u.inverse() == 1

    def test_random_field_axioms_q(self):
        f = IrrPoly.make(poly("1 - x - x^2"))
        rng = random.Random(11)

        def r():
            return Residue(Poly(Q, [Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(2)]), f)

        for _ in range(1000):
            a, b, c = r(), r(), r()
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            if a:
                assert a * a.inverse() == 1

    def test_different_moduli(self):
        with pytest.raises(MathDomainError):
            Residue(1, IrrPoly.make(poly("1 - x"))) + Residue(1, IrrPoly.make(poly("1 - x - x^2")))

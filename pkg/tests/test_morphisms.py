import pytest

from leavitt import format_element, parse_element
from leavitt.errors import MathDomainError, RelationError
from leavitt.morphisms import (AlgMatrix, GenMap, anick_matrices, apply_hom, build_anick,
                               build_phi_pq, check_relations, compose_homs, iso_condition,
                               matrix_arith, validate_pq)
from leavitt.oracle import SampleConfig, random_element


def identity_on_generators(m):
    return all(x == m.algebra.generators()[k] for k, x in m.images().items())


class TestMatrices:
    def test_identity_product(self, R2, P):
        A = AlgMatrix(R2, [[P("e1"), P("e2'")], [0, P("v")]])
        assert matrix_arith("mul", matrix_arith("identity", A), A) == A

    def test_unitriangular_inverse(self, R2, P):
        Pm, Qm = anick_matrices(P("e1*e2'"))
        assert Pm * Qm == AlgMatrix.identity(R2, 2)

    def test_size_mismatch(self, R2):
        with pytest.raises(ValueError):
            AlgMatrix.identity(R2, 2) * AlgMatrix.identity(R2, 3)

    def test_validate(self, R2, P):
        Pm, Qm = anick_matrices(P("e1"))
        assert validate_pq(Pm, Qm, "v")
        I = AlgMatrix.identity(R2, 3)
        assert validate_pq(I, I, "v")
        E = AlgMatrix(R2, [[P("e1")]])
        assert not validate_pq(E, E, "v")


class TestPhi:
    def test_unit_that_is_not_fixed(self, R1):
        Pm = AlgMatrix(R1, [[R1.ghost("e")]])
        Qm = AlgMatrix(R1, [[R1.edge("e")]])
        phi = build_phi_pq(["e"], Pm, Qm)
        assert phi(R1.edge("e")) == R1.vertex("v") == phi(R1.ghost("e"))
        assert R1.edge("e") != R1.ghost("e")
        assert not iso_condition(phi, Pm, Qm, "v")
        assert not check_relations(phi)

    def test_identity_matrices(self, R3):
        I = AlgMatrix.identity(R3, 3)
        phi = build_phi_pq(["e1", "e2", "e3"], I, I)
        assert phi == GenMap.identity(R3)
        assert iso_condition(phi, I, I, "v")

    def test_anick_as_phi(self, R2, P):
        Pm, Qm = anick_matrices(P("e1"))
        phi = build_phi_pq(["e1", "e2"], Pm, Qm)
        assert phi(P("e2")) == P("e2 + e1*e1")
        assert phi(P("e1'")) == P("e1' - e1*e2'")
        assert iso_condition(phi, Pm, Qm, "v")
        assert identity_on_generators(compose_homs(phi, build_phi_pq(["e1", "e2"], Qm, Pm)))

    def test_invalid_pair_rejected(self, R2, P):
        E = AlgMatrix(R2, [[P("e1")]])
        with pytest.raises(RelationError):
            build_phi_pq(["e1"], E, E)

    def test_edge_family_must_be_parallel(self, M5):
        I = AlgMatrix.identity(M5, 2)
        with pytest.raises(MathDomainError):
            build_phi_pq(["f1", "f3"], I, I)
        assert build_phi_pq(["g1", "g2"], I, I) == GenMap.identity(M5)


class TestRelations:
    def test_identity_is_clean(self, M5):
        assert check_relations(GenMap.identity(M5)) == []

    def test_anick_is_clean(self, P):
        sigma, _ = build_anick(P("e1"), "e1", "e2")
        assert check_relations(sigma) == []

    def test_broken_map(self, R2, P):
        m = GenMap.from_images(R2, {("edge", "e1"): P("v")})
        violations = check_relations(m)
        assert any(v.startswith("(3) e1'*e1") for v in violations)
        with pytest.raises(RelationError):
            m.verify()
        with pytest.raises(RelationError):
            apply_hom(m, P("e1"))


class TestAnick:
    def test_images(self, P):
        sigma, inv = build_anick(P("e1"), "e1", "e2")
        assert format_element(apply_hom(sigma, P("e2"))) == "e2 + e1*e1"
        assert format_element(apply_hom(inv, P("e2"))) == "e2 - e1*e1"
        assert format_element(apply_hom(sigma, P("e1'"))) == "e1' - e1*e2'"
        assert apply_hom(sigma, P("v")) == P("v")

    def test_zero_parameter(self, R2):
        sigma, inv = build_anick(R2.zero(), "e1", "e2")
        assert sigma == GenMap.identity(R2) == inv

    def test_round_trip(self, P):
        sigma, inv = build_anick(P("e1*e2'"), "e1", "e2")
        assert identity_on_generators(compose_homs(sigma, inv))
        assert identity_on_generators(compose_homs(inv, sigma))

    def test_fixes_A(self, R3):
        sigma, _ = build_anick(parse_element("e1*e3*e2'", R3), "e1", "e2")
        for text in ("e1*e1*e2'", "e3*e2'*e2'", "e1*e3*e3'*e2'", "e3*e3'"):
            x = parse_element(text, R3)
            assert apply_hom(sigma, x) == x

    def test_parameter_outside_A(self, P):
        with pytest.raises(MathDomainError):
            build_anick(P("e2"), "e1", "e2")
        with pytest.raises(MathDomainError):
            build_anick(P("e1"), "e2", "e1")

    def test_general_graph(self, M5):
        p = parse_element("g1*g1'", M5)
        sigma, inv = build_anick(p, "g1", "g2")
        assert apply_hom(sigma, M5.edge("g2")) == M5.edge("g2") + M5.edge("g1") * p
        assert identity_on_generators(compose_homs(inv, sigma))

    def test_multiplicative(self, R2, P):
        sigma, _ = build_anick(P("e1*e1 - e2'"), "e1", "e2")
        cfg = SampleConfig(R2, seed=8, max_len=4)
        for i in range(150):
            x, y = random_element(cfg, 2 * i), random_element(cfg, 2 * i + 1)
            assert apply_hom(sigma, x * y) == apply_hom(sigma, x) * apply_hom(sigma, y)


def test_compose_with_identity(R2, P):
    sigma, _ = build_anick(P("e1"), "e1", "e2")
    assert compose_homs(GenMap.identity(R2), sigma) == sigma

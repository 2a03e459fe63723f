from pathlib import Path

import pytest

from leavitt import LeavittPathAlgebra, SfcSpec, parse_element, parse_graph, parse_poly, rose
from leavitt.scalars import Field, IrrPoly

DATA = Path(__file__).parent / "data"


def mixed_graph():
    return parse_graph((DATA / "mixed5.graph").read_text())


def make_spec(alg, c, f, assume=False):
    """Build S^f_c from text forms, e.g. make_spec(R2, "e2", "1 - x")."""
    path = parse_element(c, alg).terms
    (mono,) = path
    return SfcSpec(alg, alg.graph.path(mono.real), IrrPoly.make(parse_poly(f, alg.field), assume))


@pytest.fixture(scope="session")
def R1():
    return LeavittPathAlgebra(parse_graph("vertex v\nedge e v v"))


@pytest.fixture(scope="session")
def R2():
    return LeavittPathAlgebra(rose(2))


@pytest.fixture(scope="session")
def R3():
    return LeavittPathAlgebra(rose(3))


@pytest.fixture(scope="session")
def R4():
    return LeavittPathAlgebra(rose(4))


@pytest.fixture(scope="session")
def M5():
    return LeavittPathAlgebra(mixed_graph())


@pytest.fixture(scope="session")
def R2_F5():
    return LeavittPathAlgebra(rose(2), Field.parse("Fp:5"))


@pytest.fixture
def P(R2):
    """Parse an expression in R_2."""
    return lambda text: parse_element(text, R2)


def words(text):
    """Raw word form of a product of generators such as ``e1*e2'``."""
    out = []
    for tok in text.split("*"):
        if tok.endswith("'"):
            out.append(("g", tok[:-1]))
        elif tok.startswith("e") or tok.startswith(("f", "g", "h")):
            out.append(("e", tok))
        else:
            out.append(("v", tok))
    return tuple(out)


def oracle_terms(alg, raw):
    """Normal form of ``[(coeff, "word"), ...]`` via the independent word reducer."""
    from collections import defaultdict

    from leavitt.oracle import reduce_words, special_table, word_to_monomial

    g = alg.graph
    nf = reduce_words([(c, words(w)) for c, w in raw], g, alg.field, special_table(g, "last"))
    terms = defaultdict(int)
    for w, c in nf.items():
        terms[word_to_monomial(g, w)] += c
    return {m: c for m, c in terms.items() if c}


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(results, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
        terminalreporter.write_line(line)

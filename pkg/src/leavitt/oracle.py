"""Brute-force cross checks for the algebra, homomorphism and module code.

The word reducer here is deliberately independent of :mod:`leavitt.algebra`:
it rewrites raw words in the generators ``v``, ``e`` and ``e*`` one adjacent
pair at a time, using either the leftmost or the rightmost redex, with any
special-edge table.  Agreement between these reductions and the monomial
arithmetic of the main implementation stands in for a confluence proof.
"""

from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable

from .algebra import Element, LeavittPathAlgebra, Monomial, format_element
from .graph import Graph
from .morphisms import GenMap, apply_hom, check_relations

# A word is a tuple of symbols ("v"|"e"|"g", name); "g" is a ghost edge.
Word = tuple
Raw = list  # [(coefficient, Word), ...]


@dataclass(frozen=True)
class SampleConfig:
    algebra: LeavittPathAlgebra = field(compare=False)
    seed: int = 42
    max_len: int = 6
    samples: int = 1000

    def rng(self, i: int = 0) -> random.Random:
        return random.Random(self.seed * 1_000_003 + i)


# -- random data ------------------------------------------------------------


def _walk_back(rng: random.Random, graph: Graph, end: str, length: int) -> tuple:
    path = []
    here = end
    for _ in range(length):
        into = [e.name for e in graph.edges if e.range == here]
        if not into:
            break
        e = rng.choice(into)
        path.append(e)
        here = graph.source(e)
    return tuple(reversed(path))


def random_monomial(rng: random.Random, algebra: LeavittPathAlgebra, max_len: int) -> Monomial:
    g = algebra.graph
    u = rng.choice(g.vertices)
    lp = rng.randint(0, max_len)
    lq = rng.randint(0, max_len - lp)
    return Monomial(_walk_back(rng, g, u, lp), _walk_back(rng, g, u, lq), u)


def _coefficient(rng: random.Random, algebra: LeavittPathAlgebra):
    c = 0
    while not algebra.field(c):
        c = rng.choice([-3, -2, -1, 1, 2, 3])
    return c


def random_element(cfg: SampleConfig, index: int = 0, terms: int | None = None) -> Element:
    """Reproducible combination of at most four random monomials."""
    rng = cfg.rng(index)
    alg = cfg.algebra
    n = rng.randint(1, 4) if terms is None else terms
    raw = [(random_monomial(rng, alg, cfg.max_len), _coefficient(rng, alg)) for _ in range(n)]
    return alg.element(raw)


def _symbol_ends(graph: Graph, sym) -> tuple[str, str]:
    kind, name = sym
    if kind == "v":
        return name, name
    if kind == "e":
        return graph.source(name), graph.range(name)
    return graph.range(name), graph.source(name)


def random_word(rng: random.Random, graph: Graph, length: int) -> Word:
    """Random generator word that mostly chains compatibly."""
    symbols = [("v", u) for u in graph.vertices]
    symbols += [(k, e.name) for e in graph.edges for k in ("e", "g")]
    word = [rng.choice(symbols)]
    for _ in range(length - 1):
        here = _symbol_ends(graph, word[-1])[1]
        fits = [s for s in symbols if _symbol_ends(graph, s)[0] == here]
        word.append(rng.choice(fits if fits and rng.random() < 0.9 else symbols))
    return tuple(word)


def relation_instance(rng: random.Random, graph: Graph) -> Raw:
    """A random defining relation written as a raw combination equal to zero."""
    kinds = ["vv", "ve", "ee", "ck1"] + (["ck2"] if graph.regular_vertices() else [])
    kind = rng.choice(kinds)
    if kind == "vv":
        u, w = rng.choice(graph.vertices), rng.choice(graph.vertices)
        return [(1, (("v", u), ("v", w)))] + ([(-1, (("v", w),))] if u == w else [])
    if kind == "ve":
        e = rng.choice(graph.edges)
        variants = [((("v", e.source), ("e", e.name)), ("e", e.name)),
                    ((("e", e.name), ("v", e.range)), ("e", e.name)),
                    ((("g", e.name), ("v", e.source)), ("g", e.name)),
                    ((("v", e.range), ("g", e.name)), ("g", e.name))]
        word, single = rng.choice(variants)
        return [(1, word), (-1, (single,))]
    if kind == "ee":
        e, f = rng.choice(graph.edges), rng.choice(graph.edges)
        if e.range != f.source:
            return [(1, (("e", e.name), ("e", f.name)))]
        return [(1, (("g", e.name), ("e", f.name)))] + (
            [(-1, (("v", e.range),))] if e == f else [])
    if kind == "ck1":
        e, f = rng.choice(graph.edges), rng.choice(graph.edges)
        return [(1, (("g", e.name), ("e", f.name)))] + (
            [(-1, (("v", e.range),))] if e == f else [])
    u = rng.choice(graph.regular_vertices())
    raw = [(1, (("e", e), ("g", e))) for e in graph.out_edges(u)]
    return raw + [(-1, (("v", u),))]


def random_raw(rng: random.Random, algebra: LeavittPathAlgebra, max_len: int,
               zero: bool) -> Raw:
    """Random raw combination; with ``zero`` it is a sum of sandwiched relations."""
    g = algebra.graph
    raw = []
    for _ in range(rng.randint(1, 3)):
        k = _coefficient(rng, algebra)
        if zero:
            rel = relation_instance(rng, g)
            budget = max(max_len - max(len(w) for _, w in rel), 0)
            left = random_word(rng, g, rng.randint(1, budget)) if budget and rng.random() < 0.7 else ()
            budget -= len(left)
            right = random_word(rng, g, rng.randint(1, budget)) if budget > 0 and rng.random() < 0.7 else ()
            raw.extend((k * c, left + w + right) for c, w in rel)
        else:
            raw.append((k, random_word(rng, g, rng.randint(1, max_len))))
    return raw


# -- word rewriting -----------------------------------------------------------


def special_table(graph: Graph, which: str) -> dict[str, str]:
    return {u: (graph.out_edges(u)[-1] if which == "last" else graph.out_edges(u)[0])
            for u in graph.regular_vertices()}


def _rewrite_pair(graph: Graph, special: dict, a, b):
    """Replacement for the adjacent pair ``a b``: ``None`` if it is not a redex,
    otherwise a list of ``(coefficient, symbols)``."""
    ka, na = a
    kb, nb = b
    if ka == "v":
        if kb == "v":
            return [(1, (b,))] if na == nb else []
        start = graph.source(nb) if kb == "e" else graph.range(nb)
        return [(1, (b,))] if start == na else []
    if kb == "v":
        end = graph.range(na) if ka == "e" else graph.source(na)
        return [(1, (a,))] if end == nb else []
    if ka == "g" and kb == "e":
        return [(1, (("v", graph.range(na)),))] if na == nb else []
    if ka == "e" and kb == "e":
        return None if graph.range(na) == graph.source(nb) else []
    if ka == "g" and kb == "g":
        return None if graph.source(na) == graph.range(nb) else []
    # edge followed by ghost
    if graph.range(na) != graph.range(nb):
        return []
    u = graph.source(na)
    if na == nb and special.get(u) == na:
        out = [(1, (("v", u),))]
        out += [(-1, (("e", f), ("g", f))) for f in graph.out_edges(u) if f != na]
        return out
    return None


def _find_redex(graph, special, word, rightmost: bool):
    positions = range(len(word) - 2, -1, -1) if rightmost else range(len(word) - 1)
    for i in positions:
        rep = _rewrite_pair(graph, special, word[i], word[i + 1])
        if rep is not None:
            return i, rep
    return None


def reduce_words(raw: Iterable, graph: Graph, field, special: dict,
                 rightmost: bool = False, max_steps: int = 1_000_000) -> dict[Word, object]:
    """Rewrite a raw combination of words to irreducible words."""
    done: dict = defaultdict(lambda: field.zero)
    stack = [(field(c), tuple(w)) for c, w in raw if field(c) and w]
    steps = 0
    while stack:
        steps += 1
        if steps > max_steps:
            raise RuntimeError("word reduction did not terminate")
        c, word = stack.pop() if rightmost else stack.pop(0)
        hit = _find_redex(graph, special, word, rightmost)
        if hit is None:
            done[word] += c
            continue
        i, rep = hit
        for k, syms in rep:
            stack.append((c * k, word[:i] + syms + word[i + 2:]))
    return {w: c for w, c in done.items() if c}


def word_to_monomial(graph: Graph, word: Word) -> Monomial:
    if len(word) == 1 and word[0][0] == "v":
        return Monomial((), (), word[0][1])
    real = tuple(n for k, n in word if k == "e")
    ghost = tuple(n for k, n in reversed(word) if k == "g")
    vertex = graph.range(real[-1]) if real else graph.range(ghost[-1])
    return Monomial(real, ghost, vertex)


def monomial_to_word(m: Monomial) -> Word:
    if not m.real and not m.ghost:
        return (("v", m.vertex),)
    return tuple(("e", e) for e in m.real) + tuple(("g", e) for e in reversed(m.ghost))


def element_to_raw(x: Element) -> Raw:
    return [(c, monomial_to_word(m)) for m, c in x.terms.items()]


def evaluate_raw(raw: Iterable, algebra: LeavittPathAlgebra) -> Element:
    """Evaluate a raw combination with the main implementation's arithmetic."""
    gens = {"v": algebra.vertex, "e": algebra.edge, "g": algebra.ghost}
    total = algebra.zero()
    for c, word in raw:
        acc = None
        for kind, name in word:
            x = gens[kind](name)
            acc = x if acc is None else acc * x
        total = total + acc * c
    return total


STRATEGIES = (("last", False), ("last", True), ("first", False), ("first", True))


def reduction_verdicts(x, algebra: LeavittPathAlgebra) -> dict[str, bool]:
    """Zero-ness of ``x`` under every strategy, keyed by strategy name."""
    raw = element_to_raw(x) if isinstance(x, Element) else list(x)
    g = algebra.graph
    verdicts = {"main": evaluate_raw(raw, algebra).is_zero()}
    for table, rightmost in STRATEGIES:
        nf = reduce_words(raw, g, algebra.field, special_table(g, table), rightmost)
        verdicts[f"{table}/{'rightmost' if rightmost else 'leftmost'}"] = not nf
    return verdicts


def cross_check_zero(x, algebra: LeavittPathAlgebra | None = None) -> bool:
    """True iff all reduction strategies agree on whether ``x`` is zero."""
    algebra = algebra or x.algebra
    return len(set(reduction_verdicts(x, algebra).values())) == 1


def cross_check_normal_form(raw, algebra: LeavittPathAlgebra) -> bool:
    """Exact agreement of the word reducer and the main arithmetic, per table."""
    raw = list(raw)
    g = algebra.graph
    for table in ("last", "first"):
        alg = algebra.with_special(table)
        main = evaluate_raw(raw, alg)
        for rightmost in (False, True):
            nf = reduce_words(raw, g, alg.field, special_table(g, table), rightmost)
            terms = defaultdict(lambda: alg.field.zero)
            for w, c in nf.items():
                terms[word_to_monomial(g, w)] += c
            if {m: c for m, c in terms.items() if c} != main.terms:
                return False
    return True


def format_raw(raw) -> str:
    def word(w):
        return "*".join(n if k != "g" else f"{n}'" for k, n in w)
    return " + ".join(f"({c})*{word(w)}" for c, w in raw) or "0"


# -- suites -------------------------------------------------------------------

SUITES = ("assoc", "relations", "module", "hom", "confluence")


def check_suite(kind: str, cfg: SampleConfig, subject=None) -> list[str]:
    """Run an invariant battery; returns ``FAIL ...`` lines (empty when all pass)."""
    from .modules import SfcSpec

    if kind not in SUITES:
        raise ValueError(f"unknown suite {kind!r}")
    if kind in ("assoc", "relations", "confluence"):
        subject = subject if subject is not None else cfg.algebra
        if not isinstance(subject, LeavittPathAlgebra):
            raise TypeError(f"suite {kind} needs an algebra")
    elif kind == "module" and not isinstance(subject, SfcSpec):
        raise TypeError("suite module needs an SfcSpec")
    elif kind == "hom" and not isinstance(subject, GenMap):
        raise TypeError("suite hom needs a GenMap")
    runner = {"assoc": _suite_assoc, "relations": _suite_relations, "module": _suite_module,
              "hom": _suite_hom, "confluence": _suite_confluence}[kind]
    return runner(cfg, subject)


def _fail(suite, cfg, i, *parts) -> str:
    case = " | ".join(str(p) for p in parts)
    return f"FAIL {suite} seed={cfg.seed * 1_000_003 + i} case={case}"


def _suite_assoc(cfg: SampleConfig, alg: LeavittPathAlgebra) -> list[str]:
    out = []
    for i in range(cfg.samples):
        rng = cfg.rng(i)
        a, b, c = (alg.element([(random_monomial(rng, alg, cfg.max_len), 1)]) for _ in range(3))
        if (a * b) * c != a * (b * c):
            out.append(_fail("assoc", cfg, i, a, b, c))
        ab = a * b
        if (ab).star() != b.star() * a.star():
            out.append(_fail("assoc", cfg, i, "involution", a, b))
        for da, xa in alg.graded_parts(a).items():
            for db, xb in alg.graded_parts(b).items():
                if any(m.degree != da + db for m in (xa * xb).terms):
                    out.append(_fail("assoc", cfg, i, "grading", a, b))
    return out


def _suite_relations(cfg: SampleConfig, alg: LeavittPathAlgebra) -> list[str]:
    out = [f"FAIL relations seed={cfg.seed} case={r}"
           for r in check_relations(GenMap.from_images(alg))]
    for u in alg.graph.vertices:
        if alg.vertex(u).is_zero():
            out.append(f"FAIL relations seed={cfg.seed} case=vertex {u} is zero")
    return out


def _suite_confluence(cfg: SampleConfig, alg: LeavittPathAlgebra) -> list[str]:
    out = []
    for i in range(cfg.samples):
        rng = cfg.rng(i)
        raw = random_raw(rng, alg, cfg.max_len, zero=bool(i % 2))
        verdicts = reduction_verdicts(raw, alg)
        if len(set(verdicts.values())) != 1 or (i % 2 and not verdicts["main"]):
            out.append(_fail("confluence", cfg, i, format_raw(raw), verdicts))
    return out


def _random_module_element(rng, spec, n_terms, max_len):
    from .modules import canonical_indices
    from .scalars import Poly, Residue

    indices = canonical_indices(spec, max_len)
    alg = spec.algebra
    raw = []
    for _ in range(n_terms):
        coeffs = [rng.randint(-3, 3) for _ in range(spec.f.degree)]
        raw.append((rng.choice(indices), Residue(Poly(alg.field, coeffs), spec.f)))
    return spec.element(raw)


def _suite_module(cfg: SampleConfig, spec) -> list[str]:
    from .modules import sfc_act, sfc_endo, sfc_witness
    from .scalars import Residue

    alg = spec.algebra
    z = spec.generator()
    out = []
    if not sfc_act(spec.f_of_c(), z).is_zero():
        out.append(f"FAIL module seed={cfg.seed} case=f(c)z != 0")
    f1c = alg.eval_poly_at_cycle(spec.f1.poly, spec.c)
    if sfc_act(spec.c_element() * f1c, z) != z:
        out.append(f"FAIL module seed={cfg.seed} case=z != c f1(c) z")
    small = min(cfg.max_len, 3)
    for i in range(cfg.samples):
        rng = cfg.rng(i)
        r = alg.element([(random_monomial(rng, alg, small), 1)])
        s = alg.element([(random_monomial(rng, alg, small), 1)])
        m = _random_module_element(rng, spec, rng.randint(1, 3), small)
        if sfc_act(r * s, m) != sfc_act(r, sfc_act(s, m)):
            out.append(_fail("module", cfg, i, "rs.m", r, s, m))
        if sfc_act(r + s, m) != sfc_act(r, m) + sfc_act(s, m):
            out.append(_fail("module", cfg, i, "(r+s).m", r, s, m))
        u = Residue(rng.randint(1, 5), spec.f) + spec.xbar * rng.randint(-2, 2)
        if u and sfc_endo(u, sfc_act(r, m)) != sfc_act(r, sfc_endo(u, m)):
            out.append(_fail("module", cfg, i, "endo", u, r, m))
        y = sfc_act(r, m)
        if y and sfc_act(sfc_witness(y), y) != z:
            out.append(_fail("module", cfg, i, "witness", y))
    return out


def _suite_hom(cfg: SampleConfig, m: GenMap) -> list[str]:
    out = [f"FAIL hom seed={cfg.seed} case={r}" for r in check_relations(m)]
    if out:
        return out
    if not m.verified:
        m = m.verify()
    alg = m.algebra
    small = min(cfg.max_len, 4)
    for i in range(cfg.samples):
        rng = cfg.rng(i)
        x = alg.element([(random_monomial(rng, alg, small), _coefficient(rng, alg))
                         for _ in range(rng.randint(1, 2))])
        y = alg.element([(random_monomial(rng, alg, small), 1)])
        if apply_hom(m, x * y) != apply_hom(m, x) * apply_hom(m, y):
            out.append(_fail("hom", cfg, i, format_element(x), format_element(y)))
    return out

"""Simple modules S^f_c, their Anick twists, and rational Chen modules.

S^f_c is generated by ``z`` subject to ``z = c f_1(c) z``.  Every element is a
finite sum ``sum_alpha alpha u_alpha(c) z`` where the index paths ``alpha`` end
at ``v = s(c)`` and do not end in a full copy of ``c``, and ``u_alpha`` is a
nonzero residue in K[x]/(f).  A trailing copy of ``c`` is absorbed into the
residue as a factor ``x``; that normal form makes equality and the zero test
exact.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from itertools import count

from .algebra import Element, LeavittPathAlgebra, Monomial
from .errors import GraphError, LeavittError, MathDomainError, SessionMismatch
from .graph import (Path, RationalInfinitePath, in_Cs, is_simple_closed,
                    rational_tail_equivalent, tau_truncate)
from .morphisms import GenMap, apply_hom, build_anick
from .scalars import IrrPoly, Poly, Residue, split_f1


@dataclass(frozen=True, eq=False)
class SfcSpec:
    """The data ``(E, c, f)`` defining S^f_c."""

    algebra: LeavittPathAlgebra
    c: Path
    f: IrrPoly

    def __post_init__(self):
        if not is_simple_closed(self.c):
            raise MathDomainError(f"{self.c} is not a simple closed path")
        if self.f.field != self.algebra.field:
            raise SessionMismatch("polynomial and algebra use different fields")
        self.algebra.graph.path(self.c.edges)

    @property
    def v(self) -> str:
        return self.c.source

    @property
    def f1(self) -> Residue:
        return Residue(split_f1(self.f), self.f)

    @property
    def xbar(self) -> Residue:
        return Residue.x(self.f)

    def generator(self) -> "SfcElement":
        return SfcElement(self, {(): Residue(1, self.f)})

    z = generator

    def zero(self) -> "SfcElement":
        return SfcElement(self, {})

    def element(self, raw) -> "SfcElement":
        return sfc_canonicalize(raw, self)

    def f_of_c(self) -> Element:
        return self.algebra.eval_poly_at_cycle(self.f.poly, self.c)

    def c_element(self) -> Element:
        return self.algebra.path(self.c)

    def __eq__(self, other):
        return (isinstance(other, SfcSpec) and self.algebra.same_session(other.algebra)
                and self.c == other.c and self.f.poly == other.f.poly)

    def __hash__(self):
        return hash((self.c, self.f.poly))

    def __str__(self):
        return f"sfc:c={self.c},f={self.f}"


class SfcElement:
    """Element of S^f_c as ``{alpha: residue}`` with canonical indices."""

    __slots__ = ("spec", "terms")

    def __init__(self, spec: SfcSpec, terms: dict):
        self.spec = spec
        self.terms = terms

    def _check(self, other: "SfcElement"):
        if not isinstance(other, SfcElement) or other.spec != self.spec:
            raise SessionMismatch("elements of different modules")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for a, u in other.terms.items():
            s = out[a] + u if a in out else u
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return SfcElement(self.spec, out)

    def __neg__(self):
        return SfcElement(self.spec, {a: -u for a, u in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, scalar):
        out = {a: u * scalar for a, u in self.terms.items()}
        return SfcElement(self.spec, {a: u for a, u in out.items() if u})

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, SfcElement):
            return NotImplemented
        return self.spec == other.spec and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        ei = self.spec.algebra.graph.edge_index
        return sorted(self.terms.items(), key=lambda t: (len(t[0]), [ei(e) for e in t[0]]))

    def __str__(self):
        return format_sfc(self)

    def __repr__(self):
        return f"SfcElement({self})"


def format_sfc(m: SfcElement) -> str:
    if not m.terms:
        return "0"
    v = m.spec.v
    return " + ".join(f"[{'*'.join(a) if a else v}]({u})" for a, u in m.sorted_terms())


def _index_key(graph, alpha):
    return (len(alpha), [graph.edge_index(e) for e in alpha])


def sfc_canonicalize(raw, spec: SfcSpec) -> SfcElement:
    """Strip trailing copies of ``c`` (each one becomes a factor ``x``) and merge."""
    g = spec.algebra.graph
    c = spec.c.edges
    xbar = spec.xbar
    items = raw.items() if hasattr(raw, "items") else raw
    acc: dict = {}
    for alpha, u in items:
        alpha = tuple(alpha)
        if alpha:
            p = g.path(alpha)
            if p.range != spec.v:
                raise GraphError(f"index {p} does not end at {spec.v}")
        u = u if isinstance(u, Residue) else Residue(u, spec.f)
        while len(alpha) >= len(c) and alpha[len(alpha) - len(c):] == c:
            alpha = alpha[: len(alpha) - len(c)]
            u = u * xbar
        acc[alpha] = acc[alpha] + u if alpha in acc else u
    return SfcElement(spec, {a: u for a, u in acc.items() if u})


def _act_monomial(spec: SfcSpec, mono: Monomial, alpha: tuple, u: Residue):
    """``mono . (alpha u(c) z)`` as a single raw term, or ``None`` for zero."""
    g = spec.algebra.graph
    c = spec.c.edges
    for e in mono.ghost:
        if alpha:
            if alpha[0] != e:
                return None
            alpha = alpha[1:]
        else:
            # unroll u(c) z = c (u f_1)(c) z once and cancel the first letter
            if c[0] != e:
                return None
            alpha = c[1:]
            u = u * spec.f1
    where = g.source(alpha[0]) if alpha else spec.v
    if where != mono.vertex:
        return None
    return mono.real + alpha, u


def sfc_act(r: Element, m: SfcElement, spec: SfcSpec | None = None) -> SfcElement:
    """The untwisted action ``r . m`` in S^f_c."""
    spec = spec or m.spec
    if not spec.algebra.same_session(r.algebra):
        raise SessionMismatch("element from a different algebra")
    raw = []
    for mono, k in r.terms.items():
        for alpha, u in m.terms.items():
            t = _act_monomial(spec, mono, alpha, u)
            if t is not None:
                raw.append((t[0], t[1] * k))
    return sfc_canonicalize(raw, spec)


def sfc_annihilates(r: Element, spec: SfcSpec) -> bool:
    """``r z == 0``, i.e. ``r`` lies in ``L f(c)`` (for ``r = r v``)."""
    return sfc_act(r, spec.generator()).is_zero()


def _require_rose_twist(spec: SfcSpec, *elements: Element):
    alg = spec.algebra
    if not in_Cs(spec.c, alg.graph):
        raise MathDomainError(f"{spec.c} is not in C_s(R_n)")
    for p in elements:
        if not alg.in_A_subalgebra(p):
            raise MathDomainError(f"{p} is not in A(e1, e2)")


def sfc_equiv(p: Element, q: Element, spec: SfcSpec) -> bool:
    """``p == q`` modulo ``L f(c)``, for ``p, q`` in A(e1, e2)."""
    alg = spec.algebra
    if not alg.graph.is_rose():
        raise MathDomainError("the relation is defined on roses only")
    for x in (p, q):
        if not alg.in_A_subalgebra(x):
            raise MathDomainError(f"{x} is not in A(e1, e2)")
    return sfc_annihilates(p - q, spec)


class TwistedModule:
    """S^{f,p}_c: the space of S^f_c with ``r * m = sigma_p(r) . m``."""

    def __init__(self, spec: SfcSpec, p: Element):
        g = spec.algebra.graph
        if not g.is_rose():
            raise MathDomainError("twisted modules are defined on roses only")
        _require_rose_twist(spec, p)
        self.spec = spec
        self.p = p
        self.sigma, self.sigma_inv = build_anick(p, g.petal(1), g.petal(2))

    def act(self, r: Element, m: SfcElement) -> SfcElement:
        return sfc_act(apply_hom(self.sigma, r), m, self.spec)

    def generator(self) -> SfcElement:
        return self.spec.generator()


def sfc_act_twisted(p: Element, r: Element, m: SfcElement, spec: SfcSpec | None = None
                    ) -> SfcElement:
    return TwistedModule(spec or m.spec, p).act(r, m)


def sfc_endo(u: Residue, m: SfcElement, spec: SfcSpec | None = None) -> SfcElement:
    """The endomorphism ``z -> u(c) z`` applied to ``m``."""
    spec = spec or m.spec
    if not isinstance(u, Residue):
        u = Residue(u, spec.f)
    return m * u


def _prefix_of_tail(alpha: tuple, c: tuple, t: int) -> tuple:
    word = alpha
    while len(word) < t:
        word = word + c
    return word[:t]


def sfc_witness(y: SfcElement, spec: SfcSpec | None = None) -> Element:
    """Some ``r`` in L_K(E) with ``r . y == z``.

    Take the smallest index ``b`` of ``y`` and the least ``l`` such that the
    length ``|b| + l|c|`` truncation of ``b c^inf`` differs from that of every
    other index tail.  Then ``(b c^l)* y = u_b f_1^l z`` and multiplying by the
    inverse residue, evaluated at ``c``, gives ``z``.
    """
    spec = spec or y.spec
    if y.is_zero():
        raise MathDomainError("the zero element generates nothing")
    alg = spec.algebra
    g = alg.graph
    c = spec.c.edges
    indices = sorted(y.terms, key=lambda a: _index_key(g, a))
    b = indices[0]
    for l in count():
        word = b + c * l
        t = len(word)
        if all(_prefix_of_tail(a, c, t) != word for a in indices[1:]):
            break
        if l > 4 * (max(len(a) for a in indices) + len(c)):
            raise LeavittError("no separating truncation found")
    u = y.terms[b] * spec.f1 ** l
    q = u.inverse()
    r = alg.eval_poly_at_cycle(q.poly, spec.c) * alg.element({Monomial((), word, spec.v): 1})
    if sfc_act(r, y, spec) != spec.generator():
        raise LeavittError("witness failed verification")
    return r


# -- Chen modules ---------------------------------------------------------


class ChenModule:
    """V_[c^inf]: the span of infinite paths tail equivalent to ``c^inf``."""

    def __init__(self, algebra: LeavittPathAlgebra, c: Path):
        if not c.is_closed:
            raise MathDomainError(f"{c} is not closed")
        algebra.graph.path(c.edges)
        self.algebra = algebra
        self.c = c
        self.base = RationalInfinitePath.periodic(c)

    def basis(self, prefix: Path | tuple = ()) -> "ChenElement":
        if not isinstance(prefix, Path):
            prefix = self.algebra.graph.path(tuple(prefix), self.c.source)
        key = RationalInfinitePath.make(prefix, self.c)
        return ChenElement(self, {key: self.algebra.field.one})

    def element(self, raw) -> "ChenElement":
        acc = defaultdict(lambda: self.algebra.field.zero)
        for key, k in (raw.items() if hasattr(raw, "items") else raw):
            if not rational_tail_equivalent(key, self.base):
                raise MathDomainError(f"{key} is not tail equivalent to {self.base}")
            acc[key] += self.algebra.field(k)
        return ChenElement(self, {q: k for q, k in acc.items() if k})

    def zero(self) -> "ChenElement":
        return ChenElement(self, {})


class ChenElement:
    __slots__ = ("module", "terms")

    def __init__(self, module: ChenModule, terms: dict):
        self.module = module
        self.terms = terms

    def __add__(self, other):
        return self.module.element(list(self.terms.items()) + list(other.terms.items()))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, ChenElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __str__(self):
        if not self.terms:
            return "0"
        items = sorted(self.terms.items(), key=lambda t: (len(t[0].prefix), str(t[0])))
        return " + ".join(f"{k}*[{q}]" for q, k in items)


def _chen_monomial(module: ChenModule, mono: Monomial, q: RationalInfinitePath):
    g = module.algebra.graph
    for e in mono.ghost:
        if q.first_edge() != e:
            return None
        q = tau_truncate(q, 1)[1]
    if q.source != mono.vertex:
        return None
    if mono.real:
        q = q.prepend(g.path(mono.real))
    return q


def chen_act(r: Element, m: ChenElement) -> ChenElement:
    module = m.module
    if not module.algebra.same_session(r.algebra):
        raise SessionMismatch("element from a different algebra")
    raw = []
    for mono, k in r.terms.items():
        for q, a in m.terms.items():
            t = _chen_monomial(module, mono, q)
            if t is not None:
                raw.append((t, k * a))
    return module.element(raw)


def canonical_indices(spec: SfcSpec, max_len: int) -> list[tuple]:
    """Every canonical index path of length at most ``max_len``."""
    g = spec.algebra.graph
    c = spec.c.edges
    out = [()]
    frontier = [()]
    for _ in range(max_len):
        nxt = []
        for alpha in frontier:
            head = g.source(alpha[0]) if alpha else spec.v
            for e in g.edges:
                if e.range == head:
                    nxt.append((e.name,) + alpha)
        frontier = nxt
        out.extend(a for a in nxt if a[len(a) - len(c):] != c or len(a) < len(c))
    return out


def sfc_to_chen(m: SfcElement, module: ChenModule) -> ChenElement:
    """The coordinate map ``alpha z -> alpha c^inf`` (only meaningful for ``f = 1 - x``)."""
    g = m.spec.algebra.graph
    raw = [(RationalInfinitePath.make(g.path(a, m.spec.v), module.c), u.poly[0])
           for a, u in m.terms.items()]
    return module.element(raw)


def sfc_to_chen_compat_check(spec: SfcSpec, max_len: int = 4) -> bool:
    """Check that ``alpha z <-> alpha c^inf`` intertwines the two actions.

    Every generator is applied to every canonical index of length at most
    ``max_len``.  Requires ``f = 1 - x``.
    """
    field = spec.algebra.field
    if spec.f.poly != Poly(field, (1, -1)):
        raise MathDomainError("the Chen comparison needs f = 1 - x")
    module = ChenModule(spec.algebra, spec.c)
    images = set()
    for alpha in canonical_indices(spec, max_len):
        m = spec.element({alpha: 1})
        image = sfc_to_chen(m, module)
        images.add(next(iter(image.terms)))
        for gen in spec.algebra.generators().values():
            if sfc_to_chen(sfc_act(gen, m), module) != chen_act(gen, image):
                return False
    return len(images) == len(canonical_indices(spec, max_len))

"""Leavitt path algebras of finite graphs with a canonical monomial basis.

Every element is stored as a finite linear combination of monomials ``p q*``
with ``r(p) == r(q)``.  For each regular vertex ``u`` one out-edge is chosen
as *special*; a monomial is canonical when ``p`` and ``q`` do not both end in
the special edge of the vertex they leave from.  The rewrite

    p' g g* q'*  ->  p' q'*  -  sum_{f in s^-1(u), f != g} p' f f* q'*

(the Cuntz-Krieger relation at ``u = s(g)`` oriented towards ``u``) brings any
monomial to canonical form, and canonical monomials form a basis.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Mapping, NamedTuple

from .errors import GraphError, MathDomainError, SessionMismatch
from .graph import Graph, Path
from .scalars import Field, Poly


class Monomial(NamedTuple):
    """``p q*`` where ``vertex == r(p) == r(q)``; both parts empty means a vertex."""

    real: tuple
    ghost: tuple
    vertex: str

    @property
    def degree(self) -> int:
        return len(self.real) - len(self.ghost)

    def star(self) -> "Monomial":
        return Monomial(self.ghost, self.real, self.vertex)


class LeavittPathAlgebra:
    """L_K(E) for a finite graph E over an exact field K.

    ``special`` selects the special edge of each regular vertex: ``"last"``
    (the default, last declared out-edge), ``"first"``, or an explicit
    mapping from vertex to edge.
    """

    def __init__(self, graph: Graph, field: Field | None = None, special="last"):
        self.graph = graph
        self.field = field if field is not None else Field()
        table = {}
        for u in graph.regular_vertices():
            outs = graph.out_edges(u)
            if special == "last":
                table[u] = outs[-1]
            elif special == "first":
                table[u] = outs[0]
            else:
                table[u] = special.get(u, outs[-1])
                if table[u] not in outs:
                    raise GraphError(f"special edge {table[u]!r} does not leave {u!r}")
        self.special = table
        self._nf_cache: dict[Monomial, dict[Monomial, int]] = {}
        self._siblings: dict = {}

    def __repr__(self):
        return f"LeavittPathAlgebra({self.graph!r}, {self.field!r})"

    def same_session(self, other: "LeavittPathAlgebra") -> bool:
        return self is other or (self.graph == other.graph and self.field == other.field)

    def with_special(self, special) -> "LeavittPathAlgebra":
        """The same algebra presented with a different special-edge table."""
        key = special if isinstance(special, str) else tuple(sorted(special.items()))
        if key not in self._siblings:
            self._siblings[key] = LeavittPathAlgebra(self.graph, self.field, special)
        return self._siblings[key]

    # -- constructors -------------------------------------------------------

    def element(self, terms: Mapping[Monomial, object] | Iterable = ()) -> "Element":
        """Normalize a raw combination of (possibly non-canonical) monomials."""
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc = defaultdict(lambda: self.field.zero)
        for mono, coeff in items:
            self._check_monomial(mono)
            coeff = self.field(coeff)
            if not coeff:
                continue
            for m, k in self._reduce(mono).items():
                acc[m] += coeff * k
        return Element(self, {m: c for m, c in acc.items() if c})

    normal_form = element

    def zero(self) -> "Element":
        return Element(self, {})

    def one(self) -> "Element":
        return Element(self, {Monomial((), (), u): self.field.one for u in self.graph.vertices})

    def scalar(self, c) -> "Element":
        return self.one() * c

    def vertex(self, name: str) -> "Element":
        if not self.graph.is_vertex(name):
            raise GraphError(f"unknown vertex {name!r}")
        return Element(self, {Monomial((), (), name): self.field.one})

    def edge(self, name: str) -> "Element":
        return Element(self, {Monomial((name,), (), self.graph.range(name)): self.field.one})

    def ghost(self, name: str) -> "Element":
        return Element(self, {Monomial((), (name,), self.graph.range(name)): self.field.one})

    def path(self, p: Path | Iterable[str], vertex: str | None = None) -> "Element":
        """The element of a real path (a vertex when the path is empty)."""
        if not isinstance(p, Path):
            p = self.graph.path(tuple(p), vertex)
        return self.element({Monomial(p.edges, (), p.range): 1})

    def ghost_path(self, p: Path | Iterable[str], vertex: str | None = None) -> "Element":
        """``p*`` for a path ``p``."""
        return self.path(p, vertex).star()

    def monomial(self, real=(), ghost=(), vertex: str | None = None) -> "Element":
        real, ghost = tuple(real), tuple(ghost)
        if vertex is None:
            if real:
                vertex = self.graph.range(real[-1])
            elif ghost:
                vertex = self.graph.range(ghost[-1])
            else:
                raise GraphError("vertex monomials need an explicit vertex")
        return self.element({Monomial(real, ghost, vertex): 1})

    def generators(self) -> dict[tuple[str, str], "Element"]:
        """All generators keyed by ``("vertex"|"edge"|"ghost", name)``."""
        gens = {("vertex", u): self.vertex(u) for u in self.graph.vertices}
        for e in self.graph.edges:
            gens[("edge", e.name)] = self.edge(e.name)
            gens[("ghost", e.name)] = self.ghost(e.name)
        return gens

    def convert(self, x: "Element") -> "Element":
        """Re-express an element of a sibling presentation in this one."""
        if not self.same_session(x.algebra):
            raise SessionMismatch("elements live in different algebras")
        if x.algebra.special == self.special:
            return Element(self, dict(x.terms))
        return self.element(x.terms)

    # -- core rewriting -----------------------------------------------------

    def _check_monomial(self, m: Monomial):
        g = self.graph
        for part in (m.real, m.ghost):
            if part:
                g.path(part)
                if g.range(part[-1]) != m.vertex:
                    raise GraphError(f"monomial {m} has mismatched ranges")
            elif not g.is_vertex(m.vertex):
                raise GraphError(f"unknown vertex {m.vertex!r}")

    def is_canonical(self, m: Monomial) -> bool:
        if not m.real or not m.ghost or m.real[-1] != m.ghost[-1]:
            return True
        e = m.real[-1]
        return self.special.get(self.graph.source(e)) != e

    def _reduce(self, m: Monomial) -> dict[Monomial, int]:
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        if self.is_canonical(m):
            out = {m: 1}
        else:
            g = self.graph
            e = m.real[-1]
            u = g.source(e)
            p, q = m.real[:-1], m.ghost[:-1]
            out = dict(self._reduce(Monomial(p, q, u)))
            for f in g.out_edges(u):
                if f != e:
                    t = Monomial(p + (f,), q + (f,), g.range(f))
                    out[t] = out.get(t, 0) - 1
            out = {k: v for k, v in out.items() if v}
        self._nf_cache[m] = out
        return out

    def monomial_product(self, a: Monomial, b: Monomial) -> Monomial | None:
        """``(p q*)(r s*)`` as a single (maybe non-canonical) monomial, or ``None`` for 0."""
        g = self.graph
        q, r = a.ghost, b.real
        start_q = g.source(q[0]) if q else a.vertex
        start_r = g.source(r[0]) if r else b.vertex
        if start_q != start_r:
            return None
        n = min(len(q), len(r))
        if q[:n] != r[:n]:
            return None
        if len(q) <= len(r):
            return Monomial(a.real + r[len(q):], b.ghost, b.vertex)
        return Monomial(a.real, b.ghost + q[len(r):], a.vertex)

    def multiply(self, x: "Element", y: "Element") -> "Element":
        if not self.same_session(x.algebra) or not self.same_session(y.algebra):
            raise SessionMismatch("cannot multiply elements of different algebras")
        acc = defaultdict(lambda: self.field.zero)
        for ma, ca in x.terms.items():
            for mb, cb in y.terms.items():
                m = self.monomial_product(ma, mb)
                if m is None:
                    continue
                c = ca * cb
                for t, k in self._reduce(m).items():
                    acc[t] += c * k
        return Element(self, {m: c for m, c in acc.items() if c})

    # -- structure ----------------------------------------------------------

    def graded_parts(self, x: "Element") -> dict[int, "Element"]:
        parts: dict[int, dict] = defaultdict(dict)
        for m, c in x.terms.items():
            parts[m.degree][m] = c
        return {d: Element(self, t) for d, t in sorted(parts.items())}

    def eval_poly_at_cycle(self, f: Poly, c: Path) -> "Element":
        """``a_0 v + a_1 c + ... + a_n c^n`` for a closed path ``c`` based at ``v``."""
        if not c.is_closed:
            raise GraphError(f"{c} is not a closed path")
        if f.field != self.field:
            raise SessionMismatch("polynomial over a different field")
        terms = {}
        for i, a in enumerate(f.coeffs):
            if a:
                terms[Monomial(c.edges * i, (), c.source)] = a
        return self.element(terms)

    def in_A_subalgebra(self, x: "Element") -> bool:
        """Membership in the subalgebra A(e1, e2) of L(R_n).

        A(e1, e2) is generated by ``v``, the petals other than ``e2`` and the
        ghosts other than ``e1*``.  Its spanning monomials ``p q*`` (``p``
        avoiding ``e2``, ``q`` avoiding ``e1``) are canonical exactly when
        ``e1`` or ``e2`` is the special edge, so the test is run in the
        presentation whose special edge is ``e1``.
        """
        g = self.graph
        if not g.is_rose() or len(g.edges) < 2:
            raise MathDomainError("A(e1, e2) is only defined on roses with at least 2 petals")
        e1, e2 = g.petal(1), g.petal(2)
        y = self.with_special({g.vertices[0]: e1}).convert(x)
        return all(e2 not in m.real and e1 not in m.ghost for m in y.terms)

    def sort_key(self, m: Monomial):
        ei = self.graph.edge_index
        return (len(m.real) + len(m.ghost), tuple(ei(e) for e in m.real),
                tuple(ei(e) for e in m.ghost), self.graph.vertex_index(m.vertex))


class Element:
    """Immutable element of a :class:`LeavittPathAlgebra` in canonical form."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittPathAlgebra, terms: dict):
        self.algebra = algebra
        self.terms = terms

    def _other(self, other) -> "Element":
        if isinstance(other, Element):
            if other.algebra is self.algebra:
                return other
            return self.algebra.convert(other)
        return self.algebra.scalar(other)

    def __add__(self, other):
        other = self._other(other)
        zero = self.algebra.field.zero
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, zero) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return self._other(other) - self

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.algebra.multiply(self, self._other(other))
        c = self.algebra.field(other)
        if not c:
            return self.algebra.zero()
        return Element(self.algebra, {m: v * c for m, v in self.terms.items()})

    def __rmul__(self, other):
        if isinstance(other, Element):
            return self._other(other) * self
        return self * other

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not defined")
        result = self.algebra.one()
        for _ in range(k):
            result = result * self
        return result

    def star(self) -> "Element":
        """The involution ``p q* -> q p*`` extended K-linearly."""
        return Element(self.algebra, {m.star(): c for m, c in self.terms.items()})

    involution = star

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, Element):
            if not self.algebra.same_session(other.algebra):
                return False
            return self.terms == self._other(other).terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: self.algebra.sort_key(t[0]))

    def __repr__(self):
        return f"Element({format_element(self)})"

    def __str__(self):
        return format_element(self)


def format_monomial(m: Monomial) -> str:
    factors = list(m.real) + [f"{e}'" for e in reversed(m.ghost)]
    return "*".join(factors) if factors else m.vertex


def format_element(x: Element) -> str:
    """Deterministic text form, readable back by the expression parser."""
    if not x.terms:
        return "0"
    parts = []
    for m, c in x.sorted_terms():
        neg, mag = Field.split_sign(c)
        body = format_monomial(m)
        if mag != 1:
            body = f"{mag}*{body}"
        if not parts:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


def involution(x: Element) -> Element:
    return x.star()


def multiply(x: Element, y: Element) -> Element:
    return x.algebra.multiply(x, y)


def graded_parts(x: Element) -> dict[int, Element]:
    return x.algebra.graded_parts(x)


def in_A_subalgebra(x: Element) -> bool:
    return x.algebra.in_A_subalgebra(x)

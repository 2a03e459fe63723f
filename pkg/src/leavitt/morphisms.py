"""Endomorphisms of L_K(E) given by images of generators.

A :class:`GenMap` assigns an element to every vertex, edge and ghost edge.
By the universal property of Leavitt path algebras such an assignment
extends to an algebra homomorphism exactly when the images satisfy the
defining relations; :func:`check_relations` tests this and
:meth:`GenMap.verify` records the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .algebra import Element, LeavittPathAlgebra, Monomial
from .errors import GraphError, MathDomainError, RelationError, SessionMismatch


class AlgMatrix:
    """Square matrix with entries in a Leavitt path algebra."""

    def __init__(self, algebra: LeavittPathAlgebra, rows: Sequence[Sequence]):
        rows = [list(r) for r in rows]
        n = len(rows)
        if n == 0 or any(len(r) != n for r in rows):
            raise ValueError("matrices must be square and nonempty")
        self.algebra = algebra
        self.rows = tuple(tuple(self._entry(x) for x in r) for r in rows)

    def _entry(self, x) -> Element:
        if isinstance(x, Element):
            return self.algebra.convert(x) if x.algebra is not self.algebra else x
        return self.algebra.scalar(x)

    @classmethod
    def identity(cls, algebra: LeavittPathAlgebra, n: int) -> "AlgMatrix":
        return cls(algebra, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _check(self, other: "AlgMatrix"):
        if not isinstance(other, AlgMatrix):
            raise TypeError("expected an AlgMatrix")
        if other.size != self.size:
            raise ValueError(f"size mismatch: {self.size} vs {other.size}")
        if not self.algebra.same_session(other.algebra):
            raise SessionMismatch("matrices over different algebras")

    def __add__(self, other):
        self._check(other)
        n = self.size
        return AlgMatrix(self.algebra, [[self[i, j] + other[i, j] for j in range(n)]
                                        for i in range(n)])

    def __mul__(self, other):
        if isinstance(other, AlgMatrix):
            self._check(other)
            n = self.size
            zero = self.algebra.zero()
            return AlgMatrix(self.algebra, [[sum((self[i, k] * other[k, j] for k in range(n)), zero)
                                             for j in range(n)] for i in range(n)])
        return AlgMatrix(self.algebra, [[x * other for x in r] for r in self.rows])

    def __rmul__(self, other):
        return AlgMatrix(self.algebra, [[other * x for x in r] for r in self.rows])

    def map(self, fn) -> "AlgMatrix":
        return AlgMatrix(self.algebra, [[fn(x) for x in r] for r in self.rows])

    def __eq__(self, other):
        if not isinstance(other, AlgMatrix) or other.size != self.size:
            return NotImplemented
        return all(a == b for ra, rb in zip(self.rows, other.rows) for a, b in zip(ra, rb))

    def __repr__(self):
        return "AlgMatrix(" + "; ".join(", ".join(str(x) for x in r) for r in self.rows) + ")"


def matrix_arith(op: str, a: AlgMatrix, b: AlgMatrix | None = None):
    if op == "mul":
        return a * b
    if op == "add":
        return a + b
    if op == "identity":
        return AlgMatrix.identity(a.algebra, a.size)
    raise ValueError(f"unknown matrix operation {op!r}")


def validate_pq(P: AlgMatrix, Q: AlgMatrix, w: str) -> bool:
    """``wP = Pw``, ``wQ = Qw`` and ``wPQ = wQP = wI``."""
    P._check(Q)
    alg = P.algebra
    W = AlgMatrix.identity(alg, P.size) * alg.vertex(w)
    return (W * P == P * W and W * Q == Q * W
            and W * P * Q == W and W * Q * P == W)


@dataclass(frozen=True)
class GenMap:
    """Images of all generators; ``verified`` means the relations were checked."""

    algebra: LeavittPathAlgebra
    vertices: Mapping[str, Element]
    edges: Mapping[str, Element]
    ghosts: Mapping[str, Element]
    verified: bool = False
    name: str = field(default="", compare=False)

    @classmethod
    def from_images(cls, algebra: LeavittPathAlgebra, images: Mapping | None = None,
                    name: str = "") -> "GenMap":
        """Build from ``{("edge", "e1"): x, ...}``; missing generators are fixed."""
        images = dict(images or {})
        g = algebra.graph
        known = {("vertex", u) for u in g.vertices}
        known |= {(k, e.name) for e in g.edges for k in ("edge", "ghost")}
        for key in images:
            if key not in known:
                raise GraphError(f"unknown generator {key[0]} {key[1]!r}")
        def img(key, default):
            x = images.get(key, default)
            return x if x.algebra is algebra else algebra.convert(x)
        return cls(
            algebra,
            {u: img(("vertex", u), algebra.vertex(u)) for u in g.vertices},
            {e.name: img(("edge", e.name), algebra.edge(e.name)) for e in g.edges},
            {e.name: img(("ghost", e.name), algebra.ghost(e.name)) for e in g.edges},
            name=name,
        )

    @classmethod
    def identity(cls, algebra: LeavittPathAlgebra) -> "GenMap":
        return cls.from_images(algebra, name="id").verify()

    def images(self) -> dict[tuple[str, str], Element]:
        out = {("vertex", u): x for u, x in self.vertices.items()}
        out.update({("edge", e): x for e, x in self.edges.items()})
        out.update({("ghost", e): x for e, x in self.ghosts.items()})
        return out

    def verify(self) -> "GenMap":
        """Return a verified copy, or raise :class:`RelationError` with the violations."""
        report = check_relations(self)
        if report:
            raise RelationError(f"{len(report)} relation violation(s)", report)
        return replace(self, verified=True)

    def __call__(self, x: Element) -> Element:
        return apply_hom(self, x)

    def __eq__(self, other):
        if not isinstance(other, GenMap):
            return NotImplemented
        return self.algebra.same_session(other.algebra) and self.images() == other.images()

    def __hash__(self):
        return hash(tuple(sorted((k, hash(v)) for k, v in self.images().items())))


def check_relations(m: GenMap) -> list[str]:
    """List every defining relation instance that the images violate."""
    alg = m.algebra
    g = alg.graph
    V, E, G = m.vertices, m.edges, m.ghosts
    zero = alg.zero()
    bad = []
    for u in g.vertices:
        for w in g.vertices:
            expected = V[w] if u == w else zero
            if V[u] * V[w] != expected:
                bad.append(f"(1) {u}*{w}")
    for e in g.edges:
        s, r = e.source, e.range
        x, xs = E[e.name], G[e.name]
        if V[s] * x != x:
            bad.append(f"(2) {s}*{e.name}")
        if x * V[r] != x:
            bad.append(f"(2) {e.name}*{r}")
        if xs * V[s] != xs:
            bad.append(f"(2) {e.name}'*{s}")
        if V[r] * xs != xs:
            bad.append(f"(2) {r}*{e.name}'")
    for e in g.edges:
        for f in g.edges:
            expected = V[e.range] if e.name == f.name else zero
            if G[e.name] * E[f.name] != expected:
                bad.append(f"(3) {e.name}'*{f.name}")
    for u in g.regular_vertices():
        total = sum((E[e] * G[e] for e in g.out_edges(u)), zero)
        if total != V[u]:
            bad.append(f"(4) {u}")
    return bad


def apply_hom(m: GenMap, x: Element) -> Element:
    """Evaluate the homomorphism determined by a verified :class:`GenMap`."""
    if not m.verified:
        raise RelationError("generator map has not been verified")
    alg = m.algebra
    if not alg.same_session(x.algebra):
        raise SessionMismatch("element from a different algebra")
    out = alg.zero()
    for mono, c in x.terms.items():
        out = out + _image_of_monomial(m, mono) * c
    return out


def _image_of_monomial(m: GenMap, mono: Monomial) -> Element:
    if not mono.real and not mono.ghost:
        return m.vertices[mono.vertex]
    acc = None
    for e in mono.real:
        acc = m.edges[e] if acc is None else acc * m.edges[e]
    for e in reversed(mono.ghost):
        acc = m.ghosts[e] if acc is None else acc * m.ghosts[e]
    return acc


def compose_homs(f: GenMap, g: GenMap) -> GenMap:
    """``f o g`` computed generator by generator, then re-verified."""
    if not f.algebra.same_session(g.algebra):
        raise SessionMismatch("maps on different algebras")
    images = {k: apply_hom(f, x) for k, x in g.images().items()}
    return GenMap.from_images(f.algebra, images, name=f"{f.name}o{g.name}").verify()


def _check_edge_family(alg: LeavittPathAlgebra, edges: Sequence[str]) -> tuple[str, str]:
    g = alg.graph
    if not edges or len(set(edges)) != len(edges):
        raise MathDomainError("edges must be distinct and nonempty")
    sources = {g.source(e) for e in edges}
    ranges = {g.range(e) for e in edges}
    if len(sources) != 1 or len(ranges) != 1:
        raise MathDomainError("edges must share one source and one range")
    return sources.pop(), ranges.pop()


def build_phi_pq(edges: Sequence[str], P: AlgMatrix, Q: AlgMatrix) -> GenMap:
    """The homomorphism with ``e_i -> sum_k e_k p_ki`` and ``e_i* -> sum_k q_ik e_k*``.

    All other generators are fixed.  The returned map is verified.
    """
    alg = P.algebra
    edges = list(edges)
    _, w = _check_edge_family(alg, edges)
    if P.size != len(edges) or Q.size != len(edges):
        raise ValueError("matrix size must equal the number of edges")
    if not validate_pq(P, Q, w):
        raise RelationError("P and Q fail wP=Pw, wQ=Qw, wPQ=wQP=wI")
    n = len(edges)
    images = {}
    for i, ei in enumerate(edges):
        images[("edge", ei)] = sum((alg.edge(edges[k]) * P[k, i] for k in range(n)), alg.zero())
        images[("ghost", ei)] = sum((Q[i, k] * alg.ghost(edges[k]) for k in range(n)), alg.zero())
    return GenMap.from_images(alg, images, name="phi").verify()


def iso_condition(m: GenMap, P: AlgMatrix, Q: AlgMatrix, w: str) -> bool:
    """Sufficient condition for ``phi_{P,Q}`` to be invertible with inverse ``phi_{Q,P}``."""
    wv = m.algebra.vertex(w)
    entries_p = [x for r in P.rows for x in r]
    entries_q = [x for r in Q.rows for x in r]
    return (all(wv * apply_hom(m, x) == wv * x for x in entries_p)
            or all(wv * apply_hom(m, x) == wv * x for x in entries_q))


def anick_matrices(p: Element) -> tuple[AlgMatrix, AlgMatrix]:
    alg = p.algebra
    return (AlgMatrix(alg, [[1, p], [0, 1]]), AlgMatrix(alg, [[1, -p], [0, 1]]))


def build_anick(p: Element, e1: str, e2: str, require_A: bool | None = None
                ) -> tuple[GenMap, GenMap]:
    """The Anick type automorphism ``sigma_p`` and its inverse.

    ``sigma_p(e2) = e2 + e1 p`` and ``sigma_p(e1*) = e1* - p e2*``; every other
    generator is fixed.  On roses ``p`` must lie in A(e1, e2) (checked unless
    ``require_A`` is False); on other graphs the caller is responsible for
    ``p`` lying in the subalgebra generated by everything except ``e2`` and
    ``e1*``, and the returned maps are re-verified regardless.
    """
    alg = p.algebra
    g = alg.graph
    if e1 == e2:
        raise MathDomainError("e1 and e2 must be distinct")
    _, w = _check_edge_family(alg, [e1, e2])
    wv = alg.vertex(w)
    if wv * p != p * wv:
        raise MathDomainError("p must commute with the common range vertex")
    if require_A is None:
        require_A = g.is_rose()
    if require_A:
        if (g.petal(1), g.petal(2)) != (e1, e2):
            raise MathDomainError("on a rose sigma_p is defined for e1, e2 = petals 1 and 2")
        if not alg.in_A_subalgebra(p):
            raise MathDomainError(f"{p} is not in A(e1, e2)")
    P, Q = anick_matrices(p)
    sigma = build_phi_pq([e1, e2], P, Q)
    inverse = build_phi_pq([e1, e2], Q, P)
    return replace(sigma, name="sigma"), replace(inverse, name="sigma^-1")

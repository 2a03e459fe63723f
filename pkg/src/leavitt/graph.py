"""Finite directed graphs, finite paths and ultimately periodic infinite paths.

A :class:`Path` remembers the vertices it visits, so path manipulations
(slicing, rotation, concatenation) never need the graph.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphError

NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True)
class Edge:
    name: str
    source: str
    range: str


class Graph:
    """A finite directed graph with named vertices and edges.

    Declaration order of vertices and edges is preserved; it determines the
    default choice of special edges and the display order of monomials.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]]):
        self.vertices = tuple(vertices)
        self.edges = tuple(Edge(*e) for e in edges)
        if not self.vertices:
            raise GraphError("graph has no vertices")
        seen = set()
        for name in self.vertices + tuple(e.name for e in self.edges):
            if not NAME_RE.match(name):
                raise GraphError(f"invalid name {name!r}")
            if name in seen:
                raise GraphError(f"duplicate name {name!r}")
            seen.add(name)
        vset = set(self.vertices)
        for e in self.edges:
            for end in (e.source, e.range):
                if end not in vset:
                    raise GraphError(f"edge {e.name!r} uses unknown vertex {end!r}")
        self._edge = {e.name: e for e in self.edges}
        self._vertex_index = {v: i for i, v in enumerate(self.vertices)}
        self._edge_index = {e.name: i for i, e in enumerate(self.edges)}
        out = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e.name)
        self._out = {v: tuple(es) for v, es in out.items()}

    def __repr__(self):
        return f"Graph(vertices={list(self.vertices)}, edges={[e.name for e in self.edges]})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.vertices == other.vertices and self.edges == other.edges

    def __hash__(self):
        return hash((self.vertices, self.edges))

    # -- lookups -----------------------------------------------------------

    def is_vertex(self, name: str) -> bool:
        return name in self._vertex_index

    def is_edge(self, name: str) -> bool:
        return name in self._edge

    def source(self, edge: str) -> str:
        try:
            return self._edge[edge].source
        except KeyError:
            raise GraphError(f"unknown edge {edge!r}") from None

    def range(self, edge: str) -> str:
        try:
            return self._edge[edge].range
        except KeyError:
            raise GraphError(f"unknown edge {edge!r}") from None

    def out_edges(self, vertex: str) -> tuple[str, ...]:
        return self._out[vertex]

    def is_regular(self, vertex: str) -> bool:
        # graphs are finite, so regular simply means "not a sink"
        return bool(self._out[vertex])

    def regular_vertices(self) -> tuple[str, ...]:
        return tuple(v for v in self.vertices if self._out[v])

    def edge_index(self, edge: str) -> int:
        return self._edge_index[edge]

    def vertex_index(self, vertex: str) -> int:
        return self._vertex_index[vertex]

    def is_rose(self) -> bool:
        return len(self.vertices) == 1 and len(self.edges) >= 1

    def petal(self, k: int) -> str:
        """Name of the k-th loop (1-based) of a rose, in declaration order."""
        if not self.is_rose():
            raise GraphError("graph is not a rose")
        if not 1 <= k <= len(self.edges):
            raise GraphError(f"rose has no petal {k}")
        return self.edges[k - 1].name

    # -- paths ---------------------------------------------------------------

    def path(self, edges: Sequence[str] = (), vertex: str | None = None) -> "Path":
        """Build a validated path; ``vertex`` is required for length zero."""
        edges = tuple(edges)
        if not edges:
            if vertex is None or not self.is_vertex(vertex):
                raise GraphError(f"length-zero path needs a vertex, got {vertex!r}")
            return Path((), (vertex,))
        for e in edges:
            if not self.is_edge(e):
                raise GraphError(f"unknown edge {e!r}")
        for a, b in zip(edges, edges[1:]):
            if self.range(a) != self.source(b):
                raise GraphError(f"edges {a!r} and {b!r} do not compose")
        if vertex is not None and vertex != self.source(edges[0]):
            raise GraphError(f"path does not start at {vertex!r}")
        stops = (self.source(edges[0]),) + tuple(self.range(e) for e in edges)
        return Path(edges, stops)


@dataclass(frozen=True)
class Path:
    """A finite path: its edges and the vertices it passes through.

    ``stops`` has one more entry than ``edges``; ``stops[i]`` is the source of
    ``edges[i]`` and ``stops[-1]`` the range of the path.
    """

    edges: tuple[str, ...]
    stops: tuple[str, ...]

    @property
    def source(self) -> str:
        return self.stops[0]

    @property
    def range(self) -> str:
        return self.stops[-1]

    def __len__(self):
        return len(self.edges)

    def __getitem__(self, item: slice) -> "Path":
        start, stop, step = item.indices(len(self.edges))
        if step != 1:
            raise ValueError("paths only support contiguous slices")
        stop = max(stop, start)
        return Path(self.edges[start:stop], self.stops[start:stop + 1])

    @property
    def is_closed(self) -> bool:
        return bool(self.edges) and self.source == self.range

    def __str__(self):
        return "*".join(self.edges) if self.edges else self.source


def parse_graph(text: str) -> Graph:
    """Parse the line based graph format (``vertex`` / ``edge`` lines)."""
    vertices, edges = [], []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 4:
            edges.append((parts[1], parts[2], parts[3]))
        else:
            raise GraphError(f"line {lineno}: cannot parse {raw.strip()!r}")
    if not vertices and not edges:
        raise GraphError("empty graph file")
    return Graph(vertices, edges)


def rose(n: int) -> Graph:
    """The rose with ``n`` petals: vertex ``v`` and loops ``e1`` .. ``en``."""
    if n < 1:
        raise GraphError("a rose needs at least one petal")
    return Graph(["v"], [(f"e{i}", "v", "v") for i in range(1, n + 1)])


def concat_paths(a: Path, b: Path) -> Path:
    if a.range != b.source:
        raise GraphError(f"cannot concatenate: {a.range!r} != {b.source!r}")
    return Path(a.edges + b.edges, a.stops + b.stops[1:])


def power(c: Path, k: int) -> Path:
    if k == 0:
        return Path((), (c.source,))
    if not c.is_closed:
        raise GraphError("only closed paths have powers")
    return Path(c.edges * k, c.stops[:-1] * k + (c.range,))


def primitive_root(c: Path) -> Path:
    """Shortest closed ``d`` with ``c == d^k``."""
    n = len(c)
    for d in range(1, n + 1):
        if n % d == 0 and c.edges[:d] * (n // d) == c.edges:
            return c[:d]
    return c


def is_simple_closed(c: Path) -> bool:
    return c.is_closed and len(primitive_root(c)) == len(c)


def rotate(c: Path, i: int) -> Path:
    """The closed path ``c`` read starting from its ``i``-th edge."""
    i %= len(c)
    return concat_paths(c[i:], c[:i])


def rotations(c: Path) -> list[Path]:
    """Distinct cyclic rotations of a closed path, starting with ``c`` itself."""
    if not c.is_closed:
        raise GraphError("rotations need a nonempty closed path")
    out, seen = [], set()
    for i in range(len(c)):
        r = rotate(c, i)
        if r.edges not in seen:
            seen.add(r.edges)
            out.append(r)
    return out


def in_Cs(c: Path, graph: Graph) -> bool:
    """Membership in C_s(R_n): last letter is petal 2, earlier letters avoid it."""
    if not graph.is_rose() or len(graph.edges) < 2 or not c.edges:
        return False
    e2 = graph.petal(2)
    return c.edges[-1] == e2 and e2 not in c.edges[:-1]


@dataclass(frozen=True)
class RationalInfinitePath:
    """The infinite path ``prefix * period * period * ...``.

    Instances are always normalized: the period is primitive and the prefix
    is as short as possible, so two values are equal exactly when they
    describe the same infinite edge sequence.
    """

    prefix: Path
    period: Path

    def __post_init__(self):
        if not self.period.is_closed:
            raise GraphError("period must be a nonempty closed path")
        if self.prefix.range != self.period.source:
            raise GraphError("prefix does not end where the period starts")

    @classmethod
    def make(cls, prefix: Path, period: Path) -> "RationalInfinitePath":
        if not period.is_closed:
            raise GraphError("period must be a nonempty closed path")
        period = primitive_root(period)
        # fold trailing letters of the prefix into the period
        while len(prefix) and prefix.edges[-1] == period.edges[-1]:
            prefix = prefix[:-1]
            period = rotate(period, -1)
        return cls(prefix, period)

    @classmethod
    def periodic(cls, c: Path) -> "RationalInfinitePath":
        return cls.make(Path((), (c.source,)), c)

    @property
    def source(self) -> str:
        return self.prefix.source

    def first_edge(self) -> str:
        return self.prefix.edges[0] if len(self.prefix) else self.period.edges[0]

    def prepend(self, p: Path) -> "RationalInfinitePath":
        return RationalInfinitePath.make(concat_paths(p, self.prefix), self.period)

    def __str__(self):
        head = "*".join(self.prefix.edges)
        tail = f"({'*'.join(self.period.edges)})^inf"
        return f"{head}*{tail}" if head else tail


def tau_truncate(p: RationalInfinitePath, n: int) -> tuple[Path, RationalInfinitePath]:
    """Split ``p`` into its first ``n`` edges and the remaining infinite tail."""
    if n < 0:
        raise GraphError("truncation length must be nonnegative")
    if n <= len(p.prefix):
        head = p.prefix[:n]
        rest = RationalInfinitePath.make(p.prefix[n:], p.period)
        return head, rest
    k = n - len(p.prefix)
    reps = k // len(p.period) + 1
    unrolled = power(p.period, reps)
    head = concat_paths(p.prefix, unrolled[:k])
    return head, RationalInfinitePath.make(Path((), (head.range,)), rotate(p.period, k))


def rational_tail_equivalent(a: RationalInfinitePath, b: RationalInfinitePath) -> bool:
    """Tail equivalence: the primitive periods are rotations of each other."""
    if len(a.period) != len(b.period):
        return False
    return any(r.edges == b.period.edges for r in rotations(a.period))

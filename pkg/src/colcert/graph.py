"""Immutable simple undirected graphs plus file ingestion.

Vertices are dense integer ids 0..n-1.  File formats remap their native
labelling on ingestion (DIMACS .col is 1-indexed) and restore it on output,
so parse(serialize(g)) reproduces g vertex for vertex.
"""

from __future__ import annotations

from itertools import combinations
from typing import Iterable, Sequence

from .errors import InputError, ParseError

Edge = tuple[int, int]
Colouring = dict[int, int]


class Graph:
    """Simple undirected graph, immutable after construction.

    Adjacency is stored both as a frozenset per vertex (O(1) edge tests)
    and as a sorted neighbour tuple (deterministic iteration).
    """

    __slots__ = ("n", "_adj", "_nbrs", "_edges")

    def __init__(self, n: int, edges: Iterable[Edge] = ()):
        if n < 0:
            raise InputError(f"vertex count must be >= 0, got {n}")
        self.n = n
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise InputError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise InputError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        self._adj = tuple(frozenset(s) for s in adj)
        self._nbrs = tuple(tuple(sorted(s)) for s in adj)
        self._edges = tuple(
            (u, v) for u in range(n) for v in self._nbrs[u] if u < v
        )

    # -- queries ----------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def neighbours(self, u: int) -> tuple[int, ...]:
        return self._nbrs[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self._adj), default=0)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Graph)
            and self.n == other.n
            and self._edges == other._edges
        )

    def __hash__(self):
        return hash((self.n, self._edges))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    # -- derived graphs ----------------------------------------------------

    def induced(self, s: Sequence[int]) -> "Graph":
        """Subgraph induced by s, relabelled 0..len(s)-1 in the order of s."""
        seen = set()
        for v in s:
            if not (0 <= v < self.n):
                raise InputError(f"vertex {v} out of range for n={self.n}")
            if v in seen:
                raise InputError(f"duplicate vertex {v} in induced set")
            seen.add(v)
        index = {v: i for i, v in enumerate(s)}
        edges = [
            (index[u], index[v])
            for u, v in combinations(s, 2)
            if self.adjacent(u, v)
        ]
        return Graph(len(s), edges)

    def complement(self) -> "Graph":
        edges = [
            (u, v)
            for u, v in combinations(range(self.n), 2)
            if not self.adjacent(u, v)
        ]
        return Graph(self.n, edges)


def induced_subgraph(g: Graph, s: Sequence[int]) -> Graph:
    return g.induced(s)


# -- small named constructions used throughout ----------------------------


def cycle_graph(p: int) -> Graph:
    if p < 3:
        raise InputError(f"cycle needs >= 3 vertices, got {p}")
    return Graph(p, [(i, (i + 1) % p) for i in range(p)])


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def complete_graph(k: int) -> Graph:
    return Graph(k, combinations(range(k), 2))


def wheel_graph(p: int) -> Graph:
    """Cycle 0..p-1 plus hub p adjacent to every cycle vertex."""
    edges = [(i, (i + 1) % p) for i in range(p)]
    edges += [(i, p) for i in range(p)]
    return Graph(p + 1, edges)


# -- colourings -----------------------------------------------------------


def is_proper_colouring(g: Graph, colouring: Colouring) -> bool:
    """True iff no edge of g is monochromatic.  The colouring must be total."""
    for v in g.vertices():
        if v not in colouring:
            raise InputError(f"colouring is partial: vertex {v} uncoloured")
    return all(colouring[u] != colouring[v] for u, v in g.edges())


# -- file formats ----------------------------------------------------------


def parse_graph(data: bytes | str, fmt: str) -> Graph:
    if isinstance(data, bytes):
        data = data.decode("utf-8", errors="replace")
    if fmt == "dimacs":
        return _parse_dimacs(data)
    if fmt == "edgelist":
        return _parse_edgelist(data)
    raise InputError(f"unknown graph format {fmt!r}")


def serialize_graph(g: Graph, fmt: str) -> str:
    if fmt == "dimacs":
        lines = [f"p edge {g.n} {g.m}"]
        lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"
    if fmt == "edgelist":
        lines = [f"n {g.n}"]
        lines += [f"{u} {v}" for u, v in g.edges()]
        return "\n".join(lines) + "\n"
    raise InputError(f"unknown graph format {fmt!r}")


def _parse_dimacs(text: str) -> Graph:
    n = None
    edges: list[Edge] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n = int(parts[2])
                int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno)
            if n < 0:
                raise ParseError(f"negative vertex count {n}", lineno)
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before problem line", lineno)
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex index out of range in {line!r}", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unrecognised line {line!r}", lineno)
    if n is None:
        raise ParseError("missing problem line", 1)
    return Graph(n, edges)


def _parse_edgelist(text: str) -> Graph:
    n_declared = None
    edges: list[Edge] = []
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "n" and n_declared is None and not edges:
            if len(parts) != 2:
                raise ParseError(f"malformed count line {line!r}", lineno)
            try:
                n_declared = int(parts[1])
            except ValueError:
                raise ParseError(f"malformed count line {line!r}", lineno)
            if n_declared < 0:
                raise ParseError(f"negative vertex count {n_declared}", lineno)
            continue
        if len(parts) != 2:
            raise ParseError(f"malformed edge line {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"malformed edge line {line!r}", lineno)
        if u < 0 or v < 0:
            raise ParseError(f"negative vertex id in {line!r}", lineno)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", lineno)
        edges.append((u, v))
        max_id = max(max_id, u, v)
    n = max_id + 1 if n_declared is None else n_declared
    if max_id >= n:
        raise ParseError(f"vertex {max_id} exceeds declared count {n}")
    return Graph(n, edges)

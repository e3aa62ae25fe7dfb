"""Detection and construction of the named structures the solver reasons
about: forbidden induced patterns, odd holes, odd wheels, odd antiholes on
seven vertices, and spindle diamond-necklaces.

All searches here are exact backtracking over the whole graph.  They are
exponential in the worst case and meant for desk-scale inputs (a few dozen
vertices), where correctness beats asymptotics.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .certificates import NecklaceWitness, OddWheelWitness
from .errors import InputError, InternalError
from .graph import Graph, cycle_graph, complete_graph, path_graph

PATTERN_KINDS = (
    "bull",
    "claw",
    "chair",
    "E",
    "S113",
    "S123",
    "C5",
    "P5",
    "P6",
    "K4",
    "C7complement",
)


def _s_graph(i: int, j: int, k: int) -> Graph:
    """Three induced paths of lengths i, j, k sharing one endpoint."""
    edges = []
    nxt = 1
    for arm in (i, j, k):
        prev = 0
        for _ in range(arm):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(nxt, edges)


def pattern_graph(kind: str) -> Graph:
    if kind == "bull":
        # Triangle 1-2-3 with pendants 0 on 1 and 4 on 3.
        return Graph(5, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)])
    if kind == "claw":
        return _s_graph(1, 1, 1)
    if kind == "chair":
        return _s_graph(1, 1, 2)
    if kind == "E":
        return _s_graph(1, 2, 2)
    if kind == "S113":
        return _s_graph(1, 1, 3)
    if kind == "S123":
        return _s_graph(1, 2, 3)
    if kind == "C5":
        return cycle_graph(5)
    if kind == "P5":
        return path_graph(5)
    if kind == "P6":
        return path_graph(6)
    if kind == "K4":
        return complete_graph(4)
    if kind == "C7complement":
        return cycle_graph(7).complement()
    raise InputError(f"unknown pattern kind {kind!r}")


# -- induced-pattern search --------------------------------------------------


def _embedding_order(t: Graph) -> list[int]:
    """Order template vertices so each new one touches the placed prefix."""
    order = [max(t.vertices(), key=lambda v: (t.degree(v), -v))]
    placed = set(order)
    while len(order) < t.n:
        rest = [v for v in t.vertices() if v not in placed]
        v = max(rest, key=lambda u: (sum(1 for w in t.neighbours(u) if w in placed), t.degree(u), -u))
        order.append(v)
        placed.add(v)
    return order


def find_induced_pattern(g: Graph, kind: str) -> tuple[int, ...] | None:
    """First induced copy of the pattern, as host vertices listed in
    template-vertex order, or None.  Exhaustive backtracking embedding."""
    t = pattern_graph(kind)
    if g.n < t.n:
        return None
    order = _embedding_order(t)
    assignment: dict[int, int] = {}
    used = [False] * g.n

    def place(idx: int) -> bool:
        if idx == len(order):
            return True
        tv = order[idx]
        tdeg = t.degree(tv)
        placed_nbrs = [u for u in t.neighbours(tv) if u in assignment]
        if placed_nbrs:
            candidates: Iterable[int] = sorted(
                set.intersection(*(set(g.neighbours(assignment[u])) for u in placed_nbrs))
            )
        else:
            candidates = g.vertices()
        for hv in candidates:
            if used[hv] or g.degree(hv) < tdeg:
                continue
            if all(
                t.adjacent(tv, u) == g.adjacent(hv, assignment[u])
                for u in assignment
            ):
                assignment[tv] = hv
                used[hv] = True
                if place(idx + 1):
                    return True
                del assignment[tv]
                used[hv] = False
        return False

    if place(0):
        return tuple(assignment[i] for i in range(t.n))
    return None


# -- odd holes ----------------------------------------------------------------


@dataclass(frozen=True)
class HoleContext:
    """A smallest induced odd hole, with cyclic index arithmetic."""

    cycle: tuple[int, ...]

    @property
    def p(self) -> int:
        return len(self.cycle)

    def v(self, i: int) -> int:
        return self.cycle[i % self.p]

    def index_of(self, vertex: int) -> int:
        return self.cycle.index(vertex)


def smallest_odd_hole(g: Graph) -> HoleContext | None:
    """Smallest-length induced odd cycle of length >= 5, or None.

    Searches target lengths 5, 7, ... by induced-path extension, so the
    first hit is guaranteed smallest.
    """
    for length in range(5, g.n + 1, 2):
        cyc = _induced_cycle_of_length(g, length)
        if cyc is not None:
            return HoleContext(cyc)
    return None


def _induced_cycle_of_length(g: Graph, length: int) -> tuple[int, ...] | None:
    # Canonical form: starts at its minimum vertex, second < last.
    path: list[int] = []
    on_path = [False] * g.n

    def extend(start: int) -> bool:
        t = len(path)
        if t == length:
            return g.adjacent(path[-1], start)
        last = path[-1]
        for x in g.neighbours(last):
            if x <= start or on_path[x]:
                continue
            if t < length - 1 and g.adjacent(x, start):
                continue  # premature chord back to the start
            if t == length - 1 and not g.adjacent(x, start):
                continue
            if any(g.adjacent(x, path[i]) for i in range(1, t - 1)):
                continue
            if t == length - 1 and x < path[1]:
                continue  # reflection symmetry
            path.append(x)
            on_path[x] = True
            if extend(start):
                return True
            path.pop()
            on_path[x] = False
        return False

    for s in g.vertices():
        path[:] = [s]
        on_path[s] = True
        if extend(s):
            return tuple(path)
        on_path[s] = False
    return None


def is_induced_cycle(g: Graph, cycle: Sequence[int]) -> bool:
    k = len(cycle)
    if k < 3 or len(set(cycle)) != k:
        return False
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if consecutive != g.adjacent(cycle[i], cycle[j]):
                return False
    return True


def shrink_to_induced_odd_cycle(g: Graph, cycle: Sequence[int]) -> tuple[int, ...]:
    """Cut an odd (not necessarily induced) cycle down across chords until
    chordless.  Each chord splits the cycle into two closed walks whose
    lengths sum to len+2; exactly one is odd, and it is strictly shorter."""
    cyc = list(cycle)
    if len(cyc) % 2 == 0:
        raise InputError("cycle must be odd")
    while True:
        k = len(cyc)
        chord = None
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                if g.adjacent(cyc[i], cyc[j]):
                    chord = (i, j)
                    break
            if chord:
                break
        if chord is None:
            return tuple(cyc)
        i, j = chord
        piece1 = cyc[i : j + 1]
        piece2 = cyc[j:] + cyc[: i + 1]
        cyc = piece1 if len(piece1) % 2 == 1 else piece2


# -- odd wheels ----------------------------------------------------------------


def find_odd_wheel(g: Graph) -> OddWheelWitness | None:
    """Check every vertex's neighbourhood for bipartiteness; a failure
    yields an odd cycle inside N(w), shrunk to an induced rim."""
    for w in g.vertices():
        rim = induced_odd_cycle_in(g, g.neighbours(w))
        if rim is not None:
            return OddWheelWitness(w, rim)
    return None


def induced_odd_cycle_in(g: Graph, members: Iterable[int]) -> tuple[int, ...] | None:
    """An induced odd cycle inside the given vertex subset, or None when the
    induced subgraph is bipartite.  BFS 2-colouring; a same-colour edge
    closes an odd closed walk through the BFS tree, which is then shrunk."""
    member_set = set(members)
    colour: dict[int, int] = {}
    parent: dict[int, int | None] = {}
    for root in sorted(member_set):
        if root in colour:
            continue
        colour[root] = 0
        parent[root] = None
        queue = [root]
        while queue:
            u = queue.pop(0)
            for x in g.neighbours(u):
                if x not in member_set:
                    continue
                if x not in colour:
                    colour[x] = 1 - colour[u]
                    parent[x] = u
                    queue.append(x)
                elif colour[x] == colour[u]:
                    cyc = _bfs_conflict_cycle(parent, u, x)
                    return shrink_to_induced_odd_cycle(g, cyc)
    return None


def _bfs_conflict_cycle(parent: dict[int, int | None], u: int, v: int) -> list[int]:
    anc_u = [u]
    while parent[anc_u[-1]] is not None:
        anc_u.append(parent[anc_u[-1]])
    pos = {x: i for i, x in enumerate(anc_u)}
    walk_v = [v]
    while walk_v[-1] not in pos:
        walk_v.append(parent[walk_v[-1]])
    meet = walk_v[-1]
    return anc_u[: pos[meet] + 1] + walk_v[-2::-1]


# -- spindles and diamond necklaces --------------------------------------------


def build_spindle(p: int) -> Graph:
    """Diamond-necklace normal form of the spindle on 3p+1 vertices: hubs
    0, 3, ..., 3p, pair (3i+1, 3i+2) between hubs 3i and 3i+3, closed by
    the edge (3p, 0).  p=1 gives K4, p=2 the Moser spindle."""
    if p < 1:
        raise InputError(f"spindle parameter must be >= 1, got {p}")
    edges = []
    for i in range(p):
        h, a, b, h2 = 3 * i, 3 * i + 1, 3 * i + 2, 3 * i + 3
        edges += [(h, a), (h, b), (a, b), (a, h2), (b, h2)]
    edges.append((3 * p, 0))
    return Graph(3 * p + 1, edges)


def spindle_necklace(p: int) -> NecklaceWitness:
    """Canonical necklace decomposition of build_spindle(p)."""
    if p < 1:
        raise InputError(f"spindle parameter must be >= 1, got {p}")
    hubs = tuple(3 * i for i in range(p + 1))
    pairs = tuple((3 * i + 1, 3 * i + 2) for i in range(p))
    return NecklaceWitness(hubs, pairs, (3 * p, 0))


def verify_necklace(g: Graph, w: NecklaceWitness) -> bool:
    """All diamond edges and the closing edge present, all vertices distinct.

    Containment is as a subgraph, not necessarily induced.
    """
    hubs, pairs = w.hubs, w.pairs
    if len(hubs) < 2 or len(pairs) != len(hubs) - 1:
        return False
    flat = list(hubs) + [v for pair in pairs for v in pair]
    if len(set(flat)) != len(flat):
        return False
    if not all(0 <= v < g.n for v in flat):
        return False
    if tuple(w.closing_edge) != (hubs[-1], hubs[0]) or not g.adjacent(*w.closing_edge):
        return False
    for i, (a, b) in enumerate(pairs):
        if not (
            g.adjacent(hubs[i], a)
            and g.adjacent(hubs[i], b)
            and g.adjacent(a, b)
            and g.adjacent(a, hubs[i + 1])
            and g.adjacent(b, hubs[i + 1])
        ):
            return False
    return True


def find_necklace(
    g: Graph, max_k: int, within: Iterable[int] | None = None
) -> NecklaceWitness | None:
    """Bounded search for a diamond necklace with at most max_k diamonds,
    optionally restricted to a vertex subset.  Shorter necklaces win."""
    allowed = set(g.vertices()) if within is None else set(within)

    def diamonds_from(hubs: list[int], pairs: list[tuple[int, int]], used: set[int]):
        if pairs and g.adjacent(hubs[-1], hubs[0]):
            return NecklaceWitness(tuple(hubs), tuple(pairs), (hubs[-1], hubs[0]))
        if len(pairs) == max_k:
            return None
        h = hubs[-1]
        nbrs = [x for x in g.neighbours(h) if x in allowed and x not in used]
        for a, b in combinations(nbrs, 2):
            if not g.adjacent(a, b):
                continue
            for h2 in sorted(set(g.neighbours(a)) & set(g.neighbours(b))):
                if h2 not in allowed or h2 in used or h2 == h:
                    continue
                hubs.append(h2)
                pairs.append((a, b))
                used.update((a, b, h2))
                found = diamonds_from(hubs, pairs, used)
                if found:
                    return found
                used.difference_update((a, b, h2))
                hubs.pop()
                pairs.pop()
        return None

    for h0 in sorted(allowed):
        found = diamonds_from([h0], [], {h0})
        if found:
            return found
    return None


# -- seven-vertex odd antiholes -------------------------------------------------


def find_odd_antihole7(g: Graph) -> tuple[int, ...] | None:
    """A 7-set inducing the complement of C7, listed in complement-cycle
    order (i adjacent to j iff |i-j| mod 7 is 2 or 3), or None."""
    return find_induced_pattern(g, "C7complement")


def extract_necklace_from_antihole(g: Graph, s: Sequence[int]) -> NecklaceWitness:
    """Necklace with two diamonds inside an induced complement-of-C7.

    The labelling premise is checked: s[i] ~ s[j] iff |i-j| mod 7 in {2,3}.
    """
    if len(s) != 7 or len(set(s)) != 7:
        raise InputError("antihole extraction needs 7 distinct vertices")
    for i in range(7):
        for j in range(i + 1, 7):
            expected = (j - i) % 7 in (2, 3) or (i - j) % 7 in (2, 3)
            if g.adjacent(s[i], s[j]) != expected:
                raise InputError(
                    "vertex set is not a complement-of-C7 in the given order"
                )
    witness = NecklaceWitness(
        hubs=(s[0], s[1], s[2]),
        pairs=((s[3], s[5]), (s[4], s[6])),
        closing_edge=(s[2], s[0]),
    )
    if not verify_necklace(g, witness):
        raise InternalError("antihole necklace failed self-check")
    return witness

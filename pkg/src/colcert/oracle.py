"""Brute-force ground truth for desk-scale testing.

Everything here is independent of the structural solver: 3-colourability by
exhaustive backtracking, induced-pattern detection by subset enumeration
with an isomorphism test, and deterministic test-instance generation.
"""

from __future__ import annotations

import random
from itertools import combinations

from .certificates import PATTERN_EDGES
from .errors import CapExceededError, InputError
from .graph import Colouring, Graph, cycle_graph, wheel_graph
from .modes import MODE_FORBIDDEN
from .patterns import build_spindle

DEFAULT_CAP = 25


def _check_cap(g: Graph, cap: int) -> None:
    if g.n > cap:
        raise CapExceededError(f"graph has {g.n} vertices, oracle cap is {cap}")


def oracle_3colourable(g: Graph, cap: int = DEFAULT_CAP) -> Colouring | None:
    """A proper 3-colouring if one exists, else None.

    Backtracking with forward pruning; vertices are tried highest degree
    first and colour symmetry is broken by pinning one triangle (or one
    vertex) before the search starts.
    """
    _check_cap(g, cap)
    if g.n == 0:
        return {}
    order = sorted(g.vertices(), key=lambda v: (-g.degree(v), v))
    domain = [0b111] * g.n
    colour: Colouring = {}

    pinned = _find_triangle(g)
    if pinned is None:
        pinned = (order[0],)
    for c, v in enumerate(pinned):
        colour[v] = c
        domain[v] = 1 << c
    for v in pinned:
        for u in g.neighbours(v):
            domain[u] &= ~(1 << colour[v])
            if u in colour and domain[u] == 0:
                return None

    todo = [v for v in order if v not in colour]

    def assign(idx: int) -> bool:
        if idx == len(todo):
            return True
        # Most-constrained-first among the remaining tail.
        best = min(range(idx, len(todo)), key=lambda k: bin(domain[todo[k]]).count("1"))
        todo[idx], todo[best] = todo[best], todo[idx]
        v = todo[idx]
        for c in range(3):
            if not domain[v] & (1 << c):
                continue
            colour[v] = c
            changed = []
            dead = False
            for u in g.neighbours(v):
                if u not in colour and domain[u] & (1 << c):
                    domain[u] &= ~(1 << c)
                    changed.append(u)
                    if domain[u] == 0:
                        dead = True
            if not dead and assign(idx + 1):
                return True
            del colour[v]
            for u in changed:
                domain[u] |= 1 << c
        return False

    if assign(0):
        return dict(colour)
    return None


def _find_triangle(g: Graph) -> tuple[int, int, int] | None:
    for u, v in g.edges():
        common = set(g.neighbours(u)) & set(g.neighbours(v))
        if common:
            return (u, v, min(common))
    return None


# -- induced-pattern oracle ----------------------------------------------------


def oracle_find_pattern(g: Graph, kind: str, cap: int = DEFAULT_CAP) -> tuple[int, ...] | None:
    """Exhaustive induced-pattern detection: enumerate vertex subsets of the
    right size and test isomorphism with the template."""
    _check_cap(g, cap)
    if kind not in PATTERN_EDGES:
        raise InputError(f"unknown pattern kind {kind!r}")
    k, template_edges = PATTERN_EDGES[kind]
    if g.n < k:
        return None
    template = {frozenset(e) for e in template_edges}
    tdeg = [0] * k
    for a, b in template_edges:
        tdeg[a] += 1
        tdeg[b] += 1
    tdeg_sorted = sorted(tdeg)

    for subset in combinations(range(g.n), k):
        edges_in = [
            (i, j)
            for i in range(k)
            for j in range(i + 1, k)
            if g.adjacent(subset[i], subset[j])
        ]
        if len(edges_in) != len(template):
            continue
        deg_in = [0] * k
        for i, j in edges_in:
            deg_in[i] += 1
            deg_in[j] += 1
        if sorted(deg_in) != tdeg_sorted:
            continue
        mapping = _match(template, tdeg, {frozenset(e) for e in edges_in}, deg_in, k)
        if mapping is not None:
            return tuple(subset[mapping[i]] for i in range(k))
    return None


def _match(
    template: set[frozenset],
    tdeg: list[int],
    actual: set[frozenset],
    adeg: list[int],
    k: int,
) -> list[int] | None:
    """Map template slots to subset positions so edges correspond exactly."""
    assign: list[int] = [-1] * k
    used = [False] * k

    def place(t: int) -> bool:
        if t == k:
            return True
        for pos in range(k):
            if used[pos] or adeg[pos] != tdeg[t]:
                continue
            ok = True
            for t2 in range(t):
                if (frozenset((t, t2)) in template) != (frozenset((pos, assign[t2])) in actual):
                    ok = False
                    break
            if ok:
                assign[t] = pos
                used[pos] = True
                if place(t + 1):
                    return True
                used[pos] = False
                assign[t] = -1
        return False

    return assign if place(0) else None


# -- instance generation ---------------------------------------------------------


def generate_cycle(p: int) -> Graph:
    return cycle_graph(p)


def generate_wheel(p: int) -> Graph:
    return wheel_graph(p)


def generate_spindle(p: int) -> Graph:
    return build_spindle(p)


def random_class(
    n: int,
    edge_prob: float,
    mode: str,
    seed: int,
    budget: int = 20000,
    cap: int = DEFAULT_CAP,
) -> Graph:
    """Erdos-Renyi sampling with rejection until the sample avoids every
    pattern the mode forbids.  Deterministic for a fixed seed."""
    if mode not in MODE_FORBIDDEN:
        raise InputError(f"unknown class mode {mode!r}")
    if not 0.0 <= edge_prob <= 1.0:
        raise InputError(f"edge probability {edge_prob} outside [0, 1]")
    if n > cap:
        raise CapExceededError(f"n={n} exceeds generation cap {cap}")
    rng = random.Random(seed)
    forbidden = MODE_FORBIDDEN[mode]
    for _ in range(budget):
        edges = [
            (u, v) for u, v in combinations(range(n), 2) if rng.random() < edge_prob
        ]
        g = Graph(n, edges)
        if all(oracle_find_pattern(g, kind, cap=cap) is None for kind in forbidden):
            return g
    raise InputError(
        f"rejection budget exhausted: {budget} samples, none {mode}-free"
    )

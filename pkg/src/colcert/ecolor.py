"""Colouring routines for the (bull, E)-free and (bull, C5, S)-free modes.

For holes longer than five the work happens on the hole itself: whenever
C_i or B'_i is nonempty, any proper 3-colouring must give v_i and v_{i+2}
the same colour ("forcing link" at i).  Propagating that constraint either
colours the hole or exposes a chain of links joining two consecutive hole
vertices; the chain's gadgets are exactly the diamonds of a spindle
necklace, so a conflict converts into a non-3-colourability witness.

For five-holes a fixed six-step colouring is attempted under each of the
ten relabellings of the hole (five rotations times two directions); its
correctness depends on the structural facts, so the first relabelling that
produces a proper colouring wins.  One special obstruction (an edge inside
a B set when C and D are empty) is handled by re-running classification on
an alternative five-hole that turns the obstruction into a C vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .certificates import (
    K4Witness,
    NecklaceWitness,
    OddWheelWitness,
    PatternWitness,
    Witness,
)
from .classify import Classification, classify, validate_structure
from .errors import InputError, InternalError
from .graph import Colouring, Graph, is_proper_colouring
from .modes import MODE_E, MODE_FORBIDDEN, MODE_S113, MODE_S123
from .patterns import (
    HoleContext,
    find_induced_pattern,
    find_necklace,
    find_odd_wheel,
    is_induced_cycle,
)

RED, GREEN, BLUE = 0, 1, 2


@dataclass(frozen=True)
class ForcingGadget:
    """Realisation of one forcing link: a diamond pair between v_i and
    v_{i+2}.  For a C vertex w the pair is (w, v_{i+1}); for an edge inside
    B'_i it is the adjacent pair itself."""

    source: str  # "C" or "B'"
    pair: tuple[int, int]
    alternatives: tuple[tuple[int, int], ...] = ()


@dataclass(frozen=True)
class ForcingGraph:
    p: int
    links: dict[int, ForcingGadget]


def build_forcing(g: Graph, hole: HoleContext, cls: Classification) -> ForcingGraph:
    links: dict[int, ForcingGadget] = {}
    for i in range(cls.p):
        options: list[ForcingGadget] = []
        if cls.c[i]:
            options.append(ForcingGadget("C", (cls.c[i][0], hole.v(i + 1))))
        for w in cls.b_prime[i]:
            partner = next(
                (u for u in cls.b[i] + cls.c[i] if u != w and g.adjacent(w, u)), None
            )
            if partner is not None:
                options.append(ForcingGadget("B'", (w, partner)))
                break
        if options:
            first = options[0]
            links[i] = ForcingGadget(
                first.source, first.pair, tuple(o.pair for o in options[1:])
            )
    return ForcingGraph(cls.p, links)


# -- colouring the hole under forcing -----------------------------------------


def colour_cycle_with_forcing(
    hole: HoleContext, fg: ForcingGraph
) -> Union[Colouring, NecklaceWitness]:
    """Proper colouring of the hole satisfying every forcing link, or a
    necklace extracted from a forcing conflict.  Requires p > 5.

    Steps: paint v_0 red and propagate red through the links; a conflict
    (two consecutive hole vertices forced red) yields the spindle.  Pick k
    with v_k red and v_{k-2} uncoloured, paint v_{k-1} green, propagate;
    conflict again yields the spindle.  Then paint v_{k-2} blue, walk
    backwards in steps of two painting blue until hitting a coloured
    vertex, and finish the rest red.
    """
    p = fg.p
    if p <= 5 or p % 2 == 0:
        raise InputError(f"forcing colouring needs an odd hole length > 5, got {p}")

    comp = _component(fg, 0)
    conflict = _conflict_pair(p, fg, comp)
    if conflict is not None:
        return extract_necklace_from_conflict(hole, fg, conflict)
    colour_idx: dict[int, int] = {i: RED for i in comp}

    k = next(i for i in comp if (i - 2) % p not in comp)
    green_comp = _component(fg, (k - 1) % p)
    conflict = _conflict_pair(p, fg, green_comp)
    if conflict is not None:
        return extract_necklace_from_conflict(hole, fg, conflict)
    for i in green_comp:
        colour_idx[i] = GREEN

    walk = (k - 2) % p
    while walk not in colour_idx:
        colour_idx[walk] = BLUE
        walk = (walk - 2) % p
    for i in range(p):
        colour_idx.setdefault(i, RED)

    for i in range(p):
        if colour_idx[i] == colour_idx[(i + 1) % p]:
            raise InternalError("forcing colouring left adjacent hole vertices equal")
        if i in fg.links and colour_idx[i] != colour_idx[(i + 2) % p]:
            raise InternalError("forcing colouring violated a link constraint")
    return {hole.v(i): colour_idx[i] for i in range(p)}


def _component(fg: ForcingGraph, start: int) -> list[int]:
    seen = {start % fg.p}
    queue = [start % fg.p]
    while queue:
        i = queue.pop(0)
        for j in ((i + 2) % fg.p, (i - 2) % fg.p):
            link = i if j == (i + 2) % fg.p else j
            if link in fg.links and j not in seen:
                seen.add(j)
                queue.append(j)
    return sorted(seen)


def _conflict_pair(p: int, fg: ForcingGraph, comp: list[int]) -> list[int] | None:
    """Shortest link path joining two cyclically consecutive members of the
    component; None when no two members are consecutive on the hole."""
    members = set(comp)
    best: list[int] | None = None
    for a in comp:
        b = (a + 1) % p
        if b not in members:
            continue
        path = _shortest_link_path(p, fg, a, b)
        if path is not None and (best is None or len(path) < len(best)):
            best = path
    return best


def _shortest_link_path(p: int, fg: ForcingGraph, a: int, b: int) -> list[int] | None:
    prev: dict[int, int] = {a: a}
    queue = [a]
    while queue:
        i = queue.pop(0)
        if i == b:
            path = [i]
            while path[-1] != a:
                path.append(prev[path[-1]])
            return path[::-1]
        for j in ((i + 2) % p, (i - 2) % p):
            link = i if j == (i + 2) % p else j
            if link in fg.links and j not in prev:
                prev[j] = i
                queue.append(j)
    return None


def extract_necklace_from_conflict(
    hole: HoleContext, fg: ForcingGraph, path: list[int]
) -> NecklaceWitness:
    """Necklace along a link path whose endpoints are consecutive on the
    hole: hubs are the path's hole vertices, each link contributes its
    diamond pair, and the hole edge between the endpoints closes the chain.
    """
    p = fg.p
    if len(path) < 2:
        raise InputError("conflict path must contain at least one link")
    if (path[0] - path[-1]) % p not in (1, p - 1):
        raise InputError("conflict path endpoints are not consecutive on the hole")
    hub_vertices = [hole.v(i) for i in path]
    hub_set = set(hub_vertices)
    pairs: list[tuple[int, int]] = []
    used: set[int] = set(hub_vertices)
    for t in range(len(path) - 1):
        i, j = path[t], path[t + 1]
        link = i if (j - i) % p == 2 else j
        gadget = fg.links[link]
        chosen = None
        for pair in (gadget.pair, *gadget.alternatives):
            if not (set(pair) & used):
                chosen = pair
                break
        if chosen is None:
            raise InternalError(
                "no collision-free gadget for forcing link; conflict path "
                "was not minimal"
            )
        pairs.append(chosen)
        used.update(chosen)
    return NecklaceWitness(tuple(hub_vertices), tuple(pairs), (hub_vertices[-1], hub_vertices[0]))


# -- the p > 5 solver ------------------------------------------------------------


def solve_e_large_p(
    g: Graph, hole: HoleContext, cls: Classification
) -> Union[Colouring, Witness]:
    """Colour a validated block whose smallest odd hole is longer than
    five: colour the hole under forcing, 2-colour each B_i + C_i component
    with the two colours its hole anchor does not use, then give every
    unpaired B vertex the colour of the hole vertex between its anchors."""
    fg = build_forcing(g, hole, cls)
    result = colour_cycle_with_forcing(hole, fg)
    if isinstance(result, NecklaceWitness):
        return result
    col: Colouring = dict(result)
    p = cls.p

    for i in range(p):
        members = sorted(cls.b_prime[i] + cls.c[i])
        if not members:
            continue
        ci, ci1 = col[hole.v(i)], col[hole.v(i + 1)]
        if col[hole.v(i + 2)] != ci:
            raise InternalError("forcing link not honoured by hole colouring")
        x, y = sorted({0, 1, 2} - {ci})
        z = ({0, 1, 2} - {ci, ci1}).pop()
        other = ({x, y} - {z}).pop()
        cset = set(cls.c[i])
        for comp in _components_of(g, members):
            side = _bipartition(g, comp)
            c_sides = {0 if v in side else 1 for v in comp if v in cset}
            if len(c_sides) == 2:
                fallback = _mixed_component_witness(g, hole, cls, i, comp)
                if fallback is not None:
                    return fallback
                raise InternalError(
                    "B/C component needs its C vertices on both sides of the "
                    "bipartition; no witness found"
                )
            if c_sides == {1}:
                side = set(comp) - side
            if cset & set(comp):
                first, second = z, other
            else:
                first, second = x, y
            for v in comp:
                col[v] = first if v in side else second

    for i in range(p):
        for w in cls.b_star[i]:
            col[w] = col[hole.v(i + 1)]

    if not is_proper_colouring(g, col):
        raise InternalError("structured colouring came out improper")
    return col


def _components_of(g: Graph, members: list[int]) -> list[list[int]]:
    member_set = set(members)
    seen: set[int] = set()
    comps = []
    for root in members:
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        queue = [root]
        while queue:
            u = queue.pop(0)
            for x in g.neighbours(u):
                if x in member_set and x not in seen:
                    seen.add(x)
                    comp.append(x)
                    queue.append(x)
        comps.append(sorted(comp))
    return comps


def _bipartition(g: Graph, comp: list[int]) -> set[int]:
    """Vertices on the root's side of the (guaranteed) bipartition."""
    side = {comp[0]}
    level = {comp[0]: 0}
    queue = [comp[0]]
    comp_set = set(comp)
    while queue:
        u = queue.pop(0)
        for x in g.neighbours(u):
            if x in comp_set and x not in level:
                level[x] = 1 - level[u]
                if level[x] == 0:
                    side.add(x)
                queue.append(x)
    return side


def _mixed_component_witness(g, hole, cls, i, comp) -> Witness | None:
    pool = list(comp) + [hole.v(i), hole.v(i + 1), hole.v(i + 2)]
    sub = g.induced(sorted(pool))
    back = sorted(pool)
    hit = find_induced_pattern(sub, "K4")
    if hit is not None:
        return K4Witness(tuple(back[t] for t in hit))
    wheel = find_odd_wheel(sub)
    if wheel is not None:
        return OddWheelWitness(back[wheel.hub], tuple(back[t] for t in wheel.rim))
    neck = find_necklace(g, max_k=(cls.p + 1) // 2, within=set(pool) | set(hole.cycle))
    return neck


# -- the p = 5 solver -------------------------------------------------------------


def solve_e_p5(
    g: Graph,
    hole: HoleContext,
    cls: Classification,
    mode: str = MODE_E,
    max_restarts: int | None = None,
) -> Union[Colouring, Witness]:
    """Five-hole case: try the six-step colouring under all ten hole
    relabellings, restarting on an alternative five-hole when an edge
    inside a B set blocks the C-and-D-free case; fall back to a bounded
    witness search."""
    if hole.p != 5:
        raise InputError("solve_e_p5 requires a five-hole")
    if max_restarts is None:
        max_restarts = g.n
    restarts = 0
    while True:
        for variant in _hole_symmetries(hole):
            vcls = classify(g, variant, mode)
            if not isinstance(vcls, Classification):
                return vcls
            col = _six_step_colouring(g, variant, vcls)
            if col is not None and is_proper_colouring(g, col):
                return col
        restart = _case2_restart_hole(g, cls)
        if restart is None or restarts >= max_restarts:
            break
        restarts += 1
        hole = restart
        result = classify(g, hole, mode)
        if not isinstance(result, Classification):
            return result
        cls = result
        witness = validate_structure(g, hole, cls, mode)
        if witness is not None:
            return witness
    return _p5_witness_search(g, hole, mode)


def _hole_symmetries(hole: HoleContext) -> list[HoleContext]:
    cycles = []
    forward = hole.cycle
    backward = hole.cycle[::-1]
    for base in (forward, backward):
        for r in range(5):
            cycles.append(HoleContext(base[r:] + base[:r]))
    return cycles


def _case2_restart_hole(g: Graph, cls: Classification) -> HoleContext | None:
    """When C and D are empty but some B'_i is not, the B' edge and the
    hole span another five-hole on which that edge's endpoint becomes a C
    vertex, reducing to the C-nonempty case."""
    if cls.all_of("C") or cls.all_of("D"):
        return None
    hole = cls.hole
    for i in range(cls.p):
        for w in cls.b_prime[i]:
            cycle = (w, hole.v(i), hole.v(i + 4), hole.v(i + 3), hole.v(i + 2))
            if not is_induced_cycle(g, cycle):
                raise InternalError("B' restart cycle is not an induced five-cycle")
            return HoleContext(cycle)
    return None


def _six_step_colouring(
    g: Graph, hole: HoleContext, cls: Classification
) -> Colouring | None:
    """One run of the fixed five-hole colouring in the given labelling.
    Returns None when the labelling fails the case's preconditions or a
    constrained set cannot be 2-coloured."""
    has_c = bool(cls.all_of("C"))
    has_d = bool(cls.all_of("D"))
    b_prime_all = [i for i in range(5) if cls.b_prime[i]]
    if has_c:
        ok = (
            not has_d
            and all(not cls.c[i] for i in (1, 2, 3, 4))
            and all(i == 0 for i in b_prime_all)
            and not cls.a_prime[1]
            and not cls.a_prime[4]
        )
    elif has_d:
        ok = (
            all(not cls.d[i] for i in (1, 2, 3, 4))
            and not b_prime_all
            and not cls.a[0]
            and not cls.a[3]
            and not cls.a_prime[1]
            and not cls.a_prime[2]
        )
    else:
        ok = not b_prime_all and not cls.a_prime[1] and not cls.a_prime[4]
    if not ok:
        return None

    col: Colouring = {}
    v = hole.v
    col[v(0)], col[v(1)], col[v(2)], col[v(3)], col[v(4)] = RED, GREEN, RED, GREEN, BLUE

    for i in range(1, 5):
        for w in cls.b_star[i]:
            col[w] = col[v(i + 1)]
    for i in range(0, 3):
        for w in cls.a_star[i]:
            col[w] = col[v(i - 1)]

    for w in cls.c[0]:
        col[w] = BLUE
    for members, allowed in (
        (cls.a_prime[0], (GREEN, BLUE)),
        (cls.a_prime[2], (GREEN, BLUE)),
        (cls.a_prime[3], (RED, BLUE)),
        (cls.b_prime[0], (GREEN, BLUE)),
    ):
        if members and not _two_colour(g, sorted(members), allowed, col):
            return None

    if not has_d:
        for w in cls.a_star[4]:
            col[w] = GREEN
        trigger = set(cls.a_prime[2]) | set(cls.b_prime[0])
        for w in cls.a_star[3]:
            col[w] = RED if any(g.adjacent(w, u) for u in trigger) else BLUE
        a4_star = set(cls.a_star[4])
        for w in cls.b_star[0]:
            col[w] = BLUE if any(g.adjacent(w, u) for u in a4_star) else GREEN
    else:
        for w in cls.d[0]:
            col[w] = BLUE
        for w in cls.b_star[0]:
            col[w] = GREEN
        if cls.a_prime[4] and not _two_colour(g, sorted(cls.a_prime[4]), (RED, GREEN), col):
            return None
        b0_star = set(cls.b_star[0])
        for w in cls.a_star[4]:
            col[w] = RED if any(g.adjacent(w, u) for u in b0_star) else GREEN

    if len(col) != g.n:
        return None
    return col


def _two_colour(
    g: Graph, members: list[int], allowed: tuple[int, int], col: Colouring
) -> bool:
    """2-colour a (bipartite) set with the two allowed colours, consistent
    with already-coloured neighbours.  Per component, both root colours are
    tried; failure means the current labelling cannot work."""
    for comp in _components_of(g, members):
        comp_set = set(comp)
        placed = None
        for root_colour in allowed:
            trial: Colouring = {comp[0]: root_colour}
            queue = [comp[0]]
            ok = True
            while queue and ok:
                u = queue.pop(0)
                for x in g.neighbours(u):
                    if x in comp_set:
                        want = allowed[0] if trial[u] == allowed[1] else allowed[1]
                        if x not in trial:
                            trial[x] = want
                            queue.append(x)
                        elif trial[x] != want:
                            ok = False
                            break
                    elif x in col and col[x] == trial[u]:
                        ok = False
                        break
            if ok:
                placed = trial
                break
        if placed is None:
            return False
        col.update(placed)
    return True


def _p5_witness_search(g: Graph, hole: HoleContext, mode: str) -> Witness:
    hit = find_induced_pattern(g, "K4")
    if hit is not None:
        return K4Witness(hit)
    wheel = find_odd_wheel(g)
    if wheel is not None:
        return wheel
    neck = find_necklace(g, max_k=3)
    if neck is not None:
        return neck
    for kind in MODE_FORBIDDEN[mode]:
        found = find_induced_pattern(g, kind)
        if found is not None:
            return PatternWitness(kind, found)
    raise InternalError(
        "five-hole case produced neither a colouring nor a witness"
    )


# -- the C5-free modes -------------------------------------------------------------


def solve_c5free(
    g: Graph, hole: HoleContext, cls: Classification, mode: str
) -> Union[Colouring, Witness]:
    """(bull, C5, S113/S123)-free blocks: five-holes cannot occur, so this
    is the p > 5 routine under a different validation mode."""
    if mode not in (MODE_S113, MODE_S123):
        raise InputError(f"solve_c5free expects an S mode, got {mode!r}")
    if hole.p == 5:
        raise InputError("a five-hole contradicts C5-freeness")
    return solve_e_large_p(g, hole, cls)

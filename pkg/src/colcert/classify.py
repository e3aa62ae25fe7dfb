"""Vertex classification around a smallest odd hole, plus validation of the
structural facts the colouring routines rely on.

Every vertex outside the hole Q = v_0..v_{p-1} must see Q in one of four
ways (all indices mod p):

  A_i: N_Q(w) = {v_i}             B_i: N_Q(w) = {v_i, v_{i+2}}
  C_i: N_Q(w) = {v_i, v_{i+1}, v_{i+2}}
  D_i: N_Q(w) = {v_i, .., v_{i+3}}   (only possible when p = 5)

Anything else contradicts bull-freeness, wheel-freeness, or the minimality
of the hole, and the offending vertex is converted into a concrete witness
(an induced forbidden pattern, a K4, an odd wheel, or a diamond necklace).
``validate_structure`` then checks the adjacency facts between these sets,
again turning the first violation into a witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Sequence, Union

from .certificates import (
    K4Witness,
    NecklaceWitness,
    OddWheelWitness,
    PatternWitness,
    Witness,
)
from .errors import InputError, InternalError
from .graph import Graph
from .modes import MODE_CHAIR, MODE_E, MODE_S113, MODE_S123, MODES
from .patterns import (
    HoleContext,
    find_induced_pattern,
    induced_odd_cycle_in,
    pattern_graph,
)


@dataclass
class Classification:
    hole: HoleContext
    tags: dict[int, tuple[str, int]]  # vertex -> (kind 'A'|'B'|'C'|'D', anchor)
    a: dict[int, tuple[int, ...]]
    b: dict[int, tuple[int, ...]]
    c: dict[int, tuple[int, ...]]
    d: dict[int, tuple[int, ...]]
    a_prime: dict[int, tuple[int, ...]] = field(default_factory=dict)
    a_star: dict[int, tuple[int, ...]] = field(default_factory=dict)
    b_prime: dict[int, tuple[int, ...]] = field(default_factory=dict)
    b_star: dict[int, tuple[int, ...]] = field(default_factory=dict)

    @property
    def p(self) -> int:
        return self.hole.p

    def set_of(self, kind: str, i: int) -> tuple[int, ...]:
        return {"A": self.a, "B": self.b, "C": self.c, "D": self.d}[kind][i % self.p]

    def all_of(self, kind: str) -> tuple[int, ...]:
        table = {"A": self.a, "B": self.b, "C": self.c, "D": self.d}[kind]
        return tuple(v for i in range(self.p) for v in table[i])


# -- helpers -------------------------------------------------------------------


def induces_pattern(g: Graph, vertices: Sequence[int], kind: str) -> bool:
    """Does this exact vertex set induce the pattern?  Permutation test."""
    t = pattern_graph(kind)
    vs = tuple(vertices)
    if len(vs) != t.n or len(set(vs)) != t.n:
        return False
    for perm in permutations(vs):
        if all(
            t.adjacent(i, j) == g.adjacent(perm[i], perm[j])
            for i in range(t.n)
            for j in range(i + 1, t.n)
        ):
            return True
    return False


def _is_clique(g: Graph, vs: Sequence[int]) -> bool:
    return len(set(vs)) == len(vs) and all(
        g.adjacent(a, b) for i, a in enumerate(vs) for b in vs[i + 1 :]
    )


def _witness_from_candidates(
    g: Graph,
    candidates: Sequence[tuple[str, Sequence[int]]],
    pool: Sequence[int] | None = None,
) -> Witness:
    """Return the first candidate that checks out; fall back to searching the
    pool (then the whole graph) for the named kinds.  The facts' proofs
    guarantee one of the candidates works, so exhausting everything means a
    solver bug."""
    for kind, vs in candidates:
        vs = tuple(vs)
        if len(set(vs)) != len(vs):
            continue
        if kind == "K4":
            if _is_clique(g, vs):
                return K4Witness(vs)
        elif induces_pattern(g, vs, kind):
            return PatternWitness(kind, vs)
    kinds_tried = []
    for kind, _ in candidates:
        if kind not in kinds_tried:
            kinds_tried.append(kind)
    search_spaces = []
    if pool is not None:
        search_spaces.append(sorted(set(pool)))
    for space in search_spaces:
        sub = g.induced(space)
        for kind in kinds_tried:
            hit = find_induced_pattern(sub, kind)
            if hit is not None:
                mapped = tuple(space[i] for i in hit)
                if kind == "K4":
                    return K4Witness(mapped)
                return PatternWitness(kind, mapped)
    for kind in kinds_tried:
        hit = find_induced_pattern(g, kind)
        if hit is not None:
            if kind == "K4":
                return K4Witness(hit)
            return PatternWitness(kind, hit)
    raise InternalError(
        f"fact violation detected but no {'/'.join(kinds_tried)} witness found"
    )


def _chain_necklace(
    hole: HoleContext,
    link_hubs: Sequence[int],
    gadgets: Sequence[tuple[int, int]],
) -> NecklaceWitness:
    """Necklace from a forcing chain: hub indices around the hole, one
    diamond pair per consecutive hub pair, closed by a hole edge."""
    hubs = tuple(hole.v(i) for i in link_hubs)
    return NecklaceWitness(hubs, tuple(gadgets), (hubs[-1], hubs[0]))


# -- q values --------------------------------------------------------------------


def q_value(g: Graph, hole: HoleContext, w: int) -> tuple[int, int]:
    """Length and 0-based start index of a maximal run of consecutive hole
    neighbours of w.  w must lie outside the hole."""
    if w in hole.cycle:
        raise InputError(f"vertex {w} lies on the hole")
    p = hole.p
    is_nbr = [g.adjacent(w, hole.v(i)) for i in range(p)]
    if all(is_nbr):
        return p, 0
    if not any(is_nbr):
        return 0, 0
    best_len, best_start = 0, 0
    for i in range(p):
        if is_nbr[i] and not is_nbr[(i - 1) % p]:
            length = 0
            while is_nbr[(i + length) % p]:
                length += 1
            if length > best_len:
                best_len, best_start = length, i
    return best_len, best_start


# -- classification -----------------------------------------------------------------


def classify(
    g: Graph, hole: HoleContext, mode: str = MODE_E
) -> Union[Classification, Witness]:
    """Tag every vertex outside the hole as A/B/C/D, or return the witness
    that explains why it cannot be tagged."""
    if mode not in MODES:
        raise InputError(f"unknown class mode {mode!r}")
    p = hole.p
    on_hole = set(hole.cycle)
    a: dict[int, list[int]] = {i: [] for i in range(p)}
    b: dict[int, list[int]] = {i: [] for i in range(p)}
    c: dict[int, list[int]] = {i: [] for i in range(p)}
    d: dict[int, list[int]] = {i: [] for i in range(p)}
    tags: dict[int, tuple[str, int]] = {}

    undominated = [
        w for w in g.vertices() if w not in on_hole and not any(g.adjacent(w, x) for x in on_hole)
    ]
    if undominated:
        return _lemma1_witness(g, hole, mode)

    for w in g.vertices():
        if w in on_hole:
            continue
        q, j = q_value(g, hole, w)
        deg_q = sum(1 for i in range(p) if g.adjacent(w, hole.v(i)))
        if q == p:
            return OddWheelWitness(w, hole.cycle)
        if q == 2:
            return _witness_from_candidates(
                g,
                [("bull", (hole.v(j - 1), hole.v(j), hole.v(j + 1), hole.v(j + 2), w))],
            )
        if q == 3:
            if deg_q > 3:
                extra = next(
                    i
                    for i in range(p)
                    if g.adjacent(w, hole.v(i)) and i not in ((j) % p, (j + 1) % p, (j + 2) % p)
                )
                vk = hole.v(extra)
                return _witness_from_candidates(
                    g,
                    [
                        ("bull", (hole.v(j - 1), hole.v(j), hole.v(j + 1), vk, w)),
                        ("bull", (hole.v(j + 1), hole.v(j + 2), hole.v(j + 3), vk, w)),
                    ],
                )
            c[j].append(w)
            tags[w] = ("C", j)
        elif q == 4:
            if p == 5:
                d[j].append(w)
                tags[w] = ("D", j)
            else:
                return _witness_from_candidates(
                    g,
                    [("bull", (hole.v(j - 1), hole.v(j), hole.v(j + 1), hole.v(j + 3), w))],
                )
        elif q >= 5:
            return _witness_from_candidates(
                g,
                [("bull", (hole.v(j - 1), hole.v(j), hole.v(j + 1), hole.v(j + 3), w))],
            )
        else:  # q == 1
            nbr_idx = [i for i in range(p) if g.adjacent(w, hole.v(i))]
            if deg_q == 1:
                a[j].append(w)
                tags[w] = ("A", j)
            elif deg_q == 2:
                i0, i1 = nbr_idx
                if (i1 - i0) % p == 2:
                    b[i0].append(w)
                    tags[w] = ("B", i0)
                elif (i0 - i1) % p == 2:
                    b[i1].append(w)
                    tags[w] = ("B", i1)
                else:
                    raise InternalError(
                        f"vertex {w} sees the hole at cyclic distance >= 3; "
                        "a shorter odd hole exists, so the hole was not smallest"
                    )
            else:
                raise InternalError(
                    f"vertex {w} has {deg_q} pairwise non-consecutive hole "
                    "neighbours; a shorter odd hole exists"
                )

    cls = Classification(
        hole=hole,
        tags=tags,
        a={i: tuple(a[i]) for i in range(p)},
        b={i: tuple(b[i]) for i in range(p)},
        c={i: tuple(c[i]) for i in range(p)},
        d={i: tuple(d[i]) for i in range(p)},
    )
    _derive_primed(g, cls)
    return cls


def _derive_primed(g: Graph, cls: Classification) -> None:
    p = cls.p
    for i in range(p):
        ai = cls.a[i]
        prime = tuple(v for v in ai if any(g.adjacent(v, u) for u in ai if u != v))
        cls.a_prime[i] = prime
        cls.a_star[i] = tuple(v for v in ai if v not in prime)
        bi = cls.b[i]
        partners = cls.b[i] + cls.c[i]
        bprime = tuple(
            v for v in bi if any(g.adjacent(v, u) for u in partners if u != v)
        )
        cls.b_prime[i] = bprime
        cls.b_star[i] = tuple(v for v in bi if v not in bprime)


def _lemma1_witness(g: Graph, hole: HoleContext, mode: str) -> Witness:
    """Witness for a vertex at distance >= 2 from the hole: the hole fails
    to dominate, which forces an odd wheel or a forbidden pattern."""
    p = hole.p
    on_hole = set(hole.cycle)
    dist = {v: 0 for v in hole.cycle}
    parent: dict[int, int] = {}
    frontier = list(hole.cycle)
    while frontier:
        nxt = []
        for u in frontier:
            for x in g.neighbours(u):
                if x not in dist:
                    dist[x] = dist[u] + 1
                    parent[x] = u
                    nxt.append(x)
        frontier = nxt
    far = sorted(v for v, dv in dist.items() if dv == 2)
    if not far:
        raise InputError("graph is disconnected from the hole")
    v2 = far[0]
    v1 = parent[v2]

    if all(g.adjacent(v1, x) for x in hole.cycle):
        return OddWheelWitness(v1, hole.cycle)
    for k in range(p):
        if (
            g.adjacent(v1, hole.v(k))
            and g.adjacent(v1, hole.v(k - 1))
            and not g.adjacent(v1, hole.v(k + 1))
        ):
            return _witness_from_candidates(
                g, [("bull", (v2, v1, hole.v(k - 1), hole.v(k), hole.v(k + 1)))]
            )
    # q(v1) = 1: some hole neighbour with a clean window around it.
    j = next(
        i
        for i in range(p)
        if g.adjacent(v1, hole.v(i))
        and not g.adjacent(v1, hole.v(i - 1))
        and not g.adjacent(v1, hole.v(i + 1))
        and not g.adjacent(v1, hole.v(i + 2))
    )
    if mode == MODE_CHAIR:
        cand = [("chair", (v2, v1, hole.v(j), hole.v(j + 1), hole.v(j - 1)))]
    elif mode == MODE_E:
        cand = [("E", (v2, v1, hole.v(j), hole.v(j + 1), hole.v(j + 2), hole.v(j - 1)))]
    elif mode == MODE_S113:
        cand = [
            (
                "S113",
                (hole.v(j - 1), v1, hole.v(j), hole.v(j + 1), hole.v(j + 2), hole.v(j + 3)),
            )
        ]
    else:
        cand = [
            (
                "S123",
                (
                    hole.v(j - 1),
                    v1,
                    v2,
                    hole.v(j),
                    hole.v(j + 1),
                    hole.v(j + 2),
                    hole.v(j + 3),
                ),
            )
        ]
    return _witness_from_candidates(g, cand, pool=[v2, v1, *hole.cycle])


# -- structural validation -----------------------------------------------------------


def validate_structure(
    g: Graph, hole: HoleContext, cls: Classification, mode: str
) -> Witness | None:
    """Check every fact the mode's colouring routine relies on, in the order
    the facts build on each other; the first violation yields its witness."""
    checks = [_check_fact4, _check_fact5, _check_fact6]
    if mode == MODE_CHAIR:
        checks += [_check_chair_sets]
    elif hole.p > 5:
        checks += [_check_no_a_large_p, _check_bipartite_bc]
    else:
        checks += [
            _check_bipartite_p5,  # fact 8
            _check_fact9,
            _check_fact10,
            _check_fact11,
            _check_fact12,
            _check_fact13,
            _check_fact14,
            _check_fact15,
            _check_fact16,
            _check_fact17,
            _check_fact18,
            _check_fact19,
        ]
    for check in checks:
        w = check(g, hole, cls, mode)
        if w is not None:
            return w
    # Totality: with the facts in force every non-hole edge must be typeable.
    edge_types(g, hole, cls)
    return None


def _bc_members(cls: Classification, i: int) -> tuple[int, ...]:
    return cls.b[i % cls.p] + cls.c[i % cls.p]


def _check_fact4(g, hole, cls, mode):
    """Edges between B/C sets at cyclic distance >= 2 are forbidden."""
    p = cls.p
    for u, v in g.edges():
        if u not in cls.tags or v not in cls.tags:
            continue
        ku, iu = cls.tags[u]
        kv, iv = cls.tags[v]
        if ku not in "BC" or kv not in "BC":
            continue
        fwd = (iv - iu) % p
        if fwd in (0, 1, p - 1):
            continue
        if fwd <= p - fwd:
            w, wp, i, j, dd = u, v, iu, iv, fwd
        else:
            w, wp, i, j, dd = v, u, iv, iu, p - fwd
        if dd >= 3:
            raise InternalError(
                f"edge ({w}, {wp}) joins hole-distance-{dd} B/C sets; this "
                "implies a shorter odd hole, so the hole was not smallest"
            )
        # dd == 2
        if p > 5:
            return _witness_from_candidates(
                g,
                [("bull", (hole.v(i), w, hole.v(j), wp, hole.v(j + 2)))],
            )
        kw, kwp = cls.tags[w][0], cls.tags[wp][0]
        if kw == "C" and kwp == "C":
            return _chain_necklace(
                hole,
                (i, i + 2, i + 4),
                ((w, hole.v(i + 1)), (wp, hole.v(j + 1))),
            )
        return _witness_from_candidates(
            g,
            [
                ("bull", (hole.v(i), w, wp, hole.v(j), hole.v(j + 1))),
                ("bull", (hole.v(j + 2), wp, w, hole.v(i), hole.v(i + 1))),
            ],
        )
    return None


def _check_fact5(g, hole, cls, mode):
    """C anchors are never cyclically adjacent."""
    p = cls.p
    for i in range(p):
        if cls.c[i] and cls.c[(i + 1) % p]:
            w = cls.c[i][0]
            wp = cls.c[(i + 1) % p][0]
            if g.adjacent(w, wp):
                return _witness_from_candidates(
                    g, [("K4", (w, hole.v(i + 1), hole.v(i + 2), wp))]
                )
            return _witness_from_candidates(
                g, [("bull", (hole.v(i - 1), hole.v(i), w, hole.v(i + 1), wp))]
            )
    return None


def _check_fact6(g, hole, cls, mode):
    """A 2-type edge must have an endpoint in a starred B set."""
    p = cls.p
    for u, v in g.edges():
        if u not in cls.tags or v not in cls.tags:
            continue
        ku, iu = cls.tags[u]
        kv, iv = cls.tags[v]
        if ku not in "BC" or kv not in "BC":
            continue
        if (iv - iu) % p == 1:
            w, wp, i = u, v, iu
        elif (iu - iv) % p == 1:
            w, wp, i = v, u, iv
        else:
            continue
        i1 = (i + 1) % p
        w_star = cls.tags[w][0] == "B" and w in cls.b_star[i]
        wp_star = cls.tags[wp][0] == "B" and wp in cls.b_star[i1]
        if w_star or wp_star:
            continue
        if cls.tags[w][0] == "C" and cls.tags[wp][0] == "C":
            raise InternalError("adjacent C anchors survived fact 5")
        cands: list[tuple[str, tuple[int, ...]]] = []
        if cls.tags[w][0] == "C" and wp in cls.b_prime[i1]:
            w2 = _b_partner(g, cls, wp, i1)
            cands = [
                ("bull", (hole.v(i - 1), hole.v(i), w, hole.v(i + 1), w2)),
                ("K4", (w, hole.v(i + 1), wp, w2)),
            ]
        elif w in cls.b_prime[i] and cls.tags[wp][0] == "C":
            w2 = _b_partner(g, cls, w, i)
            cands = [
                ("bull", (hole.v(i + 4), hole.v(i + 3), wp, hole.v(i + 2), w2)),
                ("K4", (wp, hole.v(i + 2), w, w2)),
            ]
        elif w in cls.b_prime[i] and wp in cls.b_prime[i1]:
            w2 = _b_partner(g, cls, w, i)
            w3 = _b_partner(g, cls, wp, i1)
            cands = [
                ("bull", (hole.v(i - 1), hole.v(i), wp, w, w2)),
                ("bull", (hole.v(i + 4), hole.v(i + 3), w3, wp, w)),
                ("bull", (hole.v(i + 4), hole.v(i + 3), w3, wp, w2)),
                ("K4", (w, wp, w2, w3)),
            ]
        pool = [w, wp, *hole.cycle]
        pool += list(cls.b[i]) + list(cls.c[i]) + list(cls.b[i1]) + list(cls.c[i1])
        return _witness_from_candidates(
            g, cands or [("bull", (w, wp, hole.v(i), hole.v(i + 1), hole.v(i + 2)))], pool
        )
    return None


def _b_partner(g: Graph, cls: Classification, w: int, i: int) -> int:
    for u in _bc_members(cls, i):
        if u != w and g.adjacent(w, u):
            return u
    raise InternalError(f"vertex {w} tagged B' at {i} has no partner")


def _odd_set_witness(g, hole, members, hub) -> Witness | None:
    """Bipartiteness check of g[members]; an odd cycle plus the hub hole
    vertex gives a K4 (triangle rim) or an odd wheel."""
    cyc = induced_odd_cycle_in(g, members)
    if cyc is None:
        return None
    if len(cyc) == 3:
        return K4Witness((hub, *cyc))
    return OddWheelWitness(hub, cyc)


def _check_bipartite_bc(g, hole, cls, mode):
    """Fact: each G[B_i + C_i] is bipartite (p > 5)."""
    for i in range(cls.p):
        w = _odd_set_witness(g, hole, _bc_members(cls, i), hole.v(i))
        if w is not None:
            return w
    return None


def _check_bipartite_p5(g, hole, cls, mode):
    """Fact 8: G[B_i + C_i] and G[A_i] bipartite (p = 5)."""
    for i in range(cls.p):
        w = _odd_set_witness(g, hole, _bc_members(cls, i), hole.v(i))
        if w is not None:
            return w
        w = _odd_set_witness(g, hole, cls.a[i], hole.v(i))
        if w is not None:
            return w
    return None


def _check_chair_sets(g, hole, cls, mode):
    """Chair mode: no A or B vertices, and at most one C vertex per anchor."""
    p = cls.p
    for i in range(p):
        for w in cls.a[i]:
            return _witness_from_candidates(
                g,
                [("chair", (hole.v(i - 1), hole.v(i), hole.v(i + 1), hole.v(i + 2), w))],
            )
        for w in cls.b[i]:
            j = i + 2
            return _witness_from_candidates(
                g,
                [("chair", (hole.v(j - 1), hole.v(j), hole.v(j + 1), hole.v(j + 2), w))],
            )
    for i in range(p):
        if len(cls.c[i]) >= 2:
            w, wp = cls.c[i][0], cls.c[i][1]
            if g.adjacent(w, wp):
                return _witness_from_candidates(
                    g, [("K4", (hole.v(i), hole.v(i + 1), w, wp))]
                )
            return _witness_from_candidates(
                g, [("chair", (hole.v(i - 2), hole.v(i - 1), hole.v(i), w, wp))]
            )
    return None


def _check_no_a_large_p(g, hole, cls, mode):
    """For p > 5 an A vertex yields the mode's tree witness."""
    for i in range(cls.p):
        for w in cls.a[i]:
            if mode == MODE_S113:
                cand = (
                    "S113",
                    (w, hole.v(i - 1), hole.v(i), hole.v(i + 1), hole.v(i + 2), hole.v(i + 3)),
                )
            elif mode == MODE_S123:
                cand = (
                    "S123",
                    (
                        w,
                        hole.v(i - 2),
                        hole.v(i - 1),
                        hole.v(i),
                        hole.v(i + 1),
                        hole.v(i + 2),
                        hole.v(i + 3),
                    ),
                )
            else:
                cand = (
                    "E",
                    (w, hole.v(i - 2), hole.v(i - 1), hole.v(i), hole.v(i + 1), hole.v(i + 2)),
                )
            return _witness_from_candidates(g, [cand])
    return None


def _check_fact9(g, hole, cls, mode):
    """A_i is fully joined to A_{i+1}, A_{i-1} and B_{i-1}."""
    p = cls.p
    for i in range(p):
        for w in cls.a[i]:
            for wp in cls.a[(i + 1) % p] + cls.b[(i - 1) % p]:
                if not g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("E", (w, hole.v(i), hole.v(i + 1), hole.v(i + 2), hole.v(i + 3), wp))],
                    )
            for wp in cls.a[(i - 1) % p]:
                if not g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("E", (w, hole.v(i), hole.v(i - 1), hole.v(i - 2), hole.v(i - 3), wp))],
                    )
    return None


def _check_fact10(g, hole, cls, mode):
    """A_i has no edges to A_{i+2}, A_{i+3}, B_i, B_{i+3}, C_i..C_{i+3}."""
    p = cls.p
    for i in range(p):
        for w in cls.a[i]:
            for wp in cls.a[(i + 2) % p]:
                if g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("E", (hole.v(i + 3), hole.v(i + 4), hole.v(i), hole.v(i + 1), w, wp))],
                    )
            for wp in cls.a[(i + 3) % p]:
                if g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("E", (hole.v(i + 2), hole.v(i + 1), hole.v(i), hole.v(i + 4), w, wp))],
                    )
            for wp in cls.b[i] + cls.c[i]:
                if g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("bull", (hole.v(i - 1), hole.v(i), w, wp, hole.v(i + 2)))],
                    )
            for wp in cls.b[(i + 3) % p] + cls.c[(i + 3) % p]:
                if g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("bull", (hole.v(i + 1), hole.v(i), w, wp, hole.v(i + 3)))],
                    )
            for wp in cls.c[(i + 1) % p]:
                if g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("bull", (w, wp, hole.v(i + 2), hole.v(i + 3), hole.v(i + 4)))],
                    )
            for wp in cls.c[(i + 2) % p]:
                if g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("bull", (w, wp, hole.v(i + 3), hole.v(i + 2), hole.v(i + 1)))],
                    )
    return None


def _a_pair(g: Graph, cls: Classification, i: int) -> tuple[int, int]:
    for w in cls.a_prime[i]:
        for wp in cls.a[i]:
            if wp != w and g.adjacent(w, wp):
                return w, wp
    raise InternalError(f"A' at {i} nonempty but no adjacent pair found")


def _check_fact11(g, hole, cls, mode):
    """At most two anchors carry A' vertices, never cyclically adjacent."""
    p = cls.p
    anchors = [i for i in range(p) if cls.a_prime[i]]
    for i in anchors:
        if (i + 1) % p in anchors:
            w, wp = _a_pair(g, cls, i)
            u, up = _a_pair(g, cls, (i + 1) % p)
            return _witness_from_candidates(
                g,
                [("K4", (w, wp, u, up))],
                pool=list(cls.a[i]) + list(cls.a[(i + 1) % p]),
            )
    return None


def _check_fact12(g, hole, cls, mode):
    """No B_{i+2} vertex is adjacent to both an A_i and an A_{i+1} vertex."""
    p = cls.p
    for i in range(p):
        for w2 in cls.b[(i + 2) % p]:
            adj_a_i = [w for w in cls.a[i] if g.adjacent(w, w2)]
            adj_a_i1 = [w for w in cls.a[(i + 1) % p] if g.adjacent(w, w2)]
            if adj_a_i and adj_a_i1:
                w, wp = adj_a_i[0], adj_a_i1[0]
                return _witness_from_candidates(
                    g, [("bull", (hole.v(i), w, wp, w2, hole.v(i + 2)))]
                )
    return None


def _check_fact13(g, hole, cls, mode):
    """C_i is fully joined to A_{i+1}, B_{i-1} and B_{i+1}."""
    p = cls.p
    for i in range(p):
        for w in cls.c[i]:
            for wp in cls.a[(i + 1) % p] + cls.b[(i + 1) % p]:
                if not g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("bull", (hole.v(i - 1), hole.v(i), hole.v(i + 1), w, wp))],
                    )
            for wp in cls.b[(i - 1) % p]:
                if not g.adjacent(w, wp):
                    return _witness_from_candidates(
                        g,
                        [("bull", (hole.v(i + 3), hole.v(i + 2), hole.v(i + 1), w, wp))],
                    )
    return None


def _check_fact14(g, hole, cls, mode):
    """C_i has no edges into A_i, A_{i+2}, A_{i+3}, A_{i+4}."""
    p = cls.p
    for i in range(p):
        for w in cls.c[i]:
            for off, cand_idx in ((0, 1), (2, 0), (3, 0), (4, 1)):
                for wp in cls.a[(i + off) % p]:
                    if g.adjacent(w, wp):
                        cands = [
                            ("bull", (hole.v(i - 1), hole.v(i), hole.v(i + 1), w, wp)),
                            ("bull", (hole.v(i + 3), hole.v(i + 2), hole.v(i + 1), w, wp)),
                        ]
                        return _witness_from_candidates(g, [cands[cand_idx], cands[1 - cand_idx]])
    return None


def _check_fact15(g, hole, cls, mode):
    """A neighbour outside A_i + D of one endpoint of an A'_i edge must see
    the other endpoint too."""
    p = cls.p
    on_hole = set(hole.cycle)
    dset = set(cls.all_of("D"))
    for i in range(p):
        ai = set(cls.a[i])
        for w in cls.a_prime[i]:
            for wp in cls.a[i]:
                if wp == w or not g.adjacent(w, wp):
                    continue
                for w2 in g.neighbours(w):
                    if w2 in ai or w2 in dset or w2 in on_hole or w2 == wp:
                        continue
                    if not g.adjacent(wp, w2):
                        return _witness_from_candidates(
                            g,
                            [
                                ("bull", (hole.v(i - 1), hole.v(i), w, wp, w2)),
                                ("bull", (hole.v(i + 1), hole.v(i), w, wp, w2)),
                            ],
                        )
    return None


def _check_fact16(g, hole, cls, mode):
    """Only one anchor carries C, and C_i kills the nearby primed sets."""
    p = cls.p
    anchors = [i for i in range(p) if cls.c[i]]
    if len(anchors) >= 2:
        i, j = anchors[0], anchors[1]
        if (j - i) % p not in (2, 3):
            raise InternalError("adjacent C anchors survived fact 5")
        if (j - i) % p == 3:
            i, j = j, i  # so that (j - i) % p == 2
        w, wp = cls.c[i][0], cls.c[j % p][0]
        return _chain_necklace(
            hole, (i, i + 2, i + 4), ((w, hole.v(i + 1)), (wp, hole.v(i + 3)))
        )
    if not anchors:
        return None
    i = anchors[0]
    w = cls.c[i][0]
    if cls.a_prime[(i + 1) % p]:
        wp, w2 = _a_pair(g, cls, (i + 1) % p)
        return _witness_from_candidates(
            g,
            [("K4", (hole.v(i + 1), w, wp, w2))],
            pool=[w, *cls.a[(i + 1) % p], hole.v(i + 1)],
        )
    for off in (1, 4):
        idx = (i + off) % p
        if cls.b_prime[idx]:
            wp = cls.b_prime[idx][0]
            w2 = _b_partner(g, cls, wp, idx)
            if off == 1:
                cands = [
                    ("bull", (hole.v(i - 1), hole.v(i), w, hole.v(i + 1), wp)),
                    ("bull", (hole.v(i + 4), hole.v(i + 3), w2, wp, w)),
                    ("K4", (hole.v(i + 1), w, wp, w2)),
                ]
            else:
                cands = [
                    ("bull", (hole.v(i + 3), hole.v(i + 2), w, hole.v(i + 1), wp)),
                    ("bull", (hole.v(i + 3), hole.v(i - 1), w2, wp, w)),
                    ("K4", (hole.v(i + 1), w, wp, w2)),
                ]
            return _witness_from_candidates(
                g, cands, pool=[w, wp, w2, *hole.cycle]
            )
    for off in (2, 3):
        idx = (i + off) % p
        if cls.b_prime[idx]:
            wp = cls.b_prime[idx][0]
            w2 = _b_partner(g, cls, wp, idx)
            if off == 2:
                return _chain_necklace(
                    hole, (i, i + 2, i + 4), ((w, hole.v(i + 1)), (wp, w2))
                )
            return _chain_necklace(
                hole, (i + 2, i, i + 3), ((w, hole.v(i + 1)), (wp, w2))
            )
    return None


def _check_fact17(g, hole, cls, mode):
    """Like fact 15 but for edges inside B'_i."""
    p = cls.p
    on_hole = set(hole.cycle)
    dset = set(cls.all_of("D"))
    for i in range(p):
        excluded = set(_bc_members(cls, i)) | dset | on_hole
        for w in cls.b_prime[i]:
            for wp in cls.b_prime[i]:
                if wp == w or not g.adjacent(w, wp):
                    continue
                for w2 in g.neighbours(w):
                    if w2 in excluded or w2 == wp:
                        continue
                    if not g.adjacent(wp, w2):
                        return _witness_from_candidates(
                            g,
                            [
                                ("bull", (hole.v(i - 1), hole.v(i), wp, w, w2)),
                                ("bull", (hole.v(i + 3), hole.v(i + 2), wp, w, w2)),
                            ],
                        )
    return None


def _check_fact18(g, hole, cls, mode):
    """D_i is fully joined to A_{i+1}, A_{i+2} and B_{i-1}..B_{i+2}."""
    p = cls.p
    for i in range(p):
        for w in cls.d[i]:
            groups = [
                (cls.a[(i + 1) % p], ("bull", lambda wp: (hole.v(i - 1), hole.v(i), w, hole.v(i + 1), wp))),
                (cls.a[(i + 2) % p], ("bull", lambda wp: (hole.v(i + 4), hole.v(i + 3), w, hole.v(i + 2), wp))),
                (cls.b[i], ("bull", lambda wp: (wp, hole.v(i + 2), hole.v(i + 3), w, hole.v(i + 4)))),
                (cls.b[(i + 1) % p], ("bull", lambda wp: (wp, hole.v(i), hole.v(i + 1), w, hole.v(i + 4)))),
                (cls.b[(i + 2) % p], ("bull", lambda wp: (hole.v(i), w, hole.v(i + 3), hole.v(i + 2), wp))),
                (cls.b[(i - 1) % p], ("bull", lambda wp: (hole.v(i + 3), w, hole.v(i), hole.v(i + 1), wp))),
            ]
            for members, (kind, builder) in groups:
                for wp in members:
                    if not g.adjacent(w, wp):
                        return _witness_from_candidates(g, [(kind, builder(wp))])
    return None


def _check_fact19(g, hole, cls, mode):
    """D is a single independent anchor set and clears A_i, A_{i+3},
    A'_{i+1}, A'_{i+2}, B' and C."""
    p = cls.p
    anchors = [i for i in range(p) if cls.d[i]]
    if not anchors:
        return None
    if len(anchors) >= 2:
        i, j = anchors[0], anchors[1]
        w, wp = cls.d[i][0], cls.d[j][0]
        return _d_links_necklace(hole, {i: w, j: wp})
    i = anchors[0]
    dvs = cls.d[i]
    w = dvs[0]
    for x in dvs:
        for y in dvs:
            if x < y and g.adjacent(x, y):
                return _witness_from_candidates(
                    g, [("K4", (hole.v(i), hole.v(i + 1), x, y))]
                )
    for wp in cls.a[i]:
        cands = [
            ("bull", (wp, w, hole.v(i), hole.v(i + 1), hole.v(i + 3))),
            ("bull", (hole.v(i - 1), hole.v(i), wp, w, hole.v(i + 2))),
        ]
        return _witness_from_candidates(g, cands)
    for wp in cls.a[(i + 3) % p]:
        cands = [
            ("bull", (wp, w, hole.v(i + 3), hole.v(i + 2), hole.v(i))),
            ("bull", (hole.v(i + 4), hole.v(i + 3), wp, w, hole.v(i + 1))),
        ]
        return _witness_from_candidates(g, cands)
    for off in (1, 2):
        idx = (i + off) % p
        if cls.a_prime[idx]:
            wp, w2 = _a_pair(g, cls, idx)
            return _witness_from_candidates(
                g, [("K4", (w, wp, w2, hole.v(idx)))], pool=[w, wp, w2, hole.v(idx)]
            )
    for off in range(p):
        idx = (i + off) % p
        for wp in cls.c[idx]:
            if off == 0:
                cands = [
                    ("bull", (hole.v(i + 4), hole.v(i + 3), w, hole.v(i + 2), wp)),
                    ("K4", (hole.v(i), hole.v(i + 1), w, wp)),
                ]
                return _witness_from_candidates(g, cands)
            if off == 1:
                cands = [
                    ("bull", (hole.v(i + 4), hole.v(i), w, hole.v(i + 1), wp)),
                    ("K4", (hole.v(i + 1), hole.v(i + 2), w, wp)),
                ]
                return _witness_from_candidates(g, cands)
            # off in (2, 3, 4): forcing chain through the D and C links.
            return _dc_links_necklace(hole, i, w, idx, wp)
    for off in range(p):
        idx = (i + off) % p
        if cls.b_prime[idx]:
            wp = cls.b_prime[idx][0]
            w2 = _b_partner(g, cls, wp, idx)
            if off in (0, 1):
                return _witness_from_candidates(
                    g, [("K4", (hole.v(idx), w, wp, w2))]
                )
            return _db_links_necklace(hole, i, w, idx, (wp, w2))
    return None


def _pick_link_pair(links: dict[int, tuple[int, int, int]], p: int):
    """Two links at cyclic distance 2 whose gadgets are distinct."""
    for la, ga in links.items():
        lb = (la + 2) % p
        if lb in links and links[lb][0] != ga[0]:
            return la, lb
    raise InternalError("no usable forcing-link pair at distance 2")


def _links_to_necklace(hole: HoleContext, links, la: int, lb: int) -> NecklaceWitness:
    pair_a = links[la][1:]
    pair_b = links[lb][1:]
    return _chain_necklace(hole, (la, la + 2, la + 4), (pair_a, pair_b))


def _d_links_necklace(hole: HoleContext, d_vertices: dict[int, int]) -> NecklaceWitness:
    links: dict[int, tuple[int, int, int]] = {}
    for i, w in d_vertices.items():
        links.setdefault(i % hole.p, (w, w, hole.v(i + 1)))
        links.setdefault((i + 1) % hole.p, (w, w, hole.v(i + 2)))
    la, lb = _pick_link_pair(links, hole.p)
    return _links_to_necklace(hole, links, la, lb)


def _dc_links_necklace(hole, i, w, c_idx, wp) -> NecklaceWitness:
    links = {
        i % hole.p: (w, w, hole.v(i + 1)),
        (i + 1) % hole.p: (w, w, hole.v(i + 2)),
        c_idx % hole.p: (wp, wp, hole.v(c_idx + 1)),
    }
    la, lb = _pick_link_pair(links, hole.p)
    return _links_to_necklace(hole, links, la, lb)


def _db_links_necklace(hole, i, w, b_idx, pair) -> NecklaceWitness:
    links = {
        i % hole.p: (w, w, hole.v(i + 1)),
        (i + 1) % hole.p: (w, w, hole.v(i + 2)),
        b_idx % hole.p: (pair[0], pair[0], pair[1]),
    }
    la, lb = _pick_link_pair(links, hole.p)
    return _links_to_necklace(hole, links, la, lb)


# -- edge types --------------------------------------------------------------------


def edge_types(g: Graph, hole: HoleContext, cls: Classification) -> dict[tuple[int, int], int]:
    """Type every edge not incident to the hole; a violation of the facts
    shows up as an untypeable edge."""
    p = cls.p
    out: dict[tuple[int, int], int] = {}
    for u, v in g.edges():
        if u not in cls.tags or v not in cls.tags:
            continue
        ku, iu = cls.tags[u]
        kv, iv = cls.tags[v]
        t = _edge_type(p, ku, iu, kv, iv)
        if t is None:
            raise InternalError(
                f"edge ({u}, {v}) between {ku}_{iu} and {kv}_{iv} has no type; "
                "structure validation should have caught this"
            )
        out[(u, v)] = t
    return out


def _edge_type(p, ku, iu, kv, iv) -> int | None:
    if ku == "D" or kv == "D":
        return 7
    if ku in "BC" and kv in "BC":
        if iu == iv:
            return 1
        if (iv - iu) % p == 1 or (iu - iv) % p == 1:
            return 2
        return None
    if ku == "A" and kv == "A":
        if iu == iv:
            return 4
        if (iv - iu) % p == 1 or (iu - iv) % p == 1:
            return 5
        return None
    # one A endpoint, one B/C endpoint
    if kv == "A":
        ku, iu, kv, iv = kv, iv, ku, iu
    if kv in "BC" and (iu - iv) % p == 1:
        return 3
    if kv == "B" and (iv - iu) % p in (1, 2):
        return 6
    return None

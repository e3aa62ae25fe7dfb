"""Colouring routine for the (bull, chair)-free mode.

After validation a block in this mode consists of the hole plus C vertices
(and, only for five-holes, D vertices).  For long holes the C anchors
either wrap the whole hole in steps of two, in which case the block is
itself a spindle, or they leave a gap that admits the two-segment
alternating colouring.  For five-holes minimum degree three forces the
anchors to cover the hole, which always yields a forcing conflict and
hence a Moser-spindle witness.
"""

from __future__ import annotations

from typing import Union

from .certificates import NecklaceWitness, Witness
from .classify import Classification
from .errors import InternalError
from .graph import Colouring, Graph, is_proper_colouring
from .patterns import HoleContext

RED, GREEN, BLUE = 0, 1, 2


def solve_chair(
    g: Graph, hole: HoleContext, cls: Classification
) -> Union[Colouring, Witness]:
    if hole.p == 5:
        return _solve_chair_p5(g, hole, cls)
    return _solve_chair_large_p(g, hole, cls)


def _solve_chair_large_p(g, hole: HoleContext, cls: Classification):
    p = cls.p
    anchors = [i for i in range(p) if cls.c[i]]
    col: Colouring = {}
    if not anchors:
        # Reachable only below minimum degree three: the block is the hole.
        for t in range(p):
            col[hole.v(t)] = (RED, GREEN)[t % 2] if t < p - 1 else BLUE
        return col

    # Start at an anchor whose minus-two neighbour anchor is missing (one
    # always exists: the anchor set cannot be closed under minus two), then
    # walk forward in steps of two through consecutive anchors.
    start = min(i for i in anchors if not cls.c[(i - 2) % p])
    k = 0
    while cls.c[(start + 2 * k) % p]:
        k += 1
    j = (start + 2 * k) % p

    if k == (p - 1) // 2:
        # The anchors chain all the way round: the block is a spindle of
        # order 3(p-1)/2 + 1.
        hubs = tuple(hole.v(start + 2 * t) for t in range(k + 1))
        pairs = tuple(
            (cls.c[(start + 2 * t) % p][0], hole.v(start + 2 * t + 1))
            for t in range(k)
        )
        witness = NecklaceWitness(hubs, pairs, (hubs[-1], hubs[0]))
        return witness

    # Gap colouring: blue/red alternation from start to j (odd segment),
    # red/green alternation on the rest; every anchor then sees equal
    # colours two apart, freeing one colour for its C vertex.
    seg_len = 2 * k + 1
    for t in range(seg_len):
        col[hole.v(start + t)] = BLUE if t % 2 == 0 else RED
    for s in range(p - seg_len):
        col[hole.v(j + 1 + s)] = RED if s % 2 == 0 else GREEN
    for i in anchors:
        free = {RED, GREEN, BLUE} - {
            col[hole.v(i)],
            col[hole.v(i + 1)],
            col[hole.v(i + 2)],
        }
        if not free:
            raise InternalError("chair gap colouring left no colour for a C vertex")
        col[cls.c[i][0]] = min(free)
    if not is_proper_colouring(g, col):
        raise InternalError("chair gap colouring came out improper")
    return col


def _solve_chair_p5(g, hole: HoleContext, cls: Classification):
    # Forcing links: a C vertex at anchor i ties v_i to v_{i+2}; a D vertex
    # at anchor i ties both v_i to v_{i+2} and v_{i+1} to v_{i+3}.  Two
    # links two apart chain into a Moser spindle closed by a hole edge.
    links: dict[int, list[tuple[int, int]]] = {}
    for i in range(5):
        for w in cls.c[i]:
            links.setdefault(i, []).append((w, hole.v(i + 1)))
        for w in cls.d[i]:
            links.setdefault(i, []).append((w, hole.v(i + 1)))
            links.setdefault((i + 1) % 5, []).append((w, hole.v(i + 2)))

    for a in sorted(links):
        b = (a + 2) % 5
        if b not in links:
            continue
        for pair_a in links[a]:
            for pair_b in links[b]:
                if set(pair_a) & set(pair_b):
                    continue
                hubs = (hole.v(a), hole.v(a + 2), hole.v(a + 4))
                if set(pair_a) & set(hubs) or set(pair_b) & set(hubs):
                    continue
                return NecklaceWitness(hubs, (pair_a, pair_b), (hubs[-1], hubs[0]))

    if g.min_degree() >= 3:
        raise InternalError(
            "five-hole chair block with minimum degree three has no spindle; "
            "this contradicts the structure theory"
        )
    return _colour_sparse_p5(g, hole, cls)


def _colour_sparse_p5(g, hole: HoleContext, cls: Classification) -> Colouring:
    """Low-degree leftovers (only reachable outside the reduction pipeline):
    colour the five-hole by brute force under the link constraints, then
    give each C/D vertex its forced free colour."""
    for bits in range(3**5):
        col: Colouring = {}
        x = bits
        for t in range(5):
            col[hole.v(t)] = x % 3
            x //= 3
        if any(col[hole.v(t)] == col[hole.v(t + 1)] for t in range(5)):
            continue
        ok = True
        for w, (kind, i) in cls.tags.items():
            free = {0, 1, 2} - {
                col[hole.v(i + t)] for t in range((3 if kind == "C" else 4))
            }
            if free:
                col[w] = min(free)
            else:
                ok = False
                break
        if ok and is_proper_colouring(g, col):
            return col
    raise InternalError("sparse five-hole chair block admitted no colouring")

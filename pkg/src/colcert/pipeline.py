"""Reduction to irreducible blocks, per-block solving, and recombination.

A graph is peeled (vertices of degree at most two removed, recorded for
later greedy reinsertion) and split at cut vertices into 2-connected
blocks, recursively until each surviving block has minimum degree three.
Blocks with maximum degree three are 3-colourable outright (unless they
are a K4, which is a witness) and are solved during reduction; the
remaining blocks carry the structural work.  Certificates from blocks are
combined by permuting colours to agree at cut vertices and replaying the
peel in reverse, or by propagating the first witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Union

from .certificates import (
    Certificate,
    DECISION_3COL,
    DECISION_NOT3COL,
    DECISION_NOT_IN_CLASS,
    K4Witness,
    NecklaceWitness,
    OddWheelWitness,
    PatternWitness,
    Witness,
)
from .chair import solve_chair
from .classify import Classification, classify, validate_structure
from .ecolor import solve_c5free, solve_e_large_p, solve_e_p5
from .errors import InputError, InternalError
from .graph import Colouring, Graph, is_proper_colouring
from .modes import MODE_CHAIR, MODE_E, MODE_FORBIDDEN, MODES
from .patterns import (
    extract_necklace_from_antihole,
    find_induced_pattern,
    find_odd_antihole7,
    find_odd_wheel,
    smallest_odd_hole,
)

BlockResult = Union[Colouring, Witness]


@dataclass
class ChildLink:
    node: "TraceNode"
    parent_index: int | None
    cut_vertex: int | None


@dataclass
class TraceNode:
    peel: list[tuple[int, tuple[int, ...]]] = field(default_factory=list)
    children: list[ChildLink] = field(default_factory=list)
    block_id: int | None = None
    colouring: Colouring | None = None


@dataclass
class ReductionTrace:
    root: TraceNode
    blocks: list[tuple[int, ...]]
    peel_order: list[tuple[int, tuple[int, ...]]]


def reduce(g: Graph) -> tuple[list[tuple[int, ...]], ReductionTrace]:
    """Peel and split until irreducible.  Returns the structural blocks
    (vertex tuples in original ids) plus the trace that recombine replays.
    Blocks of maximum degree three are already 3-coloured inside the trace;
    only K4 blocks and blocks with minimum degree >= 3 and maximum >= 4
    are handed back for structural solving."""
    blocks: list[tuple[int, ...]] = []
    peel_order: list[tuple[int, tuple[int, ...]]] = []
    root = _decompose(g, sorted(g.vertices()), blocks, peel_order)
    return blocks, ReductionTrace(root, blocks, peel_order)


def _decompose(g, vertices, blocks, peel_order) -> TraceNode:
    node = TraceNode()
    alive = set(vertices)
    degree = {v: sum(1 for u in g.neighbours(v) if u in alive) for v in alive}
    queue = sorted(v for v in alive if degree[v] <= 2)
    while queue:
        v = queue.pop(0)
        if v not in alive or degree[v] > 2:
            continue
        nbrs = tuple(u for u in g.neighbours(v) if u in alive)
        node.peel.append((v, nbrs))
        peel_order.append((v, nbrs))
        alive.remove(v)
        for u in nbrs:
            degree[u] -= 1
            if degree[u] <= 2:
                queue.append(u)
        queue.sort()
    if not alive:
        return node

    components = _block_forest(g, alive)
    single = len(components) == 1 and len(components[0]) == 1
    if single and not node.peel:
        block = components[0][0][0]
        sub = g.induced(block)
        if sub.max_degree() <= 3:
            if sub.n == 4 and sub.m == 6:
                node.block_id = len(blocks)
                blocks.append(tuple(block))
            else:
                local = solve_low_degree(sub)
                node.colouring = {block[i]: c for i, c in local.items()}
        else:
            node.block_id = len(blocks)
            blocks.append(tuple(block))
        return node

    for forest in components:
        base = len(node.children)
        for block, parent_local, cut in forest:
            child = _decompose(g, block, blocks, peel_order)
            parent_index = None if parent_local is None else base + parent_local
            node.children.append(ChildLink(child, parent_index, cut))
    return node


def _block_forest(g, alive):
    """Biconnected components of g[alive], grouped by connected component
    and ordered so each block (except the first) names an earlier block it
    shares its cut vertex with."""
    alive = set(alive)
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = [0]
    edge_stack: list[tuple[int, int]] = []
    raw_blocks: list[set[int]] = []

    def neighbours(v):
        return [u for u in g.neighbours(v) if u in alive]

    def dfs(start):
        stack = [(start, None, iter(neighbours(start)))]
        index[start] = low[start] = counter[0]
        counter[0] += 1
        comp_block_ids = []
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue  # simple graph: the tree edge appears once
                if u not in index:
                    edge_stack.append((v, u))
                    index[u] = low[u] = counter[0]
                    counter[0] += 1
                    stack.append((u, v, iter(neighbours(u))))
                    advanced = True
                    break
                if index[u] < index[v]:
                    edge_stack.append((v, u))
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            stack.pop()
            if stack:
                pv = stack[-1][0]
                low[pv] = min(low[pv], low[v])
                if low[v] >= index[pv]:
                    members = set()
                    while True:
                        a, b = edge_stack.pop()
                        members.update((a, b))
                        if (a, b) == (pv, v):
                            break
                    raw_blocks.append(members)
                    comp_block_ids.append(len(raw_blocks) - 1)
        return comp_block_ids

    forests = []
    for start in sorted(alive):
        if start in index:
            continue
        ids = dfs(start)
        group = [sorted(raw_blocks[i]) for i in ids]
        forests.append(_order_block_tree(group))
    return forests


def _order_block_tree(group):
    """Order a component's blocks so each one after the first references an
    earlier block sharing one cut vertex."""
    remaining = list(range(len(group)))
    ordered: list[tuple[list[int], int | None, int | None]] = []
    placed_vertices: list[set[int]] = []
    first = remaining.pop(0)
    ordered.append((group[first], None, None))
    placed_vertices.append(set(group[first]))
    while remaining:
        for pos, bid in enumerate(remaining):
            hit = None
            for pidx, pverts in enumerate(placed_vertices):
                shared = pverts & set(group[bid])
                if shared:
                    hit = (pidx, min(shared))
                    break
            if hit is not None:
                remaining.pop(pos)
                ordered.append((group[bid], hit[0], hit[1]))
                placed_vertices.append(set(group[bid]))
                break
        else:
            raise InternalError("block tree of a connected component fell apart")
    return ordered


# -- per-block solving ------------------------------------------------------------


def _backtrack_3col(g: Graph) -> Colouring | None:
    """Plain first-fit backtracking in natural vertex order."""
    colouring: Colouring = {}

    def assign(v: int) -> bool:
        if v == g.n:
            return True
        for c in range(3):
            if all(colouring.get(u) != c for u in g.neighbours(v)):
                colouring[v] = c
                if assign(v + 1):
                    return True
                del colouring[v]
        return False

    return dict(colouring) if assign(0) else None


def solve_low_degree(g: Graph) -> Colouring:
    """3-colour a connected graph with maximum degree three (not K4); such
    a graph always admits one."""
    if g.n == 4 and g.m == 6:
        raise InputError("K4 must be intercepted before the low-degree solver")
    if g.max_degree() > 3:
        raise InputError("low-degree solver needs maximum degree three")
    col = _backtrack_3col(g)
    if col is None:
        raise InternalError("max-degree-three graph refused a 3-colouring")
    return col


def perfect_fallback(g: Graph) -> Colouring:
    """K4-free block with neither an odd hole nor a seven-vertex odd
    antihole: no odd holes or antiholes at all, hence 3-colourable; find
    the colouring by exact search."""
    col = _backtrack_3col(g)
    if col is None:
        raise InternalError(
            "hole-free antihole-free K4-free block refused a 3-colouring"
        )
    return col


def _solve_block(bg: Graph, mode: str) -> tuple[BlockResult, str]:
    hit = find_induced_pattern(bg, "K4")
    if hit is not None:
        return K4Witness(hit), "block:k4-scan"
    if bg.max_degree() <= 3:
        return solve_low_degree(bg), "block:low-degree"
    wheel = find_odd_wheel(bg)
    if wheel is not None:
        return wheel, "block:odd-wheel-scan"
    hole = smallest_odd_hole(bg)
    if hole is None:
        anti = find_odd_antihole7(bg)
        if anti is not None:
            return extract_necklace_from_antihole(bg, anti), "block:antihole7"
        return perfect_fallback(bg), "block:perfect-fallback"
    if mode in (MODES[2], MODES[3]) and hole.p == 5:
        return PatternWitness("C5", hole.cycle), "block:five-hole"
    cls = classify(bg, hole, mode)
    if not isinstance(cls, Classification):
        return cls, "classify"
    witness = validate_structure(bg, hole, cls, mode)
    if witness is not None:
        return witness, "validate"
    if mode == MODE_CHAIR:
        return solve_chair(bg, hole, cls), "chair"
    if mode == MODE_E:
        if hole.p > 5:
            return solve_e_large_p(bg, hole, cls), "e:large-p"
        return solve_e_p5(bg, hole, cls, mode), "e:five-hole"
    return solve_c5free(bg, hole, cls, mode), "s:large-p"


def _map_witness(w: Witness, back: tuple[int, ...]) -> Witness:
    if isinstance(w, K4Witness):
        return K4Witness(tuple(back[v] for v in w.vertices))
    if isinstance(w, OddWheelWitness):
        return OddWheelWitness(back[w.hub], tuple(back[v] for v in w.rim))
    if isinstance(w, NecklaceWitness):
        return NecklaceWitness(
            tuple(back[v] for v in w.hubs),
            tuple((back[a], back[b]) for a, b in w.pairs),
            (back[w.closing_edge[0]], back[w.closing_edge[1]]),
        )
    if isinstance(w, PatternWitness):
        return PatternWitness(w.pattern, tuple(back[v] for v in w.vertices))
    raise InternalError(f"unknown witness type {type(w).__name__}")


# -- recombination ------------------------------------------------------------------


def recombine(
    trace: ReductionTrace, block_results: Mapping[int, BlockResult]
) -> BlockResult:
    """Fold block results back into a certificate payload for the whole
    graph: witnesses propagate unchanged; colourings are aligned at cut
    vertices by colour permutation and extended over the peel in reverse."""
    return _recombine_node(trace.root, block_results)


def _recombine_node(node: TraceNode, block_results) -> BlockResult:
    if node.block_id is not None:
        result = block_results.get(node.block_id)
        if result is None:
            raise InputError(f"missing result for block {node.block_id}")
        if not isinstance(result, dict):
            return result
        colouring = dict(result)
    elif node.colouring is not None:
        colouring = dict(node.colouring)
    else:
        colouring = {}

    if node.children:
        aligned: list[Colouring] = []
        for link in node.children:
            sub = _recombine_node(link.node, block_results)
            if not isinstance(sub, dict):
                return sub
            sub = dict(sub)
            if link.parent_index is not None:
                want = aligned[link.parent_index][link.cut_vertex]
                have = sub[link.cut_vertex]
                if have != want:
                    for v, c in sub.items():
                        if c == have:
                            sub[v] = want
                        elif c == want:
                            sub[v] = have
            aligned.append(sub)
            colouring.update(sub)

    for v, nbrs in reversed(node.peel):
        used = {colouring[u] for u in nbrs}
        free = {0, 1, 2} - used
        if not free:
            raise InternalError(f"peeled vertex {v} found no free colour")
        colouring[v] = min(free)
    return colouring


# -- the full pipeline ----------------------------------------------------------------


def solve(g: Graph, mode: str, validate_class: bool = True) -> Certificate:
    """Decide 3-colourability of g within the given class and return a
    checkable certificate."""
    if mode not in MODES:
        raise InputError(f"unknown class mode {mode!r}")
    if validate_class:
        for kind in MODE_FORBIDDEN[mode]:
            hit = find_induced_pattern(g, kind)
            if hit is not None:
                return Certificate(
                    DECISION_NOT_IN_CLASS,
                    mode,
                    PatternWitness(kind, hit),
                    "pipeline:class-scan",
                )

    blocks, trace = reduce(g)
    results: dict[int, BlockResult] = {}
    for bid, bvs in enumerate(blocks):
        bg = g.induced(bvs)
        result, origin = _solve_block(bg, mode)
        if isinstance(result, dict):
            results[bid] = {bvs[v]: c for v, c in result.items()}
        else:
            witness = _map_witness(result, bvs)
            decision = (
                DECISION_NOT_IN_CLASS
                if isinstance(witness, PatternWitness)
                else DECISION_NOT3COL
            )
            return Certificate(decision, mode, witness, origin)

    combined = recombine(trace, results)
    if not isinstance(combined, dict):
        raise InternalError("recombine returned a witness without a block witness")
    if not is_proper_colouring(g, combined):
        raise InternalError("pipeline produced an improper colouring")
    return Certificate(DECISION_3COL, mode, combined, "pipeline:recombine")

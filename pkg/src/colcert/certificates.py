"""Certificate data model and independent verifiers.

A certificate pairs a decision with a payload that an auditor can check
directly against the input graph:

  * ``three_colourable``     -> a proper colouring (id -> colour 0/1/2,
                                rendered red/green/blue);
  * ``not_three_colourable`` -> a K4, an odd wheel (hub plus induced odd
                                rim inside its neighbourhood), or a spindle
                                diamond-necklace (a chain of diamonds whose
                                hubs are forced onto one colour, closed by
                                an edge);
  * ``not_in_class``         -> an induced copy of a forbidden pattern.

The checks here deliberately share no code with the solver side beyond the
graph type itself: pattern templates are re-declared as literal edge lists
and matched by permutation, and necklace/wheel conditions are spelled out
edge by edge.  A bug in the producing code therefore cannot hide inside
its own verifier.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from typing import Union

from .errors import InputError
from .graph import Colouring, Graph, is_proper_colouring

COLOUR_NAMES = ("red", "green", "blue")

DECISION_3COL = "three_colourable"
DECISION_NOT3COL = "not_three_colourable"
DECISION_NOT_IN_CLASS = "not_in_class"

# Forbidden-pattern templates as literal edge lists over 0..k-1.  These are
# intentionally written out rather than built from shared constructors.
PATTERN_EDGES: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    "bull": (5, ((0, 1), (1, 2), (2, 3), (3, 4), (1, 3))),
    "claw": (4, ((0, 1), (0, 2), (0, 3))),
    "chair": (5, ((0, 1), (0, 2), (0, 3), (3, 4))),
    "E": (6, ((0, 1), (0, 2), (2, 3), (0, 4), (4, 5))),
    "S113": (6, ((0, 1), (0, 2), (0, 3), (3, 4), (4, 5))),
    "S123": (7, ((0, 1), (0, 2), (2, 3), (0, 4), (4, 5), (5, 6))),
    "C5": (5, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0))),
    "P5": (5, ((0, 1), (1, 2), (2, 3), (3, 4))),
    "P6": (6, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5))),
    "K4": (4, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))),
    "C7complement": (
        7,
        tuple(
            (i, j)
            for i in range(7)
            for j in range(i + 1, 7)
            if (j - i) % 7 in (2, 3) or (i - j) % 7 in (2, 3)
        ),
    ),
}


@dataclass(frozen=True)
class K4Witness:
    vertices: tuple[int, int, int, int]


@dataclass(frozen=True)
class OddWheelWitness:
    hub: int
    rim: tuple[int, ...]


@dataclass(frozen=True)
class NecklaceWitness:
    """Diamond necklace: hubs h0..hk, pair i between hubs i and i+1,
    closed by the edge (hk, h0).  Any graph containing it as a subgraph is
    not 3-colourable: each diamond forces equal hub colours around the
    chain and the closing edge contradicts that."""

    hubs: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    closing_edge: tuple[int, int]


@dataclass(frozen=True)
class PatternWitness:
    pattern: str
    vertices: tuple[int, ...]


Witness = Union[K4Witness, OddWheelWitness, NecklaceWitness, PatternWitness]


@dataclass(frozen=True)
class Certificate:
    decision: str
    mode: str
    payload: Union[Colouring, Witness]
    provenance: str = ""


# -- verification -----------------------------------------------------------


def verify(g: Graph, cert: Certificate) -> bool:
    ok, _ = verify_explain(g, cert)
    return ok


def verify_explain(g: Graph, cert: Certificate) -> tuple[bool, str]:
    """Check a certificate against g; on failure say what broke."""
    try:
        if cert.decision == DECISION_3COL:
            return _check_colouring(g, cert.payload)
        if cert.decision == DECISION_NOT3COL:
            payload = cert.payload
            if isinstance(payload, K4Witness):
                return _check_k4(g, payload)
            if isinstance(payload, OddWheelWitness):
                return _check_odd_wheel(g, payload)
            if isinstance(payload, NecklaceWitness):
                return _check_necklace(g, payload)
            return False, f"payload {type(payload).__name__} does not prove the decision"
        if cert.decision == DECISION_NOT_IN_CLASS:
            if isinstance(cert.payload, PatternWitness):
                return _check_pattern(g, cert.payload)
            return False, "not_in_class payload must be a forbidden pattern"
        return False, f"unknown decision {cert.decision!r}"
    except (InputError, TypeError, KeyError, AttributeError) as exc:
        return False, f"malformed certificate: {exc}"


def _check_colouring(g: Graph, colouring) -> tuple[bool, str]:
    if not isinstance(colouring, dict):
        return False, "colouring payload must map vertex -> colour"
    for v in g.vertices():
        if v not in colouring:
            return False, f"vertex {v} uncoloured"
        if colouring[v] not in (0, 1, 2):
            return False, f"vertex {v} has colour {colouring[v]!r} outside 0..2"
    if len(colouring) != g.n:
        return False, "colouring names vertices outside the graph"
    for u, v in g.edges():
        if colouring[u] == colouring[v]:
            return False, f"edge ({u}, {v}) is monochromatic ({COLOUR_NAMES[colouring[u]]})"
    return True, "proper 3-colouring"


def _check_vertices(g: Graph, vs) -> str | None:
    seen = set()
    for v in vs:
        if not isinstance(v, int) or not 0 <= v < g.n:
            return f"vertex {v!r} out of range"
        if v in seen:
            return f"vertex {v} repeated"
        seen.add(v)
    return None


def _check_k4(g: Graph, w: K4Witness) -> tuple[bool, str]:
    if len(w.vertices) != 4:
        return False, "K4 witness needs exactly 4 vertices"
    bad = _check_vertices(g, w.vertices)
    if bad:
        return False, bad
    for i in range(4):
        for j in range(i + 1, 4):
            if not g.adjacent(w.vertices[i], w.vertices[j]):
                return False, f"missing edge ({w.vertices[i]}, {w.vertices[j]})"
    return True, "K4"


def _check_odd_wheel(g: Graph, w: OddWheelWitness) -> tuple[bool, str]:
    rim = w.rim
    if len(rim) < 3 or len(rim) % 2 == 0:
        return False, f"rim length {len(rim)} is not odd >= 3"
    bad = _check_vertices(g, rim + (w.hub,))
    if bad:
        return False, bad
    for v in rim:
        if not g.adjacent(w.hub, v):
            return False, f"hub {w.hub} not adjacent to rim vertex {v}"
    k = len(rim)
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = j - i == 1 or (i == 0 and j == k - 1)
            if consecutive != g.adjacent(rim[i], rim[j]):
                kind = "missing rim edge" if consecutive else "chord"
                return False, f"{kind} ({rim[i]}, {rim[j]})"
    return True, f"odd wheel W{k}"


def _check_necklace(g: Graph, w: NecklaceWitness) -> tuple[bool, str]:
    hubs, pairs = w.hubs, w.pairs
    if len(hubs) < 2 or len(pairs) != len(hubs) - 1:
        return False, "necklace needs k+1 hubs and k pairs with k >= 1"
    flat = list(hubs) + [v for p in pairs for v in p]
    bad = _check_vertices(g, flat)
    if bad:
        return False, bad
    if tuple(w.closing_edge) != (hubs[-1], hubs[0]):
        return False, "closing edge must join the last hub to the first"
    if not g.adjacent(hubs[-1], hubs[0]):
        return False, f"missing closing edge ({hubs[-1]}, {hubs[0]})"
    for i, (a, b) in enumerate(pairs):
        for x, y in ((hubs[i], a), (hubs[i], b), (a, b), (a, hubs[i + 1]), (b, hubs[i + 1])):
            if not g.adjacent(x, y):
                return False, f"missing diamond edge ({x}, {y}) at position {i}"
    return True, f"spindle necklace with {len(pairs)} diamonds"


def _check_pattern(g: Graph, w: PatternWitness) -> tuple[bool, str]:
    if w.pattern not in PATTERN_EDGES:
        return False, f"unknown pattern {w.pattern!r}"
    k, template_edges = PATTERN_EDGES[w.pattern]
    if len(w.vertices) != k:
        return False, f"pattern {w.pattern} needs {k} vertices"
    bad = _check_vertices(g, w.vertices)
    if bad:
        return False, bad
    template = {frozenset(e) for e in template_edges}
    # Accept any assignment of the listed vertices to the template roles.
    for perm in permutations(w.vertices):
        if all(
            (frozenset((i, j)) in template) == g.adjacent(perm[i], perm[j])
            for i in range(k)
            for j in range(i + 1, k)
        ):
            return True, f"induced {w.pattern}"
    return False, f"vertices do not induce {w.pattern}"


# -- JSON serialisation ------------------------------------------------------


def certificate_to_json(cert: Certificate) -> str:
    payload = cert.payload
    if isinstance(payload, dict):
        body = {"kind": "colouring", "colours": {str(v): c for v, c in sorted(payload.items())}}
    elif isinstance(payload, K4Witness):
        body = {"kind": "k4", "vertices": list(payload.vertices)}
    elif isinstance(payload, OddWheelWitness):
        body = {"kind": "odd_wheel", "hub": payload.hub, "rim": list(payload.rim)}
    elif isinstance(payload, NecklaceWitness):
        body = {
            "kind": "spindle_necklace",
            "hubs": list(payload.hubs),
            "pairs": [list(p) for p in payload.pairs],
            "closing_edge": list(payload.closing_edge),
        }
    elif isinstance(payload, PatternWitness):
        body = {"kind": "forbidden_pattern", "pattern": payload.pattern, "vertices": list(payload.vertices)}
    else:
        raise InputError(f"unserialisable payload {type(payload).__name__}")
    doc = {
        "decision": cert.decision,
        "class": cert.mode,
        "payload": body,
        "provenance": cert.provenance,
    }
    return json.dumps(doc, indent=2) + "\n"


def certificate_from_json(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"certificate is not valid JSON: {exc}")
    if not isinstance(doc, dict):
        raise InputError("certificate document must be a JSON object")
    try:
        body = doc["payload"]
        kind = body["kind"]
        if kind == "colouring":
            payload: Union[Colouring, Witness] = {
                int(v): int(c) for v, c in body["colours"].items()
            }
        elif kind == "k4":
            payload = K4Witness(tuple(int(v) for v in body["vertices"]))
        elif kind == "odd_wheel":
            payload = OddWheelWitness(int(body["hub"]), tuple(int(v) for v in body["rim"]))
        elif kind == "spindle_necklace":
            payload = NecklaceWitness(
                tuple(int(v) for v in body["hubs"]),
                tuple((int(a), int(b)) for a, b in body["pairs"]),
                tuple(int(v) for v in body["closing_edge"]),
            )
        elif kind == "forbidden_pattern":
            payload = PatternWitness(str(body["pattern"]), tuple(int(v) for v in body["vertices"]))
        else:
            raise InputError(f"unknown payload kind {kind!r}")
        return Certificate(
            decision=str(doc["decision"]),
            mode=str(doc.get("class", "")),
            payload=payload,
            provenance=str(doc.get("provenance", "")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InputError):
            raise
        raise InputError(f"malformed certificate document: {exc}")

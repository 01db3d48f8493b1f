"""Planar diagram codes of knots and links.

A diagram is given by its PD code: one quadruple of edge labels per
crossing, read counterclockwise starting at the incoming under-edge, so
the over-strand occupies positions 2 and 4.  Edges merge into arcs along
the over-strand, and each crossing contributes the relation
(under-arc, next under-arc, over-arc) that drives the coloring system.

The crossing-free unknot cannot be written as a PD code; it is admitted
through the special token "unknot" and carries a single arc.
"""

from __future__ import annotations

import json
import random
from collections import deque
from dataclasses import dataclass

UNKNOT_TOKEN = "unknot"

R1_INSERT = "R1_insert"
R1_DELETE = "R1_delete"
R2_INSERT = "R2_insert"
R2_DELETE = "R2_delete"
R3 = "R3"
MOVE_KINDS = (R1_INSERT, R1_DELETE, R2_INSERT, R2_DELETE, R3)

_UNDER_SLOTS = (0, 2)
_OVER_SLOTS = (1, 3)


class PdError(ValueError):
    """Malformed or inconsistent PD code."""


class MoveError(ValueError):
    """A Reidemeister move site that does not apply to the diagram."""


@dataclass(frozen=True)
class PdCode:
    """Validated PD code; labels are 1..E with every label used exactly twice."""

    crossings: tuple[tuple[int, int, int, int], ...]

    def __post_init__(self):
        counts: dict[int, int] = {}
        for q in self.crossings:
            if len(q) != 4:
                raise PdError(f"crossing {q!r} is not a quadruple")
            for e in q:
                if not isinstance(e, int) or e < 1:
                    raise PdError(f"edge label {e!r} is not a positive integer")
                counts[e] = counts.get(e, 0) + 1
        bad = sorted(e for e, n in counts.items() if n != 2)
        if bad:
            raise PdError(f"edge labels must occur exactly twice, offending labels: {bad}")
        if counts and sorted(counts) != list(range(1, len(counts) + 1)):
            raise PdError("edge labels must form 1..E with no gaps")

    @property
    def n_crossings(self) -> int:
        return len(self.crossings)

    @property
    def n_edges(self) -> int:
        return 2 * len(self.crossings)

    def edges(self) -> range:
        return range(1, self.n_edges + 1)

    def to_json_dict(self) -> dict:
        return {"crossings": [list(q) for q in self.crossings]}

    def __str__(self) -> str:
        if not self.crossings:
            return UNKNOT_TOKEN
        return "[" + ",".join("[" + ",".join(map(str, q)) + "]" for q in self.crossings) + "]"


def parse_pd(text: str) -> PdCode:
    """Parse a PD code like "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]" or the token "unknot".

    Labels are normalized to 1..E preserving their relative order.
    """
    stripped = text.strip()
    if stripped == UNKNOT_TOKEN:
        return PdCode(())
    try:
        raw = json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise PdError(f"malformed PD code: {exc}") from None
    if not isinstance(raw, list) or not raw:
        raise PdError("PD code must be a non-empty list of quadruples (or the token 'unknot')")
    quads = []
    for item in raw:
        if not isinstance(item, list) or len(item) != 4 or not all(isinstance(e, int) for e in item):
            raise PdError(f"crossing {item!r} is not a quadruple of integers")
        quads.append(tuple(item))
    labels = sorted({e for q in quads for e in q})
    relabel = {old: new for new, old in enumerate(labels, start=1)}
    return PdCode(tuple(tuple(relabel[e] for e in q) for q in quads))


@dataclass(frozen=True)
class PlanarDiagram:
    """A PD code with its arcs and per-crossing relations.

    arcs is the partition of edge labels into over-strand classes, ordered
    by smallest member; crossing_relations holds, per crossing, the triple
    of arc indices (under-arc in, under-arc out, over-arc).
    """

    pd: PdCode
    arcs: tuple[frozenset[int], ...]
    crossing_relations: tuple[tuple[int, int, int], ...]

    @property
    def n_arcs(self) -> int:
        return len(self.arcs)

    @property
    def n_crossings(self) -> int:
        return self.pd.n_crossings

    def arc_of(self, edge: int) -> int:
        for i, arc in enumerate(self.arcs):
            if edge in arc:
                return i
        raise KeyError(f"edge {edge} not in diagram")

    def arc_labels(self) -> tuple[str, ...]:
        """Human-readable arc names: the sorted edge members of each class."""
        return tuple("{" + ",".join(map(str, sorted(a))) + "}" if a else "{}" for a in self.arcs)


def build_diagram(pd: PdCode) -> PlanarDiagram:
    """Merge edges into arcs (union along each over-strand) and read off relations."""
    if not pd.crossings:
        return PlanarDiagram(pd, (frozenset(),), ())
    parent = {e: e for e in pd.edges()}

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for _, b, _, d in pd.crossings:
        rb, rd = find(b), find(d)
        if rb != rd:
            parent[max(rb, rd)] = min(rb, rd)

    classes: dict[int, set[int]] = {}
    for e in pd.edges():
        classes.setdefault(find(e), set()).add(e)
    arcs = tuple(frozenset(classes[root]) for root in sorted(classes))
    index = {e: i for i, arc in enumerate(arcs) for e in arc}
    relations = tuple((index[a], index[c], index[b]) for a, b, c, d in pd.crossings)
    return PlanarDiagram(pd, arcs, relations)


@dataclass(frozen=True)
class MoveSite:
    """Where and how to apply a Reidemeister move.

    kind        one of R1_insert, R1_delete, R2_insert, R2_delete, R3
    edges       the edge labels the move anchors to:
                  R1_insert: (edge,), kink added on that edge
                  R1_delete: (loop_edge,)
                  R2_insert: (over_edge, under_edge)
                  R2_delete: (over_middle_edge,)
                  R3:        (middle_edge,)  -- the edge crossing two others on the same side
    over        for R1_insert, whether the strand passes over itself at the kink
    """

    kind: str
    edges: tuple[int, ...] = ()
    over: bool = False

    def __post_init__(self):
        if self.kind not in MOVE_KINDS:
            raise MoveError(f"unknown move kind {self.kind!r}")


def apply_move(d: PlanarDiagram, site: MoveSite) -> PlanarDiagram:
    """Apply a Reidemeister move, returning a new diagram with edges renumbered 1..E'."""
    handlers = {
        R1_INSERT: _r1_insert,
        R1_DELETE: _r1_delete,
        R2_INSERT: _r2_insert,
        R2_DELETE: _r2_delete,
        R3: _r3,
    }
    quads = handlers[site.kind](d, site)
    return build_diagram(PdCode(_renumber(quads)))


def _occurrences(quads, edge):
    return [(ci, slot) for ci, q in enumerate(quads) for slot in range(4) if q[slot] == edge]


def _require_edge(d: PlanarDiagram, edge: int):
    if edge not in d.pd.edges():
        raise MoveError(f"edge {edge} does not exist in the diagram")


def _r1_insert(d: PlanarDiagram, site: MoveSite):
    if not site.edges:
        raise MoveError("R1_insert needs an edge")
    if d.pd.n_crossings == 0:
        # kink the bare unknot; both chiralities give a one-arc diagram
        return [(2, 1, 1, 2)] if site.over else [(1, 2, 2, 1)]
    e = site.edges[0]
    _require_edge(d, e)
    quads = [list(q) for q in d.pd.crossings]
    occ = _occurrences(quads, e)
    ci, slot = occ[1]  # kink sits at the second occurrence; the first keeps label e
    f = d.pd.n_edges + 1
    g = d.pd.n_edges + 2
    quads[ci][slot] = f
    quads.append([g, e, f, g] if site.over else [e, g, g, f])
    return [tuple(q) for q in quads]


def _kink_slots(q, loop_edge):
    """Slots (under, over) where loop_edge closes a kink in quadruple q, or None."""
    for u in _UNDER_SLOTS:
        for o in _OVER_SLOTS:
            if q[u] == q[o] == loop_edge:
                return u, o
    return None


def _r1_delete(d: PlanarDiagram, site: MoveSite):
    if not site.edges:
        raise MoveError("R1_delete needs the loop edge")
    g = site.edges[0]
    _require_edge(d, g)
    quads = [tuple(q) for q in d.pd.crossings]
    for ci, q in enumerate(quads):
        slots = _kink_slots(q, g)
        if slots:
            u_slot, o_slot = slots
            e = q[_UNDER_SLOTS[1 - _UNDER_SLOTS.index(u_slot)]]
            f = q[_OVER_SLOTS[1 - _OVER_SLOTS.index(o_slot)]]
            return _delete_crossings(quads, {ci}, [(e, f)])
    raise MoveError(f"edge {g} is not the loop of a kink")


def _r2_insert(d: PlanarDiagram, site: MoveSite):
    if len(site.edges) != 2:
        raise MoveError("R2_insert needs (over_edge, under_edge)")
    x, y = site.edges
    if x == y:
        raise MoveError("R2_insert needs two distinct edges")
    _require_edge(d, x)
    _require_edge(d, y)
    quads = [list(q) for q in d.pd.crossings]
    n = d.pd.n_edges
    u, v, w, z = n + 1, n + 2, n + 3, n + 4
    xi, xslot = _occurrences(quads, x)[1]
    quads[xi][xslot] = v
    yi, yslot = _occurrences(quads, y)[1]
    quads[yi][yslot] = z
    # strand x passes over strand y twice; u and w are the middle segments
    quads.append([y, x, w, u])
    quads.append([w, u, z, v])
    return [tuple(q) for q in quads]


def _r2_delete(d: PlanarDiagram, site: MoveSite):
    if not site.edges:
        raise MoveError("R2_delete needs the over middle edge")
    u = site.edges[0]
    _require_edge(d, u)
    quads = [tuple(q) for q in d.pd.crossings]
    occ = _occurrences(quads, u)
    if not all(slot in _OVER_SLOTS for _, slot in occ):
        raise MoveError(f"edge {u} is not an over middle edge")
    (ci, _), (cj, _) = occ
    if ci == cj:
        raise MoveError(f"edge {u} loops at a single crossing")
    under_i = {quads[ci][s] for s in _UNDER_SLOTS}
    under_j = {quads[cj][s] for s in _UNDER_SLOTS}
    shared = sorted(w for w in under_i & under_j
                    if all(c in (ci, cj) and s in _UNDER_SLOTS for c, s in _occurrences(quads, w)))
    if not shared:
        raise MoveError(f"no under middle edge pairs with {u}")
    w = shared[0]
    p = next(quads[ci][s] for s in _UNDER_SLOTS if quads[ci][s] != w)
    q_ = next(quads[cj][s] for s in _UNDER_SLOTS if quads[cj][s] != w)
    rr = next(quads[ci][s] for s in _OVER_SLOTS if quads[ci][s] != u)
    ss = next(quads[cj][s] for s in _OVER_SLOTS if quads[cj][s] != u)
    return _delete_crossings(quads, {ci, cj}, [(p, q_), (rr, ss)])


def _delete_crossings(quads, drop: set[int], joins):
    """Remove crossings and reconnect the dangling edge stubs.

    joins lists label pairs that become a single edge.  Pairs can chain
    (a stub label may sit on both a deleted under-slot and a deleted
    over-slot), so classes are closed with a union-find before relabeling.
    """
    parent: dict[int, int] = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in joins:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    kept = [list(q) for ci, q in enumerate(quads) if ci not in drop]
    outside: dict[int, int] = {}
    for q in kept:
        for e in q:
            outside[e] = outside.get(e, 0) + 1

    classes: dict[int, list[int]] = {}
    for e in parent:
        classes.setdefault(find(e), []).append(e)
    vanished = 0
    for members in classes.values():
        live = sum(outside.get(e, 0) for e in members)
        if live == 0:
            vanished += 1
        elif live != 2:
            raise MoveError("move would leave an inconsistent diagram")
    if not kept:
        if vanished == 1:
            return []
        raise MoveError("result is a crossing-free multi-component diagram, not encodable")
    if vanished:
        raise MoveError("move would strip a component of all its crossings, not encodable")
    sub = {e: find(e) for e in parent}
    return [tuple(sub.get(e, e) for e in q) for q in kept]


def _pair_slots(q, kind):
    slots = _UNDER_SLOTS if kind == "under" else _OVER_SLOTS
    return (q[slots[0]], q[slots[1]])


def _r3(d: PlanarDiagram, site: MoveSite):
    """Slide the strand carrying `t` across the crossing of the two strands under (or over) it."""
    if not site.edges:
        raise MoveError("R3 needs the middle edge of the sliding strand")
    t = site.edges[0]
    _require_edge(d, t)
    quads = [tuple(q) for q in d.pd.crossings]
    occ = _occurrences(quads, t)
    (xi, _), (yi, _) = occ
    if xi == yi:
        raise MoveError(f"edge {t} loops at a single crossing")
    if all(s in _OVER_SLOTS for _, s in occ):
        t_side = "over"
    elif all(s in _UNDER_SLOTS for _, s in occ):
        t_side = "under"
    else:
        raise MoveError(f"edge {t} does not cross two strands on the same side")
    other_side = "under" if t_side == "over" else "over"

    x_pair = _pair_slots(quads[xi], other_side)
    y_pair = _pair_slots(quads[yi], other_side)
    for a in x_pair:
        for b in y_pair:
            for zi, zq in enumerate(quads):
                if zi in (xi, yi):
                    continue
                zu = _pair_slots(zq, "under")
                zo = _pair_slots(zq, "over")
                if (a in zu and b in zo) or (a in zo and b in zu):
                    out = _r3_rewrite(quads, xi, yi, zi, t, t_side, a, b)
                    if out is not None:
                        return out
    raise MoveError(f"no completing crossing for an R3 move at edge {t}")


def _r3_rewrite(quads, xi, yi, zi, t, t_side, a_near, b_near):
    """In-place slot rewrite of the triangle crossings, or None if degenerate.

    Along the sliding strand the two corner crossings swap order, so its
    outer edges trade places; on the other two strands the outer edge at
    the corner trades places with the edge beyond the completing crossing.
    Only triangles whose nine local edges are pairwise distinct are
    rewritten; wrap-around coincidences on small diagrams are rejected.
    """
    def other(pair, e):
        return pair[1] if pair[0] == e else pair[0]

    def z_pair_of(e):
        zu = _pair_slots(quads[zi], "under")
        if e in zu:
            return zu
        return _pair_slots(quads[zi], "over")

    other_side = "under" if t_side == "over" else "over"
    t1 = other(_pair_slots(quads[xi], t_side), t)
    t2 = other(_pair_slots(quads[yi], t_side), t)
    a_far = other(_pair_slots(quads[xi], other_side), a_near)
    b_far = other(_pair_slots(quads[yi], other_side), b_near)
    a_post = other(z_pair_of(a_near), a_near)
    b_post = other(z_pair_of(b_near), b_near)

    local = (t, t1, t2, a_near, a_far, a_post, b_near, b_far, b_post)
    if len(set(local)) != len(local):
        return None

    def sub_in(ci, old, new):
        q = list(quads[ci])
        q[q.index(old)] = new
        quads[ci] = tuple(q)

    sub_in(xi, a_far, a_post)
    sub_in(xi, t1, t2)
    sub_in(yi, b_far, b_post)
    sub_in(yi, t2, t1)
    sub_in(zi, a_post, a_far)
    sub_in(zi, b_post, b_far)
    return list(quads)


def _renumber(quads):
    """Canonical relabeling 1..E: breadth-first from the lowest surviving label."""
    if not quads:
        return ()
    labels = sorted({e for q in quads for e in q})
    incident: dict[int, list[int]] = {e: [] for e in labels}
    for ci, q in enumerate(quads):
        for e in set(q):
            incident[e].append(ci)
    mapping: dict[int, int] = {}
    queue: deque[int] = deque()
    for start in labels:
        if start in mapping:
            continue
        mapping[start] = len(mapping) + 1
        queue.append(start)
        while queue:
            cur = queue.popleft()
            neighbors = sorted({e for ci in incident[cur] for e in quads[ci]})
            for e in neighbors:
                if e not in mapping:
                    mapping[e] = len(mapping) + 1
                    queue.append(e)
    return tuple(tuple(mapping[e] for e in q) for q in quads)


def random_move_site(d: PlanarDiagram, rng: random.Random) -> MoveSite:
    """A random R1 or R2 insertion site; insertions apply to any diagram."""
    edges = list(d.pd.edges())
    if len(edges) < 2:
        return MoveSite(R1_INSERT, (1,), over=rng.random() < 0.5)
    if rng.random() < 0.5:
        return MoveSite(R1_INSERT, (rng.choice(edges),), over=rng.random() < 0.5)
    x, y = rng.sample(edges, 2)
    return MoveSite(R2_INSERT, (x, y))


def random_variants(d: PlanarDiagram, count: int, moves_per_variant: int = 3,
                    seed: int = 0) -> list[PlanarDiagram]:
    """Seeded R1/R2-derived variants of a diagram (same link type)."""
    rng = random.Random(seed)
    variants = []
    for _ in range(count):
        cur = d
        for _ in range(moves_per_variant):
            cur = apply_move(cur, random_move_site(cur, rng))
        variants.append(cur)
    return variants


# Embedded PD codes.  The torus knots 3_1, 5_1, 7_1 follow the standard
# (2,n) pattern; 9_40 is the closure of the 4-strand braid (s1 s2^-1 s3)^3,
# checked by its determinant and mod-5 class structure.
_CATALOG: dict[str, str] = {
    "unknot": UNKNOT_TOKEN,
    "3_1": "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]",
    "4_1": "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]",
    "5_1": "[[1,6,2,7],[3,8,4,9],[5,10,6,1],[7,2,8,3],[9,4,10,5]]",
    "5_2": "[[1,4,2,5],[3,8,4,9],[5,10,6,1],[9,6,10,7],[7,2,8,3]]",
    "6_1": "[[1,4,2,5],[7,10,8,11],[3,9,4,8],[9,3,10,2],[5,12,6,1],[11,6,12,7]]",
    "6_2": "[[1,4,2,5],[5,10,6,11],[3,9,4,8],[9,3,10,2],[7,12,8,1],[11,6,12,7]]",
    "6_3": "[[4,2,5,1],[8,4,9,3],[12,9,1,10],[10,5,11,6],[6,11,7,12],[2,8,3,7]]",
    "7_1": "[[1,8,2,9],[3,10,4,11],[5,12,6,13],[7,14,8,1],[9,2,10,3],[11,4,12,5],[13,6,14,7]]",
    "9_40": ("[[2,5,6,1],[5,3,7,8],[4,9,10,7],[8,11,12,6],[11,10,13,14],"
             "[9,15,16,13],[14,17,1,12],[17,16,18,2],[15,4,3,18]]"),
}


def catalog_names() -> tuple[str, ...]:
    return tuple(_CATALOG)


def catalog(name: str) -> PdCode:
    """PD code of an embedded knot table entry."""
    try:
        text = _CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog name {name!r}; known: {', '.join(_CATALOG)}") from None
    return parse_pd(text)

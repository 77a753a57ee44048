"""Pair-graph analysis of 1-block codes.

The pair graph synchronizes the (determinized) domain presentation with
itself: vertices are ordered vertex pairs, and an edge pairs two domain
edges with equal image symbol.  An edge is typed EQ when the two domain
labels agree and NEQ otherwise; distinctness of points is label-sequence
distinctness, so every decision below works at the label level.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Optional

from .presentation import (
    Edge,
    LabeledPresentation,
    ShiftSpace,
    strongly_connected_components,
    trim_essential,
)
from .language import determinize
from .points import Point


@dataclass(frozen=True)
class PairEdge:
    src: tuple
    dst: tuple
    first: Edge
    second: Edge
    eq: bool


@dataclass(frozen=True)
class PairGraph:
    vertices: tuple
    edges: tuple
    forward_live: frozenset
    backward_live: frozenset

    @property
    def live(self) -> frozenset:
        return self.forward_live & self.backward_live

    @cached_property
    def _out(self) -> dict:
        m = {}
        for e in self.edges:
            m.setdefault(e.src, []).append(e)
        return m

    @cached_property
    def _in(self) -> dict:
        m = {}
        for e in self.edges:
            m.setdefault(e.dst, []).append(e)
        return m

    def out_edges(self, v):
        return tuple(self._out.get(v, ()))

    def in_edges(self, v):
        return tuple(self._in.get(v, ()))


def _one_block_pres(c) -> LabeledPresentation:
    """Determinized presentation of the 1-block code's domain."""
    if not c.is_one_block:
        raise ValueError("pair analysis requires a 1-block code")
    return determinize(c.domain.presentation)


@lru_cache(maxsize=None)
def _pair_graph_cached(domain_pres: LabeledPresentation, table: tuple) -> PairGraph:
    mapping = dict(table)
    p = domain_pres
    vertices = tuple((u, v) for u in p.vertices for v in p.vertices)
    edges = []
    for d in p.edges:
        for e in p.edges:
            if mapping[(d.label,)] != mapping[(e.label,)]:
                continue
            edges.append(
                PairEdge((d.src, e.src), (d.dst, e.dst), d, e, d.label == e.label)
            )
    out = {}
    inn = {}
    for e in edges:
        out.setdefault(e.src, []).append(e)
        inn.setdefault(e.dst, []).append(e)
    forward = _prune(vertices, out, lambda e: e.dst)
    backward = _prune(vertices, inn, lambda e: e.src)
    return PairGraph(vertices, tuple(edges), forward, backward)


def _prune(vertices, adj, step):
    """Vertices admitting an infinite path in the given direction."""
    alive = set(v for v in vertices if adj.get(v))
    changed = True
    while changed:
        changed = False
        for v in list(alive):
            if not any(step(e) in alive for e in adj.get(v, ())):
                alive.discard(v)
                changed = True
    return frozenset(alive)


def pair_graph(c) -> PairGraph:
    return _pair_graph_cached(_one_block_pres(c), c.table)


@dataclass(frozen=True)
class Verdict:
    value: bool
    route: str = ""
    witness: object = None
    exact: bool = True

    def __bool__(self):
        return self.value


def _scc_index(pg: PairGraph) -> dict:
    helper = LabeledPresentation.build(
        pg.vertices,
        [((i,), e.src, e.dst, None) for i, e in enumerate(pg.edges)],
    )
    comp_of = {}
    for idx, verts in enumerate(strongly_connected_components(helper)):
        for v in verts:
            comp_of[v] = idx
    return comp_of


def has_pumpable_diamond(pg: PairGraph) -> Optional[PairEdge]:
    """An NEQ edge on a cycle through a diagonal vertex, if any.

    Mixing the two coordinate loops of such a cycle produces uncountably
    many preimage label sequences of one periodic image point.
    """
    comp_of = _scc_index(pg)
    diag_comps = {comp_of[v] for v in pg.vertices if v[0] == v[1]}
    for e in pg.edges:
        if e.eq:
            continue
        if comp_of[e.src] == comp_of[e.dst] and comp_of[e.src] in diag_comps:
            return e
    return None


def is_right_resolving(c) -> bool:
    """Equal first symbol and equal image force equal second symbol,
    over the allowed 2-words of the domain."""
    from .presentation import blocks

    seen = {}
    for w in blocks(c.domain, 2):
        key = (w[0], c.mapping[(w[1],)])
        if key in seen and seen[key] != w[1]:
            return False
        seen[key] = w[1]
    return True


def is_left_resolving(c) -> bool:
    from .presentation import blocks

    seen = {}
    for w in blocks(c.domain, 2):
        key = (w[1], c.mapping[(w[0],)])
        if key in seen and seen[key] != w[0]:
            return False
        seen[key] = w[0]
    return True


def is_bi_resolving(c) -> bool:
    return is_right_resolving(c) and is_left_resolving(c)


def _eq_backward_live(pg: PairGraph) -> frozenset:
    """Vertices with a left-infinite all-EQ pair path into them."""
    inn = {}
    for e in pg.edges:
        if e.eq:
            inn.setdefault(e.dst, []).append(e)
    return _prune(pg.vertices, inn, lambda e: e.src)


@lru_cache(maxsize=None)
def is_right_closing(c) -> Verdict:
    """Right closing: never collapses two distinct left asymptotic points.

    Exact criterion: not right closing iff some NEQ pair edge has an
    all-EQ left-infinite history and a live future.  On a yes the witness
    is the delay; on a no it is a collapsed eventually periodic pair.
    """
    pg = pair_graph(c)
    eq_bwd = _eq_backward_live(pg)
    for e in pg.edges:
        if e.eq:
            continue
        if e.src in eq_bwd and e.dst in pg.forward_live:
            return Verdict(False, "pair-graph", _closing_witness(pg, e, eq_bwd))
    return Verdict(True, "pair-graph", _right_delay(pg))


def _reversed_code(c):
    from .codes import BlockCode

    dom = ShiftSpace(trim_essential(c.domain.presentation.reverse()), c.domain.kind)
    cod = ShiftSpace(trim_essential(c.codomain.presentation.reverse()), c.codomain.kind)
    return BlockCode(dom, cod, c.anticipation, c.memory, c.table)


@lru_cache(maxsize=None)
def is_left_closing(c) -> Verdict:
    """Right closing of the edge-reversed code."""
    v = is_right_closing(_reversed_code(c))
    witness = v.witness
    if not v.value and isinstance(witness, tuple):
        witness = tuple(_reverse_point(p) for p in witness)
    return Verdict(v.value, v.route + "-reversed", witness, v.exact)


def _reverse_point(p: Point) -> Point:
    rev = lambda w: tuple(reversed(w))
    stop = p.offset + len(p.center)
    return Point(rev(p.right), rev(p.center), rev(p.left), 1 - stop)


def is_bi_closing(c) -> Verdict:
    r = is_right_closing(c)
    l = is_left_closing(c)
    if r.value and l.value:
        return Verdict(True, "pair-graph", (r.witness, l.witness))
    bad = r if not r.value else l
    return Verdict(False, bad.route, bad.witness)


def _backward_lasso(adj_in: dict, target):
    """Walk backward from `target` until a vertex repeats.

    Returns (cycle_edges, tail_edges) in forward order, the tail ending
    at `target`; None when the walk gets stuck.
    """
    walk = []
    pos = {target: 0}
    v = target
    while True:
        es = adj_in.get(v)
        if not es:
            return None
        e = es[0]
        walk.append(e)
        v = e.src
        if v in pos:
            j = pos[v]
            cycle = tuple(reversed(walk[j:]))
            tail = tuple(reversed(walk[:j]))
            return cycle, tail
        pos[v] = len(walk)


def _forward_lasso(adj_out: dict, start):
    """Walk forward from `start` until a vertex repeats.

    Returns (tail_edges, cycle_edges) in forward order.
    """
    walk = []
    pos = {start: 0}
    v = start
    while True:
        es = adj_out.get(v)
        if not es:
            return None
        e = es[0]
        walk.append(e)
        v = e.dst
        if v in pos:
            j = pos[v]
            return tuple(walk[:j]), tuple(walk[j:])
        pos[v] = len(walk)


def _closing_witness(pg: PairGraph, neq: PairEdge, eq_bwd: frozenset):
    """Two collapsed left-asymptotic points, as eventually periodic data."""
    eq_in = {}
    for e in pg.edges:
        if e.eq and e.src in eq_bwd and e.dst in eq_bwd:
            eq_in.setdefault(e.dst, []).append(e)
    live_out = {}
    for e in pg.edges:
        if e.src in pg.forward_live and e.dst in pg.forward_live:
            live_out.setdefault(e.src, []).append(e)
    left = _backward_lasso(eq_in, neq.src)
    right = _forward_lasso(live_out, neq.dst)
    if left is None or right is None:
        return None
    cycle_l, tail_l = left
    tail_r, cycle_r = right
    lw = tuple(e.first.label for e in cycle_l)  # EQ: both coordinates agree
    head = tuple(e.first.label for e in tail_l)
    t1 = tuple(e.first.label for e in tail_r)
    t2 = tuple(e.second.label for e in tail_r)
    r1 = tuple(e.first.label for e in cycle_r)
    r2 = tuple(e.second.label for e in cycle_r)
    x1 = Point(lw, head + (neq.first.label,) + t1, r1, -len(head))
    x2 = Point(lw, head + (neq.second.label,) + t2, r2, -len(head))
    return (x1, x2)


class _EqCycle(Exception):
    pass


def _right_delay(pg: PairGraph):
    """Longest backward-live EQ run feeding a live NEQ divergence.

    Returns 0 when no NEQ edge can be preceded by any EQ edge; None when
    an EQ cycle feeds one, which contradicts right closing.
    """
    neq_sources = {
        e.src
        for e in pg.edges
        if not e.eq and e.src in pg.backward_live and e.dst in pg.forward_live
    }
    if not neq_sources:
        return 0
    eq_edges = [
        e
        for e in pg.edges
        if e.eq and e.src in pg.backward_live and e.dst in pg.backward_live
    ]
    # restrict to vertices from which a live NEQ source is EQ-reachable
    reach = set(neq_sources)
    changed = True
    while changed:
        changed = False
        for e in eq_edges:
            if e.dst in reach and e.src not in reach:
                reach.add(e.src)
                changed = True
    out = {}
    for e in eq_edges:
        if e.src in reach and e.dst in reach:
            out.setdefault(e.src, []).append(e)

    memo = {}
    ACTIVE = object()

    def longest(v):
        if v in memo:
            if memo[v] is ACTIVE:
                raise _EqCycle()
            return memo[v]
        memo[v] = ACTIVE
        best = 0 if v in neq_sources else None
        for e in out.get(v, ()):
            sub = longest(e.dst)
            if sub is not None and (best is None or sub + 1 > best):
                best = sub + 1
        memo[v] = best
        return best

    try:
        vals = [longest(v) for v in reach]
    except _EqCycle:
        return None
    vals = [v for v in vals if v is not None]
    return max(vals) if vals else 0


@dataclass(frozen=True)
class SeparationData:
    """Uniform separation of distinct preimages of one point.

    Any two distinct preimages of a point differ somewhere in the window
    ``[-N, N]``; epsilon is ``2**-N``.
    """

    n1: int
    n2: int

    @property
    def n(self) -> int:
        return max(self.n1, self.n2)

    @property
    def epsilon(self) -> float:
        return 2.0 ** (-self.n)


def separation_data(c) -> SeparationData:
    """Delay data for a bi-closing code; raises if not bi-closing."""
    r = is_right_closing(c)
    l = is_left_closing(c)
    if not (r.value and l.value) or r.witness is None or l.witness is None:
        raise ValueError("not bi-closing")
    return SeparationData(r.witness, l.witness)


def is_one_to_one(c) -> Verdict:
    """Injective iff no bi-live NEQ pair edge exists."""
    pg = pair_graph(c)
    for e in pg.edges:
        if not e.eq and e.src in pg.backward_live and e.dst in pg.forward_live:
            return Verdict(False, "pair-graph", e)
    return Verdict(True, "pair-graph")

"""Labeled-graph presentations of shift spaces.

A shift space is represented by a finite directed multigraph whose edges
carry symbol labels.  Bi-infinite paths through the graph, read off by
their labels, are the points of the space.  An *edge shift* is the special
case where every edge is labeled by its own identity, so points are the
edge paths themselves.

All values in this module are immutable; operations return new objects.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Optional

Word = tuple  # finite sequence of symbols; symbols are arbitrary hashable ids


def word(*symbols) -> Word:
    return tuple(symbols)


@dataclass(frozen=True, order=True)
class Edge:
    """A labeled edge.  `eid` is unique within a presentation."""

    eid: object
    src: object
    dst: object
    label: object


class EmptyShiftError(ValueError):
    """Raised when an operation requires a nonempty shift space."""


@dataclass(frozen=True)
class LabeledPresentation:
    """A finite directed multigraph with edge labels.

    Parameters
    ----------
    vertices : tuple
        Vertex ids, in declaration order.
    edges : tuple of Edge
        Edges, in declaration order.  Endpoints must be declared vertices
        and edge ids must be unique.
    """

    vertices: tuple
    edges: tuple

    def __post_init__(self):
        vset = set(self.vertices)
        if len(vset) != len(self.vertices):
            raise ValueError("duplicate vertex ids")
        seen = set()
        for e in self.edges:
            if e.eid in seen:
                raise ValueError(f"duplicate edge id {e.eid!r}")
            seen.add(e.eid)
            if e.src not in vset or e.dst not in vset:
                raise ValueError(f"edge {e.eid!r} has undeclared endpoint")

    @staticmethod
    def build(vertices: Iterable, edges: Iterable[tuple]) -> "LabeledPresentation":
        """Build from an iterable of (eid, src, dst, label) tuples."""
        return LabeledPresentation(tuple(vertices), tuple(Edge(*t) for t in edges))

    @staticmethod
    def empty() -> "LabeledPresentation":
        return LabeledPresentation((), ())

    @cached_property
    def alphabet(self) -> tuple:
        """Labels in first-seen edge order; the canonical symbol order."""
        out = []
        seen = set()
        for e in self.edges:
            if e.label not in seen:
                seen.add(e.label)
                out.append(e.label)
        return tuple(out)

    @cached_property
    def _out(self) -> dict:
        m = {v: [] for v in self.vertices}
        for e in self.edges:
            m[e.src].append(e)
        return m

    @cached_property
    def _in(self) -> dict:
        m = {v: [] for v in self.vertices}
        for e in self.edges:
            m[e.dst].append(e)
        return m

    def out_edges(self, v) -> tuple:
        return tuple(self._out[v])

    def in_edges(self, v) -> tuple:
        return tuple(self._in[v])

    @property
    def is_empty(self) -> bool:
        return not self.edges

    def is_deterministic(self) -> bool:
        """True iff out-edges at each vertex carry pairwise distinct labels."""
        for v in self.vertices:
            labels = [e.label for e in self._out[v]]
            if len(labels) != len(set(labels)):
                return False
        return True

    def is_essential(self) -> bool:
        return all(self._out[v] and self._in[v] for v in self.vertices)

    def subgraph(self, vertices=None, edges=None) -> "LabeledPresentation":
        """Restrict to the given vertices and/or edges (keeping order)."""
        vs = set(self.vertices if vertices is None else vertices)
        es = None if edges is None else {e.eid for e in edges}
        new_edges = tuple(
            e
            for e in self.edges
            if e.src in vs and e.dst in vs and (es is None or e.eid in es)
        )
        return LabeledPresentation(tuple(v for v in self.vertices if v in vs), new_edges)

    def reverse(self) -> "LabeledPresentation":
        """Edge-reversed presentation (labels kept)."""
        return LabeledPresentation(
            self.vertices, tuple(Edge(e.eid, e.dst, e.src, e.label) for e in self.edges)
        )

    def relabel(self, fn) -> "LabeledPresentation":
        """Apply `fn` to every edge label."""
        return LabeledPresentation(
            self.vertices,
            tuple(Edge(e.eid, e.src, e.dst, fn(e.label)) for e in self.edges),
        )


EDGE = "edge"
LABELED = "labeled"


@dataclass(frozen=True)
class ShiftSpace:
    """A shift space given by a presentation.

    `kind` is ``"edge"`` when the alphabet is the edge ids themselves
    (every edge labeled by its id) and ``"labeled"`` otherwise.
    """

    presentation: LabeledPresentation
    kind: str = LABELED

    def __post_init__(self):
        if self.kind not in (EDGE, LABELED):
            raise ValueError(f"bad kind {self.kind!r}")
        if self.kind == EDGE:
            for e in self.presentation.edges:
                if e.label != e.eid:
                    raise ValueError("edge shift requires label == edge id")

    @staticmethod
    def edge_shift(pres: LabeledPresentation) -> "ShiftSpace":
        """Edge shift of the underlying graph; labels are forced to edge ids."""
        fixed = LabeledPresentation(
            pres.vertices, tuple(Edge(e.eid, e.src, e.dst, e.eid) for e in pres.edges)
        )
        return ShiftSpace(trim_essential(fixed), EDGE)

    @staticmethod
    def labeled(pres: LabeledPresentation) -> "ShiftSpace":
        return ShiftSpace(trim_essential(pres), LABELED)

    @property
    def alphabet(self) -> tuple:
        return self.presentation.alphabet

    @property
    def is_empty(self) -> bool:
        return self.presentation.is_empty

    def require_nonempty(self):
        if self.is_empty:
            raise EmptyShiftError("empty shift space")


def trim_essential(p: LabeledPresentation) -> LabeledPresentation:
    """Maximal subgraph in which every vertex has in- and out-degree >= 1.

    Idempotent, and preserves the presented language: removed vertices lie
    on no bi-infinite path.  Returns the empty presentation when no
    bi-infinite path exists.
    """
    alive = set(p.vertices)
    out_deg = {v: len(p._out[v]) for v in p.vertices}
    in_deg = {v: len(p._in[v]) for v in p.vertices}
    queue = [v for v in p.vertices if out_deg[v] == 0 or in_deg[v] == 0]
    while queue:
        v = queue.pop()
        if v not in alive:
            continue
        alive.discard(v)
        for e in p._in[v]:
            if e.src in alive:
                out_deg[e.src] -= 1
                if out_deg[e.src] == 0:
                    queue.append(e.src)
        for e in p._out[v]:
            if e.dst in alive:
                in_deg[e.dst] -= 1
                if in_deg[e.dst] == 0:
                    queue.append(e.dst)
    if len(alive) == len(p.vertices):
        return p
    return p.subgraph(vertices=alive)


def strongly_connected_components(p: LabeledPresentation) -> list:
    """SCCs of the underlying digraph, as lists of vertices.

    Iterative Tarjan; components come out in reverse topological order.
    """
    index = {}
    low = {}
    on_stack = set()
    stack = []
    result = []
    counter = itertools.count()
    succ = {v: [e.dst for e in p._out[v]] for v in p.vertices}

    for root in p.vertices:
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = next(counter)
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = next(counter)
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                result.append(comp)
    return result


@dataclass(frozen=True)
class ComponentDecomposition:
    """Irreducible components of a presentation with sink/source flags."""

    components: tuple  # LabeledPresentation per component, each essential
    is_sink: tuple  # no outgoing transition edge in the ambient graph
    is_source: tuple
    nonwandering_part: LabeledPresentation

    def classification(self, i: int) -> str:
        sink, source = self.is_sink[i], self.is_source[i]
        if sink and source:
            return "isolated"
        if sink:
            return "sink"
        if source:
            return "source"
        return "interior"


def component_decomposition(x: ShiftSpace) -> ComponentDecomposition:
    """Strongly connected components with at least one edge, each trimmed.

    The nonwandering part is the union of the components; transition edges
    between components are excluded.
    """
    p = x.presentation
    comps = []
    comp_of = {}
    for verts in strongly_connected_components(p):
        vset = set(verts)
        sub = p.subgraph(vertices=vset)
        sub = sub.subgraph(edges=[e for e in sub.edges if e.src in vset and e.dst in vset])
        if sub.edges:
            idx = len(comps)
            comps.append(trim_essential(sub))
            for v in verts:
                comp_of[v] = idx
    sink = [True] * len(comps)
    source = [True] * len(comps)
    internal = set()
    for c in comps:
        internal.update(e.eid for e in c.edges)
    for e in p.edges:
        if e.eid in internal:
            continue
        if e.src in comp_of:
            sink[comp_of[e.src]] = False
        if e.dst in comp_of:
            source[comp_of[e.dst]] = False
    keep_vertices = [v for v in p.vertices if v in comp_of]
    nw = p.subgraph(vertices=keep_vertices, edges=[e for c in comps for e in c.edges])
    return ComponentDecomposition(tuple(comps), tuple(sink), tuple(source), nw)


def graph_nonwandering(x: ShiftSpace) -> bool:
    """Every edge of the (trimmed) presentation lies in a component."""
    dec = component_decomposition(x)
    internal = {e.eid for c in dec.components for e in c.edges}
    return all(e.eid in internal for e in x.presentation.edges)


def blocks(x: ShiftSpace, n: int) -> frozenset:
    """The words of length `n` appearing in the space.

    With a trimmed presentation these are exactly the labels of paths of
    length `n`.
    """
    if n < 0:
        raise ValueError("block length must be nonnegative")
    if n == 0:
        return frozenset([()]) if not x.is_empty else frozenset()
    p = x.presentation
    found = set()
    # breadth-first over (vertex, partial word) with dedup per layer
    layer = {(v, ()) for v in p.vertices}
    for _ in range(n):
        nxt = set()
        for v, w in layer:
            for e in p._out[v]:
                nxt.add((e.dst, w + (e.label,)))
        layer = nxt
    found = {w for _, w in layer}
    return frozenset(found)


def contains_word(x: ShiftSpace, w: Word) -> bool:
    """True iff `w` labels some path of the trimmed presentation."""
    p = x.presentation
    current = set(p.vertices)
    for s in w:
        nxt = set()
        for v in current:
            for e in p._out[v]:
                if e.label == s:
                    nxt.add(e.dst)
        if not nxt:
            return False
        current = nxt
    return True


@dataclass(frozen=True)
class HigherBlock:
    """Result of a higher block recoding.

    `encode` maps each allowed N-word of the original space to the symbol
    of the new one; `decode` maps each new symbol back to its N-word.
    """

    space: ShiftSpace
    order: int
    encode: object  # mapping N-word -> new symbol
    decode: object  # mapping new symbol -> N-word


def higher_block(x: ShiftSpace, n: int) -> HigherBlock:
    """The `n`-th higher block presentation together with recoding tables.

    Vertices are paths of length ``n - 1`` in the presentation and edges
    are paths of length ``n``; the label of an edge is its length-`n`
    label word, wrapped as a single symbol.  Presents a conjugate shift:
    reading coordinate ``i`` of the image gives the window ``[i, i+n)`` of
    the source point.
    """
    if n < 1:
        raise ValueError("block order must be positive")
    if n == 1:
        ident = {(a,): a for a in x.alphabet}
        return HigherBlock(x, 1, ident, {a: (a,) for a in x.alphabet})
    p = x.presentation
    # enumerate paths of length n as edge tuples
    paths = [(e,) for e in p.edges]
    for _ in range(n - 1):
        paths = [pp + (e,) for pp in paths for e in p._out[pp[-1].dst]]
    verts = []
    vseen = set()
    edges = []
    encode = {}
    decode = {}
    for pp in paths:
        u = tuple(e.eid for e in pp[:-1])
        v = tuple(e.eid for e in pp[1:])
        for vv in (u, v):
            if vv not in vseen:
                vseen.add(vv)
                verts.append(vv)
        eid = tuple(e.eid for e in pp)
        label_word = tuple(e.label for e in pp)
        label = eid if x.kind == EDGE else label_word
        edges.append(Edge(eid, u, v, label))
        encode.setdefault(label_word, label)
        decode.setdefault(label, label_word)
    pres = trim_essential(LabeledPresentation(tuple(verts), tuple(edges)))
    space = ShiftSpace(pres, x.kind)
    return HigherBlock(space, n, encode, decode)

"""Fiber products, canonical covers, resolving extensions, and cross
sections of constant-to-one bi-closing codes."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from .presentation import (
    Edge,
    LabeledPresentation,
    ShiftSpace,
    EDGE,
    LABELED,
    blocks,
    strongly_connected_components,
    trim_essential,
)
from .language import determinize, language_contained, is_irreducible, language_equal
from .codes import BlockCode, image_presentation, to_one_block
from .pairs import is_right_resolving, separation_data
from .points import Point


@dataclass(frozen=True)
class FiberProduct:
    sigma: ShiftSpace
    psi1: BlockCode
    psi2: BlockCode


def fiber_product(phi1: BlockCode, phi2: BlockCode) -> FiberProduct:
    """Pullback of two 1-block codes with a common codomain.

    The presentation pairs vertices and image-equal edges; the two
    projections drop a coordinate of the paired labels.
    """
    if not (phi1.is_one_block and phi2.is_one_block):
        raise ValueError("fiber product requires 1-block codes")
    if not language_equal(phi1.codomain, phi2.codomain):
        raise ValueError("codomain mismatch")
    p1, p2 = phi1.domain.presentation, phi2.domain.presentation
    verts = tuple((u, v) for u in p1.vertices for v in p2.vertices)
    edges = []
    for e1 in p1.edges:
        for e2 in p2.edges:
            if phi1.mapping[(e1.label,)] != phi2.mapping[(e2.label,)]:
                continue
            eid = (e1.eid, e2.eid)
            label = (e1.label, e2.label)
            edges.append(Edge(eid, (e1.src, e2.src), (e1.dst, e2.dst), label))
    pres = trim_essential(LabeledPresentation(verts, tuple(edges)))
    kind = EDGE if phi1.domain.kind == EDGE and phi2.domain.kind == EDGE else LABELED
    sigma = ShiftSpace(pres, kind)
    alphabet = sigma.alphabet
    psi1 = BlockCode.make(sigma, phi1.domain, 0, 0, {(s,): s[0] for s in alphabet})
    psi2 = BlockCode.make(sigma, phi2.domain, 0, 0, {(s,): s[1] for s in alphabet})
    return FiberProduct(sigma, psi1, psi2)


def _follower_minimize(d: LabeledPresentation) -> LabeledPresentation:
    """Merge follower-equivalent states of a deterministic presentation."""
    if d.is_empty:
        return d
    labels = d.alphabet

    def signature(v, cls):
        out = {}
        for e in d._out[v]:
            out[e.label] = cls[e.dst]
        return tuple(sorted(out.items(), key=repr))

    cls = {v: 0 for v in d.vertices}
    while True:
        sigs = {}
        new_cls = {}
        for v in d.vertices:
            sig = (cls[v], signature(v, cls))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new_cls[v] = sigs[sig]
        if new_cls == cls:
            break
        cls = new_cls
    reps = {}
    for v in d.vertices:
        reps.setdefault(cls[v], v)
    verts = tuple(sorted(reps, key=repr))
    edges = []
    seen = set()
    for e in d.edges:
        key = (cls[e.src], e.label)
        if key in seen:
            continue
        seen.add(key)
        edges.append(Edge((cls[e.src], e.label), cls[e.src], cls[e.dst], e.label))
    return trim_essential(LabeledPresentation(verts, tuple(edges)))


@dataclass(frozen=True)
class CanonicalCover:
    space: ShiftSpace  # irreducible edge shift
    pi: BlockCode  # right resolving factor code onto the target
    presentation: LabeledPresentation  # deterministic labeled form of the cover


def canonical_cover(y: ShiftSpace) -> CanonicalCover:
    """Minimal right-resolving irreducible presentation with its labeling
    code; only defined for irreducible sofic spaces."""
    if not is_irreducible(y):
        raise ValueError("not irreducible")
    d = determinize(y.presentation)
    m = _follower_minimize(d)
    target = None
    for verts in strongly_connected_components(m):
        sub = trim_essential(m.subgraph(vertices=set(verts)))
        if sub.is_empty:
            continue
        if language_contained(m, sub) is None:
            target = sub
            break
    if target is None:
        raise ValueError("not irreducible")
    cover_edges = tuple(
        Edge(e.eid, e.src, e.dst, e.eid) for e in target.edges
    )
    cover_pres = LabeledPresentation(target.vertices, cover_edges)
    cover = ShiftSpace(cover_pres, EDGE)
    table = {(e.eid,): e.label for e in target.edges}
    pi = BlockCode.make(cover, y, 0, 0, table)
    return CanonicalCover(cover, pi, target)


def resolving_extension(c: BlockCode) -> BlockCode:
    """Extend a right resolving 1-block code with edge-shift codomain to
    the full 1-step closure of its domain language.

    The extended domain allows every two-symbol word of the original,
    and the symbolwise map stays right resolving.
    """
    if not c.is_one_block:
        raise ValueError("resolving extension requires a 1-block code")
    if not is_right_resolving(c):
        raise ValueError("code is not right resolving")
    if c.codomain.kind != EDGE:
        raise ValueError("codomain must be an edge shift")
    symbols = c.domain.alphabet
    allowed = blocks(c.domain, 2)
    verts = tuple(symbols)
    edges = tuple(
        Edge((i, j), i, j, j) for i in symbols for j in symbols if (i, j) in allowed
    )
    pres = trim_essential(LabeledPresentation(verts, edges))
    dom = ShiftSpace(pres, LABELED)
    table = {(s,): c.mapping[(s,)] for s in dom.alphabet}
    return BlockCode.make(dom, c.codomain, 0, 0, table)


@dataclass(frozen=True)
class CrossSectionTable:
    """Window tables realizing disjoint cross sections.

    For every allowed (2n+1)-word w of the codomain, ``tables[w]`` lists
    the d distinct central (2p+1)-windows of its bi-extendable preimage
    segments, in the canonical symbol order of the domain presentation.
    Section i sends a point y to the unique preimage whose central window
    is ``tables[y_window][i-1]``.
    """

    p: int
    n: int
    d: int
    tables: tuple  # sorted tuple of (codomain word, tuple of domain windows)
    order_rule: str = "lex-domain-alphabet"

    @property
    def mapping(self) -> dict:
        return dict(self.tables)


def _preimage_windows(c: BlockCode, w: tuple, p: int) -> frozenset:
    """Central (2p+1)-windows of live preimage segments of the centered
    (2n+1)-word `w`."""
    from .fibers import _image_map

    img = _image_map(c)
    d = determinize(c.domain.presentation)
    n2 = len(w)
    half = n2 // 2
    fwd = [set(d.vertices)]
    for t in range(n2):
        fwd.append(
            {
                e.dst
                for v in fwd[t]
                for e in d._out[v]
                if img[e.label] == w[t]
            }
        )
    bwd = [set() for _ in range(n2 + 1)]
    bwd[n2] = set(d.vertices)
    for t in range(n2 - 1, -1, -1):
        bwd[t] = {
            v
            for v in d.vertices
            for e in d._out[v]
            if img[e.label] == w[t] and e.dst in bwd[t + 1]
        }
    lo = half - p
    hi = half + p + 1
    if lo < 0:
        raise ValueError("window wider than word")
    windows = set()
    # walk the central segment only; ends must stay live
    stack = [(v, lo, ()) for v in (fwd[lo] & bwd[lo])]
    while stack:
        v, t, acc = stack.pop()
        if t == hi:
            windows.add(acc)
            continue
        for e in d._out[v]:
            if img[e.label] == w[t] and e.dst in (fwd[t + 1] & bwd[t + 1]):
                stack.append((e.dst, t + 1, acc + (e.label,)))
    return frozenset(windows)


def cross_sections(c: BlockCode, n_budget: Optional[int] = None) -> CrossSectionTable:
    """Tables for the d disjoint cross sections of a constant-to-one
    bi-closing code.

    p is one more than the separation delay, so distinct preimages of a
    point already differ inside the central (2p+1) window; n grows from p
    until every allowed (2n+1)-word has exactly d preimage windows.
    """
    from .fibers import is_constant_to_one

    try:
        sep = separation_data(c)
    except ValueError:
        raise ValueError("not bi-closing")
    cto = is_constant_to_one(c)
    if not cto.yes:
        raise ValueError("not constant-to-one")
    d = cto.d
    p = sep.n + 1
    if n_budget is None:
        subset_states = len(determinize(c.codomain.presentation).vertices)
        n_budget = p + 2 * subset_states**2
    order = {s: i for i, s in enumerate(c.domain.presentation.alphabet)}

    def sort_key(window):
        return tuple(order[s] for s in window)

    for n in range(p, n_budget + 1):
        rows = {}
        good = True
        for w in sorted(blocks(c.codomain, 2 * n + 1), key=repr):
            wins = _preimage_windows(c, w, p)
            if not wins:
                continue
            if len(wins) != d:
                good = False
                break
            rows[w] = tuple(sorted(wins, key=sort_key))
        if good and rows:
            tables = tuple(sorted(rows.items(), key=repr))
            return CrossSectionTable(p, n, d, tables)
    raise ValueError("n-search budget exhausted")


def evaluate_cross_section(t: CrossSectionTable, c: BlockCode, i: int, w) -> Point:
    """The section value at the periodic point ``w^inf``: the unique
    preimage whose central (2p+1)-window matches table row i."""
    from .fibers import fiber_of_periodic

    if not (1 <= i <= t.d):
        raise ValueError("section index out of range")
    y = Point.periodic(tuple(w))
    row = t.mapping.get(y.window(-t.n, t.n + 1))
    if row is None:
        raise ValueError("window not in table")
    target = row[i - 1]
    rep = fiber_of_periodic(c, tuple(w))
    matches = [x for x in rep.points if x.window(-t.p, t.p + 1) == target]
    if len(matches) != 1:
        raise AssertionError("cross-section uniqueness failed")
    return matches[0]

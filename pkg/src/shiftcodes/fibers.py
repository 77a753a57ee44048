"""Fibers over periodic points, magic words, degree, constant-to-one.

Fibers are counted at the label level: preimages of a periodic point are
the distinct label sequences of bi-infinite paths in the product of the
determinized domain presentation with the period cycle.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .presentation import ShiftSpace, EDGE, blocks, contains_word
from .language import determinize, det_space, is_irreducible, find_synchronizing_word
from .points import Point, primitive_root
from .pairs import Verdict, pair_graph, has_pumpable_diamond, is_bi_closing

INFINITE = math.inf


def _image_map(c) -> dict:
    if not c.is_one_block:
        raise ValueError("fiber analysis requires a 1-block code")
    return {k[0]: v for k, v in c.table}


def _product_with_cycle(c, w):
    """Product of the determinized domain with the |w|-cycle, trimmed to
    vertices on bi-infinite paths.  Returns (vertices, out, inn)."""
    img = _image_map(c)
    d = determinize(c.domain.presentation)
    p = len(w)
    verts = {(v, i) for v in d.vertices for i in range(p)}
    out = {u: [] for u in verts}
    inn = {u: [] for u in verts}
    for v in d.vertices:
        for e in d._out[v]:
            for i in range(p):
                if img[e.label] == w[i]:
                    a, b = (v, i), (e.dst, (i + 1) % p)
                    out[a].append((e, b))
                    inn[b].append((e, a))
    changed = True
    while changed:
        changed = False
        for u in list(verts):
            if not any(b in verts for _, b in out[u]) or not any(
                b in verts for _, b in inn[u]
            ):
                verts.discard(u)
                changed = True
    out = {u: [(e, b) for e, b in out[u] if b in verts] for u in verts}
    inn = {u: [(e, b) for e, b in inn[u] if b in verts] for u in verts}
    return verts, out, inn


@dataclass(frozen=True)
class FiberReport:
    word: tuple
    count: object  # int or math.inf
    points: tuple  # eventually periodic preimages when finite

    @property
    def finite(self) -> bool:
        return self.count is not INFINITE


def fiber_of_periodic(c, w) -> FiberReport:
    """Distinct preimage points of the periodic point ``w^inf`` anchored
    with `w` at coordinates [0, |w|).

    When the trimmed product is a disjoint union of simple cycles the
    fiber is the set of cycle label sequences, deduplicated; any residual
    branching pumps to infinitely many preimages.
    """
    w = tuple(w)
    if not w:
        raise ValueError("period word must be nonempty")
    if not _periodic_in_space(c.codomain, w):
        raise ValueError("periodic point not in the codomain")
    verts, out, inn = _product_with_cycle(c, w)
    if not verts:
        return FiberReport(w, 0, ())
    if any(len(out[u]) > 1 or len(inn[u]) > 1 for u in verts):
        return FiberReport(w, INFINITE, ())
    points = set()
    remaining = set(verts)
    while remaining:
        u = min(remaining, key=repr)
        cycle_labels = []
        cur = u
        while True:
            e, nxt = out[cur][0]
            cycle_labels.append(e.label)
            remaining.discard(cur)
            cur = nxt
            if cur == u:
                break
        # anchor each phase-0 crossing of the cycle as its own point
        length = len(cycle_labels)
        phase = u[1]
        for k in range(length):
            if (phase + k) % len(w) == 0:
                rotated = tuple(cycle_labels[k:] + cycle_labels[:k])
                points.add(Point.periodic(rotated))
    pts = tuple(sorted(points, key=repr))
    return FiberReport(w, len(pts), pts)


def _periodic_in_space(x: ShiftSpace, w) -> bool:
    """True iff the periodic point w^inf lies in the space."""
    d = determinize(x.presentation)
    p = len(w)
    verts = {(v, i) for v in d.vertices for i in range(p)}
    out = {}
    for v in d.vertices:
        for e in d._out[v]:
            for i in range(p):
                if e.label == w[i]:
                    out.setdefault((v, i), []).append((e.dst, (i + 1) % p))
    # a cycle in the product certifies the bi-infinite repetition
    color = {}

    def has_cycle_from(u):
        stack = [(u, iter(out.get(u, ())))]
        color[u] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color.get(nxt) == 1:
                    return True
                if nxt not in color:
                    color[nxt] = 1
                    stack.append((nxt, iter(out.get(nxt, ()))))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
        return False

    return any(has_cycle_from(u) for u in list(verts) if u not in color)


def periodic_words(x: ShiftSpace, max_period: int):
    """Representative period words (one per necklace) of periodic points
    of the space, up to the given period."""
    d = determinize(x.presentation)
    seen = set()
    reps = []
    for start in d.vertices:
        stack = [(start, ())]
        while stack:
            v, word_so_far = stack.pop()
            if len(word_so_far) >= max_period:
                continue
            for e in d._out[v]:
                nw = word_so_far + (e.label,)
                if e.dst == start:
                    root = primitive_root(nw)
                    key = min(root[i:] + root[:i] for i in range(len(root)))
                    if key not in seen:
                        seen.add(key)
                        reps.append(root)
                if len(nw) < max_period:
                    stack.append((e.dst, nw))
    return reps


def default_scan_bound(c) -> int:
    n = len(c.domain.presentation.vertices)
    return max(6, min(n + 2, 8))


@lru_cache(maxsize=None)
def is_finite_to_one(c, scan_bound: Optional[int] = None) -> Verdict:
    """Finite-to-one decision.

    A pumpable diamond (an NEQ pair-cycle through a diagonal vertex)
    certifies an uncountable fiber; otherwise periodic points are scanned
    up to the bound and each fiber is tested for branching.  A clean scan
    is reported as yes.
    """
    pg = pair_graph(c)
    diamond = has_pumpable_diamond(pg)
    if diamond is not None:
        return Verdict(False, "pair-diamond", diamond)
    bound = scan_bound or default_scan_bound(c)
    for w in periodic_words(c.codomain, bound):
        rep = fiber_of_periodic(c, w)
        if not rep.finite:
            return Verdict(False, f"periodic-scan<= {bound}", w)
    return Verdict(True, f"pair-diamond+scan<={bound}")


@dataclass(frozen=True)
class MagicWordReport:
    word: tuple
    coordinate: int  # 1-based position achieving the spread
    spread: int
    symbol_sets: tuple  # per-coordinate symbol sets


def word_spread(c, w) -> MagicWordReport:
    """Per-coordinate symbol sets of bi-extendable preimages of `w`.

    The spread is the least count over coordinates; a word whose spread
    equals the degree is a magic word.
    """
    w = tuple(w)
    if not contains_word(c.codomain, w):
        raise ValueError("word not in the codomain language")
    img = _image_map(c)
    d = determinize(c.domain.presentation)
    n = len(w)
    fwd = [set(d.vertices)]
    for t in range(n):
        cur = set()
        for v in fwd[t]:
            for e in d._out[v]:
                if img[e.label] == w[t]:
                    cur.add(e.dst)
        fwd.append(cur)
    bwd = [set() for _ in range(n + 1)]
    bwd[n] = set(d.vertices)
    for t in range(n - 1, -1, -1):
        cur = set()
        for v in d.vertices:
            for e in d._out[v]:
                if img[e.label] == w[t] and e.dst in bwd[t + 1]:
                    cur.add(v)
        bwd[t] = cur
    sets = []
    for t in range(n):
        live = set()
        for v in fwd[t] & bwd[t]:
            for e in d._out[v]:
                if img[e.label] == w[t] and e.dst in (fwd[t + 1] & bwd[t + 1]):
                    live.add(e.label)
        sets.append(frozenset(live))
    spread, coord = min((len(s), t + 1) for t, s in enumerate(sets))
    return MagicWordReport(w, coord, spread, tuple(sets))


@dataclass(frozen=True)
class DegreeReport:
    degree: Optional[int]
    route: str
    magic: Optional[MagicWordReport] = None
    scanned: tuple = ()

    @property
    def conclusive(self) -> bool:
        return self.degree is not None


def _magic_search(c, length_bound: int):
    """Breadth-first search for a word of least spread."""
    best = None
    frontier = [(s,) for s in c.codomain.alphabet if contains_word(c.codomain, (s,))]
    seen_words = set(frontier)
    while frontier:
        next_frontier = []
        for w in frontier:
            rep = word_spread(c, w)
            if rep.spread >= 1 and (best is None or rep.spread < best.spread):
                best = rep
            if best is not None and best.spread == 1:
                return best
            if len(w) < length_bound:
                for s in c.codomain.alphabet:
                    nw = w + (s,)
                    if nw not in seen_words and contains_word(c.codomain, nw):
                        seen_words.add(nw)
                        next_frontier.append(nw)
        frontier = next_frontier
    return best


def degree(c, scan_bound: Optional[int] = None, facts=None) -> DegreeReport:
    """Common fiber cardinality over doubly transitive points.

    Edge-shift domains use the magic word search cross-checked against a
    periodic scan.  Labeled domains use the scan alone: the maximum over
    scanned fibers for open codes, the minimum for bi-closing ones, or
    the common value when the scan is uniform.
    """
    from . import openness as _open

    fto = is_finite_to_one(c)
    if not fto.value:
        raise ValueError("degree requires a finite-to-one code")
    bound = scan_bound or default_scan_bound(c)
    scanned = []
    for w in periodic_words(c.codomain, bound):
        rep = fiber_of_periodic(c, w)
        if rep.count:
            scanned.append((w, rep.count))
    counts = sorted({cnt for _, cnt in scanned})
    if c.domain.kind == EDGE:
        d_pres = determinize(c.codomain.presentation)
        length_bound = min(2 * len(d_pres.vertices) ** 2, 8)
        magic = _magic_search(c, length_bound)
        if magic is None or magic.spread == 0:
            return DegreeReport(None, "magic-search-empty", magic, tuple(scanned))
        # scan route: least fiber among periodic points containing the word
        member = [
            cnt
            for w, cnt in scanned
            if _occurs_cyclically(magic.word, w)
        ]
        if member and min(member) == magic.spread:
            return DegreeReport(magic.spread, "magic+scan", magic, tuple(scanned))
        if not member:
            return DegreeReport(magic.spread, "magic(scan-silent)", magic, tuple(scanned))
        return DegreeReport(None, "routes-disagree", magic, tuple(scanned))
    if len(counts) == 1:
        return DegreeReport(counts[0], "uniform-scan", None, tuple(scanned))
    if facts is None:
        facts = {}
    if facts.get("bi_closing"):
        return DegreeReport(counts[0], "bi-closing-min-scan", None, tuple(scanned))
    if facts.get("open"):
        return DegreeReport(counts[-1], "open-max-scan", None, tuple(scanned))
    return DegreeReport(None, "inconclusive", None, tuple(scanned))


def _occurs_cyclically(needle: tuple, period_word: tuple) -> bool:
    if not needle:
        return True
    reps = -(-(len(needle) + len(period_word)) // len(period_word)) + 1
    hay = period_word * reps
    return any(hay[i : i + len(needle)] == needle for i in range(len(period_word)))


@dataclass(frozen=True)
class CtoVerdict:
    status: str  # yes | no | inconclusive
    d: Optional[int] = None
    route: str = ""
    witness: object = None
    exact: bool = True

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    @property
    def no(self) -> bool:
        return self.status == "no"


@lru_cache(maxsize=None)
def is_constant_to_one(c, scan_bound: Optional[int] = None) -> CtoVerdict:
    """Decision cascade for the constant-to-one property.

    Periodic fibers with two different counts settle a no immediately.
    Edge-shift domains are settled exactly by lifting through the
    canonical cover of the codomain and checking that the lifted product
    is a disjoint union of components, each mapping onto the cover by a
    bi-closing restriction.  Labeled domains fall back on a theorem route
    (bi-closing plus witnessed openness) or a uniform scan.
    """
    from .codes import is_onto
    from .constructions import canonical_cover, fiber_product
    from .codes import image_presentation
    from .language import language_equal

    if not is_onto(c):
        return CtoVerdict("no", route="not-onto")
    fto = is_finite_to_one(c, scan_bound)
    if not fto.value:
        return CtoVerdict("no", route=f"not-finite-to-one({fto.route})", witness=fto.witness)
    bound = scan_bound or default_scan_bound(c)
    scanned = []
    for w in periodic_words(c.codomain, bound):
        rep = fiber_of_periodic(c, w)
        scanned.append((w, rep.count))
    nonzero = [(w, cnt) for w, cnt in scanned if cnt]
    counts = sorted({cnt for _, cnt in nonzero})
    if len(counts) > 1:
        lo = next((w, cnt) for w, cnt in nonzero if cnt == counts[0])
        hi = next((w, cnt) for w, cnt in nonzero if cnt == counts[-1])
        return CtoVerdict("no", route="periodic-scan-distinct", witness=(lo, hi))

    if c.domain.kind == EDGE and is_irreducible(c.codomain):
        ok, detail = _lifted_component_test(c)
        if ok:
            d = counts[0] if counts else None
            return CtoVerdict("yes", d, "cover-lift", detail)
        return CtoVerdict("no", None, "cover-lift", detail)

    bic = is_bi_closing(c)
    if bic.value and is_irreducible(c.codomain):
        from . import openness as _open

        horizon = min(_open.default_horizon(c), 2)
        sweep = all(
            _open.open_witness(c, l, 2 * horizon + 2) is not None
            for l in range(horizon + 1)
        )
        if sweep and counts:
            return CtoVerdict(
                "yes", counts[0], "bi-closing+witnessed-open", exact=False
            )
    if len(counts) == 1 and nonzero:
        return CtoVerdict("yes", counts[0], f"periodic-scan<={bound}", exact=False)
    return CtoVerdict("inconclusive", route="no-exact-route")


def _lifted_component_test(c):
    """Decompose the fiber product with the canonical cover and test each
    component restriction for onto and bi-closing."""
    from .codes import BlockCode, image_presentation
    from .constructions import canonical_cover, fiber_product
    from .language import language_equal
    from .presentation import component_decomposition, graph_nonwandering

    cover = canonical_cover(c.codomain)
    fp = fiber_product(c, cover.pi)
    sigma = fp.sigma
    if sigma.is_empty:
        return False, "empty lift"
    if not graph_nonwandering(sigma):
        return False, "lift not nonwandering"
    dec = component_decomposition(sigma)
    psi2 = fp.psi2
    for comp in dec.components:
        restricted = ShiftSpace(comp, EDGE)
        table = {
            (s,): psi2.mapping[(s,)] for s in restricted.alphabet
        }
        rcode = BlockCode.make(restricted, cover.space, 0, 0, table)
        if not language_equal(image_presentation(rcode), cover.space):
            return False, "component restriction not onto the cover"
        if not is_bi_closing(rcode).value:
            return False, "component restriction not bi-closing"
    return True, f"{len(dec.components)} component(s)"

"""Language-level operations on presented shift spaces.

Everything here works through the subset construction: a presentation is
determinized by following label transitions from the full vertex set and
trimming the result to its essential part, which presents the same
language with at most one out-edge per (vertex, label).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .presentation import (
    Edge,
    LabeledPresentation,
    ShiftSpace,
    LABELED,
    EDGE,
    blocks,
    strongly_connected_components,
    trim_essential,
)


def _sorted_tuple(items):
    return tuple(sorted(items, key=repr))


@lru_cache(maxsize=None)
def determinize(p: LabeledPresentation) -> LabeledPresentation:
    """Deterministic presentation of the same language.

    Subset construction seeded with the full vertex set, restricted to
    nonempty reachable subsets and trimmed to the bi-essential core.
    """
    p = trim_essential(p)
    if p.is_empty:
        return p
    if p.is_deterministic():
        return p
    start = _sorted_tuple(p.vertices)
    states = [start]
    seen = {start}
    edges = []
    queue = deque([start])
    while queue:
        s = queue.popleft()
        move = {}
        for v in s:
            for e in p._out[v]:
                move.setdefault(e.label, set()).add(e.dst)
        for label in p.alphabet:
            if label not in move:
                continue
            t = _sorted_tuple(move[label])
            edges.append(Edge((s, label), s, t, label))
            if t not in seen:
                seen.add(t)
                states.append(t)
                queue.append(t)
    return trim_essential(LabeledPresentation(tuple(states), tuple(edges)))


def det_space(x: ShiftSpace) -> LabeledPresentation:
    return determinize(x.presentation)


def _dot(p: LabeledPresentation, state, label):
    """Transition of a deterministic presentation; None when undefined."""
    for e in p._out[state]:
        if e.label == label:
            return e.dst
    return None


def _subset_step(p: LabeledPresentation, subset: frozenset, label) -> frozenset:
    out = set()
    for q in subset:
        t = _dot(p, q, label)
        if t is not None:
            out.add(t)
    return frozenset(out)


def language_contained(a: LabeledPresentation, b: LabeledPresentation):
    """None if every path label of `a` is a path label of `b`, else a
    shortest witness word in L(a) but not L(b).

    Both arguments must be deterministic and essential.
    """
    if a.is_empty:
        return None
    full_b = frozenset(b.vertices)
    start_states = [(v, full_b) for v in a.vertices]
    seen = set(start_states)
    queue = deque((s, ()) for s in start_states)
    while queue:
        (v, sub), w = queue.popleft()
        for e in a._out[v]:
            nsub = _subset_step(b, sub, e.label)
            nw = w + (e.label,)
            if not nsub:
                return nw
            key = (e.dst, nsub)
            if key not in seen:
                seen.add(key)
                queue.append((key, nw))
    return None


def language_equal(x1: ShiftSpace, x2: ShiftSpace) -> bool:
    """True iff the two presentations generate the same language."""
    d1, d2 = det_space(x1), det_space(x2)
    return language_contained(d1, d2) is None and language_contained(d2, d1) is None


def separating_word(x1: ShiftSpace, x2: ShiftSpace):
    """A shortest word in one language but not the other, or None."""
    d1, d2 = det_space(x1), det_space(x2)
    w = language_contained(d1, d2)
    if w is not None:
        return w
    return language_contained(d2, d1)


def is_irreducible(x: ShiftSpace) -> bool:
    """True iff any two allowed words can be joined through the language.

    Decided by looking for a strongly connected sub-presentation of the
    determinized presentation that generates the full language.
    """
    if x.is_empty:
        return False
    d = det_space(x)
    for verts in strongly_connected_components(d):
        vset = set(verts)
        sub = trim_essential(d.subgraph(vertices=vset))
        if sub.is_empty:
            continue
        if language_contained(d, sub) is None:
            return True
    return False


@dataclass(frozen=True)
class SftVerdict:
    is_sft: bool
    step: Optional[int] = None
    # (prefix, cycle) pair words certifying a non-focusing loop when not SFT
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.is_sft


def _follower_contains(p: LabeledPresentation, big: frozenset, small: frozenset) -> bool:
    """True iff every word readable from `small` is readable from `big`."""
    seen = {(small, big)}
    queue = deque(seen)
    while queue:
        s, b = queue.popleft()
        labels = {e.label for q in s for e in p._out[q]}
        for label in labels:
            ns = _subset_step(p, s, label)
            if not ns:
                continue
            nb = _subset_step(p, b, label)
            if not nb:
                return False
            key = (ns, nb)
            if key not in seen:
                seen.add(key)
                queue.append(key)
    return True


def is_sft(x: ShiftSpace, step_bound: Optional[int] = None) -> SftVerdict:
    """Decide whether the language is a k-step shift of finite type.

    The language is k-step when `uw, wv` allowed with ``|w| = k`` forces
    `uwv` allowed.  On the determinized presentation this is equivalent
    to: for every reachable subset S and every k-word w admitted by S,
    the follower language of ``S . w`` contains that of ``V . w``.  The
    search climbs k until success or a stabilization bound.
    """
    if x.is_empty:
        return SftVerdict(True, 0)
    d = det_space(x)
    full = frozenset(d.vertices)
    if step_bound is None:
        step_bound = 2 * len(d.vertices) ** 2

    # reachable subset states of d, including the full set
    reach = {full}
    queue = deque([full])
    while queue:
        s = queue.popleft()
        labels = {e.label for q in s for e in d._out[q]}
        for label in labels:
            t = _subset_step(d, s, label)
            if t and t not in reach:
                reach.add(t)
                queue.append(t)

    good_cache = {}

    def good(a: frozenset, b: frozenset) -> bool:
        key = (a, b)
        if key not in good_cache:
            good_cache[key] = _follower_contains(d, a, b)
        return good_cache[key]

    # pairs (S.w, V.w) at distance exactly k, with provenance for witnesses
    frontier = {(s, full): ((), ()) for s in reach}
    for k in range(step_bound + 1):
        bad = [(pair, path) for pair, path in frontier.items() if not good(*pair)]
        if not bad:
            return SftVerdict(True, k)
        nxt = {}
        for (s, b), (w0, w) in frontier.items():
            labels = {e.label for q in s for e in d._out[q]}
            for label in labels:
                ns = _subset_step(d, s, label)
                if not ns:
                    continue
                key = (ns, _subset_step(d, b, label))
                if key not in nxt:
                    nxt[key] = (w0, w + (label,))
        frontier = nxt
    witness = min(((p, w) for p, w in bad), key=repr)[1] if bad else None
    return SftVerdict(False, None, witness)


def find_synchronizing_word(x: ShiftSpace, length_bound: Optional[int] = None):
    """A shortest word focusing the determinized presentation to one
    vertex, or None if none exists within the bound.

    For an irreducible sofic space this gives an intrinsically
    synchronizing word of the language.
    """
    d = det_space(x)
    if d.is_empty:
        return None
    start = frozenset(d.vertices)
    if len(start) == 1:
        return ()
    if length_bound is None:
        length_bound = 2 ** len(d.vertices) + 1
    seen = {start}
    queue = deque([(start, ())])
    while queue:
        s, w = queue.popleft()
        if len(w) >= length_bound:
            continue
        labels = {e.label for q in s for e in d._out[q]}
        for label in sorted(labels, key=repr):
            t = _subset_step(d, s, label)
            if not t:
                continue
            if len(t) == 1:
                return w + (label,)
            if t not in seen:
                seen.add(t)
                queue.append((t, w + (label,)))
    return None


def is_intrinsically_synchronizing(x: ShiftSpace, w) -> bool:
    """True iff `uw, wv` allowed always forces `uwv` allowed."""
    d = det_space(x)
    full = frozenset(d.vertices)
    # all reachable subsets S = V.u
    reach = {full}
    queue = deque([full])
    while queue:
        s = queue.popleft()
        labels = {e.label for q in s for e in d._out[q]}
        for label in labels:
            t = _subset_step(d, s, label)
            if t and t not in reach:
                reach.add(t)
                queue.append(t)
    target = full
    for a in w:
        target = _subset_step(d, target, a)
    if not target:
        return False  # w itself not allowed
    for s in reach:
        sw = frozenset(s)
        for a in w:
            sw = _subset_step(d, sw, a)
        if sw and not _follower_contains(d, sw, target):
            return False
    return True


def language_nonwandering(x: ShiftSpace) -> bool:
    """True iff every allowed word u admits w with `uwu` allowed.

    Decided on the transition monoid of the determinized presentation:
    for the partial map f of any word, some vertex in the image of f must
    reach the domain of f.
    """
    if x.is_empty:
        return True
    d = det_space(x)
    verts = list(d.vertices)
    # forward reachability closure between vertices
    reach = {v: {v} for v in verts}
    changed = True
    while changed:
        changed = False
        for v in verts:
            for e in d._out[v]:
                new = reach[e.dst] - reach[v]
                if new:
                    reach[v] |= new
                    changed = True

    def ok(f: tuple) -> bool:
        dom = {q for q, t in f}
        img = {t for q, t in f}
        return any(dom & reach[t] for t in img)

    identity = tuple((v, v) for v in verts)
    seen = {identity}
    queue = deque([identity])
    while queue:
        f = queue.popleft()
        fmap = dict(f)
        for label in d.alphabet:
            g = tuple(
                sorted(
                    ((q, _dot(d, fmap[q], label)) for q in fmap if _dot(d, fmap[q], label) is not None),
                    key=repr,
                )
            )
            if not g:
                continue
            if g not in seen:
                if not ok(g):
                    return False
                seen.add(g)
                queue.append(g)
    return True


def is_nonwandering(x: ShiftSpace) -> bool:
    """Nonwandering test, at the right level for the kind of space.

    Edge shifts are nonwandering iff every edge lies in an irreducible
    component; labeled presentations are decided at the language level,
    since a reducible presentation can present an irreducible shift.
    """
    from .presentation import graph_nonwandering

    if x.kind == EDGE:
        return graph_nonwandering(x)
    return language_nonwandering(x)


def language_components(x: ShiftSpace) -> list:
    """Maximal irreducible sublanguages visible in the determinized
    presentation, as shift spaces.

    For a nonwandering sofic space these are its irreducible components.
    """
    d = det_space(x)
    cands = []
    for verts in strongly_connected_components(d):
        sub = trim_essential(d.subgraph(vertices=set(verts)))
        if not sub.is_empty:
            cands.append(ShiftSpace(sub, LABELED))
    keep = []
    for i, c in enumerate(cands):
        dominated = False
        for j, other in enumerate(cands):
            if i == j:
                continue
            ci, cj = det_space(c), det_space(other)
            if language_contained(ci, cj) is None:
                # c <= other; strict or tie broken by index
                if language_contained(cj, ci) is not None or j < i:
                    dominated = True
                    break
        if not dominated:
            keep.append(c)
    return keep

"""Brute-force reference implementations, independent of the library's
pair-graph machinery.  Everything here works by explicit walk enumeration
over the raw presentation, bounded by transient+period budgets."""

import itertools
from collections import deque

from shiftcodes.language import determinize


def _img(c):
    return {k[0]: v for k, v in c.table}


def _dom(c):
    return determinize(c.domain.presentation)


def oracle_right_closing(c, bound=None):
    """Search for two left-asymptotic distinct points with equal image:
    an all-equal-label pair cycle, a pair walk with a label difference,
    and a closing pair cycle, all found by explicit DFS."""
    img = _img(c)
    d = _dom(c)
    pairs = [(u, v) for u in d.vertices for v in d.vertices]
    if bound is None:
        bound = 2 * len(pairs) ** 2

    def moves(u, v, need_eq=None):
        for e1 in d._out[u]:
            for e2 in d._out[v]:
                if img[e1.label] != img[e2.label]:
                    continue
                eq = e1.label == e2.label
                if need_eq is not None and eq != need_eq:
                    continue
                yield (e1.dst, e2.dst), eq

    def has_eq_cycle_through(pair):
        # DFS over equal-label pair walks, looking for a return
        stack = [(pair, 0)]
        seen = set()
        while stack:
            cur, depth = stack.pop()
            if depth > len(pairs):
                continue
            for nxt, _ in moves(*cur, need_eq=True):
                if nxt == pair:
                    return True
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append((nxt, depth + 1))
        return False

    def reaches_any_cycle(pair):
        # forward liveness by explicit long-walk existence
        target = len(pairs) + 1
        stack = [(pair, 0)]
        best = 0
        seen = {}
        while stack:
            cur, depth = stack.pop()
            best = max(best, depth)
            if best >= target:
                return True
            if seen.get(cur, -1) >= depth:
                continue
            seen[cur] = depth
            for nxt, _ in moves(*cur):
                stack.append((nxt, depth + 1))
        return False

    # start pairs: those lying on an equal-label cycle, or reachable from
    # one through equal-label walks
    eq_live = {p for p in pairs if has_eq_cycle_through(p)}
    frontier = deque(eq_live)
    while frontier:
        cur = frontier.popleft()
        for nxt, _ in moves(*cur, need_eq=True):
            if nxt not in eq_live:
                eq_live.add(nxt)
                frontier.append(nxt)
    for pair in eq_live:
        for nxt, eq in moves(*pair, need_eq=False):
            if not eq and reaches_any_cycle(nxt):
                return False
    return True


def oracle_left_closing(c, bound=None):
    from shiftcodes.pairs import _reversed_code

    return oracle_right_closing(_reversed_code(c), bound)


def _legal_periodic_words(c, max_period):
    """Raw enumeration of codomain symbols, keeping words whose infinite
    repetition has a presenting cycle."""
    cod = c.codomain.presentation
    out = []
    seen = set()
    for p in range(1, max_period + 1):
        for tup in itertools.product(sorted(cod.alphabet, key=repr), repeat=p):
            key = min(tup[i:] + tup[:i] for i in range(p))
            if key in seen:
                continue
            seen.add(key)
            if _has_periodic_path(cod, tup):
                out.append(tup)
    return out


def _has_periodic_path(pres, w):
    p = len(w)
    nodes = {(v, i) for v in pres.vertices for i in range(p)}
    # repeated squaring would be overkill; walk long enough to force a loop
    steps = len(nodes) + 1
    frontier = {(v, 0) for v in pres.vertices}
    for n in range(steps * p):
        i = n % p
        frontier = {
            (e.dst, (i + 1) % p)
            for (v, j) in frontier
            if j == i
            for e in pres._out[v]
            if e.label == w[i]
        }
        if not frontier:
            return False
    return True


def oracle_fiber_window_counts(c, w, m):
    """Distinct central label words of bi-extendable preimage paths of
    w^inf over [-m, m]."""
    img = _img(c)
    d = _dom(c)
    p = len(w)

    def sym(i):
        return w[i % p]

    ext = len(d.vertices) * p + 1
    lo, hi = -m - ext, m + ext
    # enumerate paths over [lo, hi) keeping only central windows; cap the
    # set size since finite fibers cannot exceed the product vertex count
    cap = len(d.vertices) * p + 2
    words = set()
    stack = [(v, lo, ()) for v in d.vertices]
    visited = set(stack)
    while stack:
        v, t, acc = stack.pop()
        if t == hi:
            words.add(acc)
            if len(words) > cap:
                return len(words)
            continue
        for e in d._out[v]:
            if img[e.label] == sym(t):
                keep = acc + ((e.label,) if -m <= t <= m else ())
                state = (e.dst, t + 1, keep)
                if state not in visited:
                    visited.add(state)
                    stack.append(state)
    return len(words)


def oracle_fiber_infinite(c, w):
    """Growth of central window counts certifies an infinite fiber."""
    d = _dom(c)
    base = len(d.vertices) * len(w) + 1
    n1 = oracle_fiber_window_counts(c, w, base)
    n2 = oracle_fiber_window_counts(c, w, base + len(w) * len(d.vertices) + 1)
    return n2 > n1 or n1 > len(d.vertices) * len(w) + 1


def oracle_has_diamond(c):
    """DFS for a pair walk from a diagonal pair back to itself carrying a
    label difference somewhere."""
    img = _img(c)
    d = _dom(c)
    pairs = [(u, v) for u in d.vertices for v in d.vertices]
    bound = 2 * len(pairs)
    for start_v in d.vertices:
        start = (start_v, start_v)
        stack = [(start, False, 0)]
        seen = set()
        while stack:
            (u, v), hit, depth = stack.pop()
            if depth >= bound:
                continue
            for e1 in d._out[u]:
                for e2 in d._out[v]:
                    if img[e1.label] != img[e2.label]:
                        continue
                    nxt = (e1.dst, e2.dst)
                    nhit = hit or e1.label != e2.label
                    if nxt == start and nhit:
                        return True
                    key = (nxt, nhit)
                    if key not in seen:
                        seen.add(key)
                        stack.append((nxt, nhit, depth + 1))
    return False


def oracle_finite_to_one(c, max_period=6):
    if oracle_has_diamond(c):
        return False
    for w in _legal_periodic_words(c, max_period):
        if oracle_fiber_infinite(c, w):
            return False
    return True

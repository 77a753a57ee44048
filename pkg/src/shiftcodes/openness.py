"""Openness of 1-block codes: witnesses, certificates, and the decision
cascade.

A code is open iff for each l there is a k such that the image of every
central (2l+1) cylinder is a union of central (2k+1) cylinders.  The
bounded procedures below follow a candidate image point y with three
subset threads: its codomain threads (y stays in the codomain), its
pinned preimage threads (whether y lies in the cylinder image), and the
preimage threads of a window-matching witness z.  A cylinder image fails
to be a union of (2k+1) cylinders exactly when some y window-matches a
member while its own preimage threads die.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .presentation import (
    LabeledPresentation,
    ShiftSpace,
    EDGE,
    blocks,
    strongly_connected_components,
    trim_essential,
)
from .language import determinize, is_irreducible, is_sft
from .points import Point, PumpFamily
from .codes import BlockCode, is_onto, to_one_block
from .pairs import is_bi_closing, is_right_closing, is_left_closing


@dataclass(frozen=True)
class _Ctx:
    """Per-code transition tables shared by the bounded procedures."""

    cod: LabeledPresentation  # trimmed codomain presentation
    dom: LabeledPresentation  # determinized domain presentation
    img: tuple  # sorted (label, image symbol) pairs
    alphabet: tuple

    @property
    def img_map(self) -> dict:
        if "_imap" not in self.__dict__:
            self.__dict__["_imap"] = dict(self.img)
        return self.__dict__["_imap"]

    def step_y(self, q: frozenset, s) -> frozenset:
        return frozenset(e.dst for v in q for e in self.cod._out[v] if e.label == s)

    def step_d(self, b: frozenset, s, pin) -> frozenset:
        img = self.img_map
        out = set()
        for v in b:
            for e in self.dom._out[v]:
                if pin is not None and e.label != pin:
                    continue
                if s is not None and img[e.label] != s:
                    continue
                out.add(e.dst)
        return frozenset(out)


@lru_cache(maxsize=None)
def _ctx_cached(cod, dom, img, alphabet) -> _Ctx:
    return _Ctx(cod, dom, img, alphabet)


def _ctx(c: BlockCode) -> _Ctx:
    return _ctx_cached(
        trim_essential(c.codomain.presentation),
        determinize(c.domain.presentation),
        tuple(sorted(((k[0], v) for k, v in c.table), key=repr)),
        tuple(c.codomain.alphabet),
    )


def _start_state(ctx: _Ctx):
    return (frozenset(ctx.cod.vertices), frozenset(ctx.dom.vertices))


def _stationary_edges(ctx: _Ctx, state):
    q, b = state
    for s in ctx.alphabet:
        q2 = ctx.step_y(q, s)
        if not q2:
            continue
        yield s, (q2, ctx.step_d(b, s, None))


@lru_cache(maxsize=None)
def _stationary_graph(ctx: _Ctx):
    """Reach set and successor map of the (Q, B) graph from the start."""
    start = _start_state(ctx)
    reach = [start]
    seen = {start}
    succ = {}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        succ[st] = tuple(_stationary_edges(ctx, st))
        for _, nxt in succ[st]:
            if nxt not in seen:
                seen.add(nxt)
                reach.append(nxt)
                queue.append(nxt)
    return tuple(reach), succ


@lru_cache(maxsize=None)
def _limit_states(ctx: _Ctx) -> frozenset:
    """States carrying exact thread sets after an arbitrarily long
    stationary history: the forward closure of cycle states reachable
    from the full-set start."""
    reach, succ = _stationary_graph(ctx)
    idx = {st: i for i, st in enumerate(reach)}
    helper = LabeledPresentation.build(
        tuple(range(len(reach))),
        [
            ((i, j), i, idx[nxt], s)
            for i, st in enumerate(reach)
            for j, (s, nxt) in enumerate(succ[st])
        ],
    )
    on_cycle = set()
    for comp in strongly_connected_components(helper):
        if len(comp) > 1:
            on_cycle.update(comp)
        else:
            v = comp[0]
            if any(idx[nxt] == v for _, nxt in succ[reach[v]]):
                on_cycle.add(v)
    out = set(on_cycle)
    queue = deque(on_cycle)
    while queue:
        i = queue.popleft()
        for _, nxt in succ[reach[i]]:
            j = idx[nxt]
            if j not in out:
                out.add(j)
                queue.append(j)
    return frozenset(reach[i] for i in out)


@lru_cache(maxsize=None)
def _death_states(ctx: _Ctx) -> frozenset:
    """Stationary states from which the preimage threads can be driven
    empty while the codomain threads survive."""
    reach, succ = _stationary_graph(ctx)
    dead = {st for st in reach if not st[1]}
    changed = True
    while changed:
        changed = False
        for st in reach:
            if st in dead:
                continue
            if any(nxt in dead for _, nxt in succ[st]):
                dead.add(st)
                changed = True
    return frozenset(dead)


def _death_reachable(ctx: _Ctx, state) -> bool:
    if not state[1]:
        return True
    dead = _death_states(ctx)
    seen = {state}
    queue = deque([state])
    while queue:
        st = queue.popleft()
        if not st[1] or st in dead:
            return True
        for _, nxt in _stationary_edges(ctx, st):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def cylinder_image_member(c: BlockCode, u, l: int, y: Point) -> bool:
    """Is `y` the image of some point whose window [-l, l] spells `u`?"""
    u = tuple(u)
    if len(u) != 2 * l + 1:
        raise ValueError("cylinder word must have length 2l+1")
    if not c.is_one_block:
        raise ValueError("membership test requires a 1-block code")
    ctx = _ctx(c)
    img = ctx.img_map
    dom = ctx.dom
    pl, pr = len(y.left), len(y.right)
    a = min(-l, y.offset)
    b = max(l + 1, y.offset + len(y.center))

    # backward-live (vertex, phase) states of the left-periodic regime,
    # phase r consuming symbol y.left[r]
    live = {(v, r) for v in dom.vertices for r in range(pl)}
    changed = True
    while changed:
        changed = False
        for v, r in list(live):
            prev = (r - 1) % pl
            if not any(
                (e.src, prev) in live and img[e.label] == y.left[prev]
                for e in dom._in[v]
            ):
                live.discard((v, r))
                changed = True
    cur = {v for v, r in live if r == (a - y.offset) % pl}
    for t in range(a, b):
        pin = u[t + l] if -l <= t <= l else None
        cur = {
            e.dst
            for v in cur
            for e in dom._out[v]
            if img[e.label] == y[t] and (pin is None or e.label == pin)
        }
        if not cur:
            return False
    # forward-live (vertex, phase) states of the right-periodic regime
    flive = {(v, r) for v in dom.vertices for r in range(pr)}
    changed = True
    while changed:
        changed = False
        for v, r in list(flive):
            sym = y.right[r]
            if not any(
                img[e.label] == sym and (e.dst, (r + 1) % pr) in flive
                for e in dom._out[v]
            ):
                flive.discard((v, r))
                changed = True
    phase_b = (b - y.offset - len(y.center)) % pr
    return any((v, phase_b) in flive for v in cur)


def _bad_window(ctx: _Ctx, u, l: int, k: int) -> bool:
    """Does some point window-match the cylinder image on [-k, k] without
    belonging to it?"""
    all_d = frozenset(ctx.dom.vertices)
    w = max(k, l)
    states = {(q, b, all_d) for (q, b) in _limit_states(ctx)}
    for t in range(-w, w + 1):
        pin = u[t + l] if -l <= t <= l else None
        in_window = -k <= t <= k
        nxt = set()
        for q, b, a in states:
            for s in ctx.alphabet:
                q2 = ctx.step_y(q, s)
                if not q2:
                    continue
                nxt.add(
                    (
                        q2,
                        ctx.step_d(b, s, pin),
                        ctx.step_d(a, s if in_window else None, pin),
                    )
                )
        states = nxt
        if not states:
            return False
    return any(a and _death_reachable(ctx, (q, b)) for q, b, a in states)


def open_witness(c: BlockCode, l: int, k_max: int) -> Optional[int]:
    """Least k <= k_max making every central (2l+1) cylinder image a
    union of central (2k+1) cylinders, or None."""
    if not c.is_one_block:
        c = to_one_block(c)[0]
    ctx = _ctx(c)
    words = sorted(blocks(c.domain, 2 * l + 1), key=repr)
    for k in range(k_max + 1):
        if all(not _bad_window(ctx, u, l, k) for u in words):
            return k
    return None


@dataclass(frozen=True)
class Certificate:
    """Obstruction to openness at one cylinder: a family of points that
    agree with the image arbitrarily deep yet never lie in it."""

    cylinder: tuple
    radius: int  # cylinder pinned on [-radius, radius]
    family: PumpFamily
    mirrored: bool = False


def _stabilize_cycle(ctx: _Ctx, alpha: tuple):
    """Exact (Q, B) state left by the purely periodic history alpha^inf,
    aligned to a word boundary."""
    state = _start_state(ctx)
    seen = set()
    while state not in seen:
        seen.add(state)
        for s in alpha:
            q, b = state
            q2 = ctx.step_y(q, s)
            if not q2:
                return None
            state = (q2, ctx.step_d(b, s, None))
    return state


def _cycle_words(ctx: _Ctx) -> list:
    """Shortest cycle words through each reachable stationary state."""
    reach, succ = _stationary_graph(ctx)
    words = []
    for st in reach:
        seen = {st: ()}
        queue = deque([st])
        found = None
        while queue and found is None:
            cur = queue.popleft()
            for s, nxt in succ.get(cur, ()):
                if nxt == st:
                    found = seen[cur] + (s,)
                    break
                if nxt not in seen:
                    seen[nxt] = seen[cur] + (s,)
                    queue.append(nxt)
        if found and found not in words:
            words.append(found)
    return words


def _march_pins(ctx: _Ctx, state, pins) -> dict:
    """All (Q, B) states after the pinned zone, with the words chosen."""
    layer = {state: ()}
    for pin in pins:
        nxt = {}
        for st, wrd in layer.items():
            q, b = st
            for s in ctx.alphabet:
                q2 = ctx.step_y(q, s)
                if not q2:
                    continue
                st2 = (q2, ctx.step_d(b, s, pin))
                if st2 not in nxt:
                    nxt[st2] = wrd + (s,)
        layer = nxt
    return layer


def _bfs_words(ctx: _Ctx, start, stop=None) -> dict:
    """Shortest stationary words from `start` to every reachable state."""
    seen = {start: ()}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        if stop is not None and stop(st):
            continue
        for s, nxt in _stationary_edges(ctx, st):
            if nxt not in seen:
                seen[nxt] = seen[st] + (s,)
                queue.append(nxt)
    return seen


def _shortest_cycle_at(ctx: _Ctx, st):
    seen = {st: ()}
    queue = deque([st])
    while queue:
        cur = queue.popleft()
        for s, nxt in _stationary_edges(ctx, cur):
            if nxt == st:
                return seen[cur] + (s,)
            if nxt not in seen:
                seen[nxt] = seen[cur] + (s,)
                queue.append(nxt)
    return None


def _codomain_tail(ctx: _Ctx, q: frozenset):
    """A legal right-infinite continuation for the codomain threads:
    (head word, cycle word)."""
    seen = {q: ()}
    queue = deque([q])
    while queue:
        cur = queue.popleft()
        for s in ctx.alphabet:
            nxt = ctx.step_y(cur, s)
            if not nxt:
                continue
            if nxt == cur:
                return seen[cur], (s,)
            if nxt in seen:
                cyc = _q_cycle_at(ctx, nxt)
                if cyc:
                    return seen[cur] + (s,), cyc
            else:
                seen[nxt] = seen[cur] + (s,)
                queue.append(nxt)
    return None


def _q_cycle_at(ctx: _Ctx, q: frozenset):
    seen = {q: ()}
    queue = deque([q])
    while queue:
        cur = queue.popleft()
        for s in ctx.alphabet:
            nxt = ctx.step_y(cur, s)
            if not nxt:
                continue
            if nxt == q:
                return seen[cur] + (s,)
            if nxt not in seen:
                seen[nxt] = seen[cur] + (s,)
                queue.append(nxt)
    return None


def _certificate_for(ctx: _Ctx, u, l: int) -> Optional[PumpFamily]:
    """Rightward-pumping obstruction family at one cylinder, if found:
    ``alpha^inf pre [pins] mid pump^k death right^inf``."""
    pins = list(u)
    for alpha in _cycle_words(ctx):
        s_inf = _stabilize_cycle(ctx, alpha)
        if s_inf is None:
            continue
        for pre_state, w_pre in sorted(_bfs_words(ctx, s_inf).items(), key=repr):
            after = _march_pins(ctx, pre_state, pins)
            for st1, w_pins in sorted(after.items(), key=repr):
                found = _find_pump(ctx, st1)
                if found is None:
                    continue
                w_mid, pc, w_pump = found
                death = _path_to_death(ctx, pc)
                if death is None:
                    continue
                w_death, dstate = death
                tail = _codomain_tail(ctx, dstate[0])
                if tail is None:
                    continue
                w_tail, w_cycle = tail
                return PumpFamily(
                    left=alpha,
                    head=w_pre + w_pins + w_mid,
                    pump=w_pump,
                    tail=w_death + w_tail,
                    right=w_cycle,
                    offset=-l - len(w_pre),
                )
    return None


def _find_pump(ctx: _Ctx, start):
    """A reachable state with live preimage threads on a cycle and with a
    reachable thread death: (path word, state, cycle word)."""
    seen = {start: ()}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        if st[1] and _death_reachable(ctx, st):
            cyc = _shortest_cycle_at(ctx, st)
            if cyc is not None:
                return seen[st], st, cyc
        for s, nxt in _stationary_edges(ctx, st):
            if nxt not in seen:
                seen[nxt] = seen[st] + (s,)
                queue.append(nxt)
    return None


def _path_to_death(ctx: _Ctx, start):
    seen = {start: ()}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        if not st[1]:
            return seen[st], st
        for s, nxt in _stationary_edges(ctx, st):
            if nxt not in seen:
                seen[nxt] = seen[st] + (s,)
                queue.append(nxt)
    return None


def _reversed_code(c: BlockCode) -> BlockCode:
    dom = ShiftSpace(trim_essential(c.domain.presentation.reverse()), c.domain.kind)
    cod = ShiftSpace(trim_essential(c.codomain.presentation.reverse()), c.codomain.kind)
    return BlockCode(dom, cod, c.anticipation, c.memory, c.table)


def non_open_certificate(c: BlockCode, l_max: int) -> Optional[Certificate]:
    """Search cylinders up to radius l_max for a family of points that
    window-match the cylinder image arbitrarily deep but never lie in it.

    Families pump either to the right or, through the reversed code, to
    the left of the cylinder.
    """
    if not c.is_one_block:
        c = to_one_block(c)[0]
    ctx = _ctx(c)
    rev = _reversed_code(c)
    ctx_rev = _ctx(rev)
    for l in range(l_max + 1):
        for u in sorted(blocks(c.domain, 2 * l + 1), key=repr):
            fam = _certificate_for(ctx, u, l)
            if fam is not None:
                return Certificate(tuple(u), l, fam)
            fam = _certificate_for(ctx_rev, tuple(reversed(u)), l)
            if fam is not None:
                return Certificate(tuple(u), l, fam.mirrored(), mirrored=True)
    return None


def default_horizon(c: BlockCode) -> int:
    return 2 * len(determinize(c.codomain.presentation).vertices)


@dataclass(frozen=True)
class OpennessVerdict:
    status: str  # open | not_open | unknown
    route: str
    exact: bool = True
    witness: object = None
    horizon: Optional[int] = None

    @property
    def open(self) -> bool:
        return self.status == "open"


def is_open(
    c: BlockCode,
    horizon: Optional[int] = None,
    certificate_radius: int = 1,
    bounded_search: bool = True,
) -> OpennessVerdict:
    """Decision cascade: exact theorem routes first, then bounded search.

    Rules, in order: constant-to-one settles openness for finite-to-one
    codes from edge shifts; an onto code from an edge shift onto a
    strictly sofic image is not open; bi-closing with constant-to-one
    forces open; closing without constant-to-one forces not open;
    constant-to-one without bi-closing forces not open; otherwise
    cylinder witnesses are swept to a horizon and a certificate is
    searched.
    """
    from .fibers import is_constant_to_one, is_finite_to_one

    if not c.is_one_block:
        c = to_one_block(c)[0]
    if is_irreducible(c.codomain):
        fto = is_finite_to_one(c)
        if c.domain.kind == EDGE and fto.value:
            cto = is_constant_to_one(c)
            if cto.yes:
                return OpennessVerdict("open", "thm-4.2", True, cto)
            if cto.no:
                return OpennessVerdict("not_open", "thm-4.2", True, cto)
        if c.domain.kind == EDGE and not is_sft(c.codomain).is_sft and is_onto(c):
            return OpennessVerdict("not_open", "prop-2.3", True)
        bic = is_bi_closing(c)
        cto = is_constant_to_one(c)
        if bic.value and cto.yes:
            return OpennessVerdict("open", "thm-4.3", cto.exact, cto)
        closing = is_right_closing(c).value or is_left_closing(c).value
        if closing and cto.no:
            return OpennessVerdict("not_open", "thm-1.1", True, cto)
        if cto.yes and not bic.value:
            return OpennessVerdict("not_open", "thm-4.3", cto.exact, bic)
    if not bounded_search:
        return OpennessVerdict("unknown", "bounded-search-disabled", False)
    L = horizon if horizon is not None else default_horizon(c)
    k_map = {}
    for l in range(L + 1):
        k = open_witness(c, l, 2 * L + 2)
        if k is None:
            k_map = None
            break
        k_map[l] = k
    cert = non_open_certificate(c, certificate_radius)
    if cert is not None:
        if k_map is not None:
            raise AssertionError("witness sweep and certificate disagree")
        return OpennessVerdict("not_open", "cylinder-certificate", True, cert)
    if k_map is not None:
        return OpennessVerdict("open", f"witnessed(l<={L})", False, k_map, horizon=L)
    return OpennessVerdict("unknown", "search-exhausted", False, horizon=L)

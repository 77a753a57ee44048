"""Sliding block codes between presented shift spaces.

A code is stored as a block table: a total map from the allowed domain
words of length ``memory + anticipation + 1`` to codomain symbols.  Codes
between labeled presentations act on label sequences; two presenting
paths with equal labels are the same point.
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
    EDGE,
    LABELED,
    HigherBlock,
    blocks,
    higher_block,
    trim_essential,
)
from .language import determinize, language_equal
from .points import Point


@dataclass(frozen=True)
class BlockCode:
    """A sliding block code.

    The table must be defined on exactly the allowed domain words of
    length ``memory + anticipation + 1``; this is checked by
    :func:`validate_code`, not at construction.
    """

    domain: ShiftSpace
    codomain: ShiftSpace
    memory: int
    anticipation: int
    table: tuple  # sorted tuple of (window word, image symbol) pairs

    @staticmethod
    def make(domain, codomain, memory, anticipation, mapping) -> "BlockCode":
        items = tuple(sorted(((tuple(k), v) for k, v in dict(mapping).items()), key=repr))
        return BlockCode(domain, codomain, memory, anticipation, items)

    @staticmethod
    def one_block(domain, codomain, mapping) -> "BlockCode":
        return BlockCode.make(domain, codomain, 0, 0, {(k,): v for k, v in mapping.items()})

    @cached_property
    def mapping(self) -> dict:
        return dict(self.table)

    @property
    def window(self) -> int:
        return self.memory + self.anticipation + 1

    @property
    def is_one_block(self) -> bool:
        return self.window == 1

    def symbol_image(self, s):
        """Image of a single symbol; only valid for 1-block codes."""
        return self.mapping[(s,)]

    def apply_to_word(self, w: tuple) -> tuple:
        """Image of a domain word; shorter by window - 1."""
        n = self.window
        if len(w) < n:
            return ()
        return tuple(self.mapping[tuple(w[i : i + n])] for i in range(len(w) - n + 1))

    def apply_to_point(self, x: Point) -> Point:
        """Image of an eventually periodic point."""
        m, a = self.memory, self.anticipation
        lp, rp = len(x.left), len(x.right)
        lo = x.offset - lp * (1 + (m + a) // lp + 1)
        hi = x.offset + len(x.center) + rp * (1 + (m + a) // rp + 1)
        center = tuple(
            self.mapping[x.window(i - m, i + a + 1)] for i in range(lo, hi)
        )
        left = tuple(self.mapping[x.window(i - m, i + a + 1)] for i in range(lo - lp, lo))
        right = tuple(
            self.mapping[x.window(i - m, i + a + 1)] for i in range(hi, hi + rp)
        )
        return Point(left, center, right, lo)


def identity_code(x: ShiftSpace) -> BlockCode:
    return BlockCode.one_block(x, x, {s: s for s in x.alphabet})


@dataclass(frozen=True)
class Validation:
    ok: bool
    violation: Optional[tuple] = None  # shortest domain word with forbidden image

    def __bool__(self):
        return self.ok


def validate_code(c: BlockCode) -> Validation:
    """Check the table is total on allowed windows and image-sound.

    Soundness is a product reachability check between the domain window
    graph and the determinized codomain: no reachable dead state, meaning
    every image of an allowed domain word is an allowed codomain word.
    """
    need = blocks(c.domain, c.window)
    have = set(c.mapping)
    if need != have:
        missing = need - have
        extra = have - need
        bad = min(missing | extra, key=repr)
        raise ValueError(f"block table domain mismatch at {bad!r}")
    hb = higher_block(c.domain, c.window)
    dcod = determinize(c.codomain.presentation)
    if dcod.is_empty:
        w = min(need, key=lambda t: (len(t), repr(t)))
        return Validation(False, w)
    full = frozenset(dcod.vertices)
    dom = hb.space.presentation
    start = [(v, full) for v in dom.vertices]
    seen = set(start)
    queue = deque((s, None) for s in start)
    parents = {}
    while queue:
        (v, sub), _ = queue.popleft()
        for e in dom._out[v]:
            sym = c.mapping[hb.decode[e.label]]
            nsub = frozenset(
                t for q in sub for t in [_det_step(dcod, q, sym)] if t is not None
            )
            key = (e.dst, nsub)
            if not nsub:
                # rebuild the offending domain word
                wordpath = _trace(parents, (v, sub)) + (e,)
                w = _domain_word(hb, wordpath)
                return Validation(False, w)
            if key not in seen:
                seen.add(key)
                parents[key] = ((v, sub), e)
                queue.append((key, None))
    return Validation(True)


def _det_step(p: LabeledPresentation, state, label):
    for e in p._out[state]:
        if e.label == label:
            return e.dst
    return None


def _trace(parents, key):
    path = []
    while key in parents:
        key, e = parents[key]
        path.append(e)
    return tuple(reversed(path))


def _domain_word(hb: HigherBlock, path):
    """Domain word spelled by a path of the window-graph presentation."""
    first = hb.decode[path[0].label]
    rest = tuple(hb.decode[e.label][-1] for e in path[1:])
    return tuple(first) + rest


def to_one_block(c: BlockCode):
    """Recoding of `c` to a 1-block code on a conjugate domain.

    Returns ``(one_block_code, conjugacy)`` where the conjugacy maps the
    original domain onto the recoded one and ``c = one_block o conjugacy``
    coordinatewise.
    """
    if c.is_one_block:
        return c, identity_code(c.domain)
    hb = higher_block(c.domain, c.window)
    table = {(sym,): c.mapping[hb.decode[sym]] for sym in hb.space.alphabet}
    c1 = BlockCode.make(hb.space, c.codomain, 0, 0, table)
    conj = BlockCode.make(
        c.domain,
        hb.space,
        c.memory,
        c.anticipation,
        {w: hb.encode[w] for w in blocks(c.domain, c.window)},
    )
    return c1, conj


def compose(f: BlockCode, g: BlockCode) -> BlockCode:
    """The code ``f o g``; memory and anticipation add."""
    if not language_equal(g.codomain, f.domain):
        raise ValueError("mismatched interface spaces")
    m = f.memory + g.memory
    a = f.anticipation + g.anticipation
    n = m + a + 1
    table = {}
    for w in blocks(g.domain, n):
        mid = g.apply_to_word(w)
        table[w] = f.apply_to_word(mid)[0]
    return BlockCode.make(g.domain, f.codomain, m, a, table)


@lru_cache(maxsize=None)
def image_presentation(c: BlockCode) -> ShiftSpace:
    """Presentation of the image: relabel domain edges through the table.

    The code is recoded to 1-block first when needed.
    """
    c1 = c if c.is_one_block else to_one_block(c)[0]
    p = c1.domain.presentation
    relabeled = p.relabel(lambda s: c1.mapping[(s,)])
    return ShiftSpace(trim_essential(relabeled), LABELED)


@lru_cache(maxsize=None)
def is_onto(c: BlockCode) -> bool:
    return language_equal(image_presentation(c), c.codomain)

"""Eventually periodic points and word helpers.

A point is stored as ``left^inf . center . right^inf`` with the center
occupying coordinates ``[offset, offset + len(center))``; the left cycle
fills everything below and the right cycle everything above.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def format_word(w) -> str:
    return ".".join(str(s) for s in w)


def parse_word(text: str) -> tuple:
    if text == "":
        return ()
    return tuple(text.split("."))


def primitive_root(w: tuple) -> tuple:
    """Shortest word whose repetition gives `w`."""
    n = len(w)
    for p in range(1, n + 1):
        if n % p == 0 and w == w[:p] * (n // p):
            return w[:p]
    return w


def least_rotation(w: tuple) -> tuple:
    return min(w[i:] + w[:i] for i in range(len(w))) if w else w


@dataclass(frozen=True)
class Point:
    """An eventually periodic bi-infinite sequence."""

    left: tuple
    center: tuple
    right: tuple
    offset: int = 0

    def __post_init__(self):
        if not self.left or not self.right:
            raise ValueError("left and right cycles must be nonempty")

    @staticmethod
    def periodic(w: tuple, offset: int = 0) -> "Point":
        if not w:
            raise ValueError("periodic word must be nonempty")
        return Point(tuple(w), (), tuple(w), offset)

    def __getitem__(self, i: int):
        j = i - self.offset
        if 0 <= j < len(self.center):
            return self.center[j]
        if j < 0:
            return self.left[j % len(self.left)]
        j -= len(self.center)
        return self.right[j % len(self.right)]

    def window(self, start: int, stop: int) -> tuple:
        return tuple(self[i] for i in range(start, stop))

    def shift(self, k: int) -> "Point":
        """sigma^k of the point: coordinate i of the result is i+k here."""
        return Point(self.left, self.center, self.right, self.offset - k)

    def is_periodic_with(self, p: int) -> bool:
        span = len(self.center) + 2 * (abs(self.offset) + len(self.left) + len(self.right) + p)
        return all(self[i] == self[i + p] for i in range(-span, span))

    def min_period(self):
        """Least period if the point is periodic, else None."""
        for p in range(1, len(self.left) * len(self.right) + len(self.center) + 1):
            if self.is_periodic_with(p):
                return p
        return None

    def __eq__(self, other):
        if not isinstance(other, Point):
            return NotImplemented
        lo = min(self.offset, other.offset)
        hi = max(
            self.offset + len(self.center),
            other.offset + len(other.center),
        )
        pad = len(self.left) * len(other.left) + len(self.right) * len(other.right)
        lo -= pad + 1
        hi += pad + 1
        # two eventually periodic sequences agreeing on a window wider than
        # transient extents plus joint tail periods agree everywhere
        return all(self[i] == other[i] for i in range(lo, hi))

    def __hash__(self):
        lp = primitive_root(self.left)
        rp = primitive_root(self.right)
        return hash((least_rotation(lp), least_rotation(rp)))

    def __repr__(self):
        return (
            f"...{format_word(self.left)} | {format_word(self.center)}"
            f" | {format_word(self.right)}... @ {self.offset}"
        )


def metric_distance(x: Point, y: Point, horizon: int = 64) -> float:
    """2^-r with r the least |i| where the points differ; 0 when equal
    within the decidable horizon (which is exact for schema points)."""
    if x == y:
        return 0.0
    for r in range(horizon + 1):
        if x[r] != y[r] or x[-r] != y[-r]:
            return 2.0 ** (-r)
    return 2.0 ** (-horizon)


@dataclass(frozen=True)
class PumpFamily:
    """Family of points ``left^inf head pump^k tail right^inf``.

    Used for certificates whose witness needs arbitrarily deep agreement:
    member `k` pushes the tail `k` pump lengths further out.  When
    `grow_left` is set the center grows to the left instead, keeping the
    tail anchored.
    """

    left: tuple
    head: tuple
    pump: tuple
    tail: tuple
    right: tuple
    offset: int = 0
    grow_left: bool = False

    def member(self, k: int) -> Point:
        center = self.head + self.pump * k + self.tail
        offset = self.offset - (k * len(self.pump) if self.grow_left else 0)
        return Point(self.left, center, self.right, offset)

    def mirrored(self) -> "PumpFamily":
        """The family of coordinate-reversed members: member(k)[i] of the
        result equals member(k)[-i] of the original."""
        rev = lambda w: tuple(reversed(w))
        base = 1 - self.offset - len(self.head) - len(self.tail)
        return PumpFamily(
            left=rev(self.right),
            head=rev(self.tail),
            pump=rev(self.pump),
            tail=rev(self.head),
            right=rev(self.left),
            offset=base,
            grow_left=not self.grow_left,
        )

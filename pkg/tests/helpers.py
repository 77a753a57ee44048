"""Shared fixtures: the small menagerie of spaces and codes used across
the test suite."""

from shiftcodes.presentation import LabeledPresentation, ShiftSpace
from shiftcodes.codes import BlockCode


def golden_mean_edge():
    p = LabeledPresentation.build(
        (1, 2), [("a", 1, 1, "a"), ("b", 1, 2, "b"), ("c", 2, 1, "c")]
    )
    return ShiftSpace.edge_shift(p)


def full_shift(symbols=("a", "b")):
    p = LabeledPresentation.build((0,), [(s, 0, 0, s) for s in symbols])
    return ShiftSpace.labeled(p)


def even_shift():
    p = LabeledPresentation.build(
        (1, 2), [("e_a", 1, 1, "a"), ("e_b1", 1, 2, "b"), ("e_b2", 2, 1, "b")]
    )
    return ShiftSpace.labeled(p)


def even_cover_code():
    """The right-resolving cover of the even shift with its labeling."""
    p = LabeledPresentation.build(
        (1, 2), [("a", 1, 1, None), ("b1", 1, 2, None), ("b2", 2, 1, None)]
    )
    dom = ShiftSpace.edge_shift(p)
    cod = even_shift()
    return BlockCode.one_block(dom, cod, {"a": "a", "b1": "b", "b2": "b"})


def parity_presentation():
    """Two parity states with loops labeled a and crossing edges b1, b2."""
    return LabeledPresentation.build(
        ("p0", "p1"),
        [
            ("l0", "p0", "p0", "a"),
            ("l1", "p1", "p1", "a"),
            ("x0", "p0", "p1", "b1"),
            ("x1", "p1", "p0", "b2"),
        ],
    )


def subscript_drop_code():
    """The identifying code from the glued presentation onto the full
    2-shift."""
    dom = ShiftSpace.labeled(parity_presentation())
    cod = full_shift(("a", "b"))
    return BlockCode.one_block(dom, cod, {"a": "a", "b1": "b", "b2": "b"})


def parity_cover_code():
    """Two-phase covering of the full 2-shift; bi-resolving and 2-to-1."""
    p = LabeledPresentation.build(
        ("P", "Q"),
        [
            ("a1", "P", "Q", None),
            ("b1", "P", "Q", None),
            ("a2", "Q", "P", None),
            ("b2", "Q", "P", None),
        ],
    )
    dom = ShiftSpace.edge_shift(p)
    cod = full_shift(("a", "b"))
    return BlockCode.one_block(
        dom, cod, {"a1": "a", "a2": "a", "b1": "b", "b2": "b"}
    )


def two_orbit_code():
    """Three periodic orbits collapsing onto two fixed points."""
    dp = LabeledPresentation.build(
        ("A", "B", "C"),
        [("0", "A", "B", "0"), ("1", "B", "A", "1"), ("2", "C", "C", "2")],
    )
    dom = ShiftSpace.edge_shift(dp)
    cp = LabeledPresentation.build(
        ("P", "Q"), [("la", "P", "P", "a"), ("lb", "Q", "Q", "b")]
    )
    cod = ShiftSpace.labeled(cp)
    return BlockCode.one_block(dom, cod, {"0": "a", "1": "a", "2": "b"})


def tagged_even_code():
    """Two tagged copies of the even-shift cover, collapsing the tags.

    The domain allows a1/a2 loops on separate components whose b-pairs
    spell the same image, so the code is 2-to-1 everywhere but neither
    closing nor open.
    """
    p = LabeledPresentation.build(
        ("s10", "s11", "s20", "s21"),
        [
            ("e1a", "s10", "s10", "a1"),
            ("e1b1", "s10", "s11", "b1"),
            ("e1b2", "s11", "s10", "b2"),
            ("e2a", "s20", "s20", "a2"),
            ("e2b1", "s20", "s21", "b1"),
            ("e2b2", "s21", "s20", "b2"),
        ],
    )
    dom = ShiftSpace.labeled(p)
    cod = even_shift()
    return BlockCode.one_block(
        dom, cod, {"a1": "a", "a2": "a", "b1": "b", "b2": "b"}
    )

"""Built-in corpus: the worked examples every build must reproduce.

Each entry carries a document, the code under test, and the expected
discrete verdicts; the expectations are locked bit-for-bit by the test
suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .codes import BlockCode
from .documents import Document
from .points import Point
from .presentation import LabeledPresentation, ShiftSpace


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    document: Document
    code_name: str
    expected: dict
    notes: str = ""


def even_shift_space() -> ShiftSpace:
    return ShiftSpace.labeled(
        LabeledPresentation.build(
            ("s1", "s2"),
            [("ea", "s1", "s1", "a"), ("eb1", "s1", "s2", "b"), ("eb2", "s2", "s1", "b")],
        )
    )


def full_two_shift() -> ShiftSpace:
    return ShiftSpace.labeled(
        LabeledPresentation.build(("q",), [("a", "q", "q", "a"), ("b", "q", "q", "b")])
    )


def golden_mean_space() -> ShiftSpace:
    return ShiftSpace.edge_shift(
        LabeledPresentation.build(
            ("g1", "g2"), [("a", "g1", "g1", "a"), ("b", "g1", "g2", "b"), ("c", "g2", "g1", "c")]
        )
    )


def even_cover_entry() -> CorpusEntry:
    cover_dom = ShiftSpace.edge_shift(
        LabeledPresentation.build(
            ("c1", "c2"),
            [("a", "c1", "c1", "a"), ("b1", "c1", "c2", "b1"), ("b2", "c2", "c1", "b2")],
        )
    )
    y = even_shift_space()
    code = BlockCode.one_block(cover_dom, y, {"a": "a", "b1": "b", "b2": "b"})
    doc = Document({"cover": cover_dom, "even": y}, {"pi": code})
    return CorpusEntry(
        name="even-cover",
        document=doc,
        code_name="pi",
        expected={
            "bi_closing": True,
            "right_closing": True,
            "left_closing": True,
            "constant_to_one": "no",
            "open": "not_open",
            "degree": 1,
            "finite_to_one": True,
            "onto": True,
            "fiber_counts": {"b": 2, "a": 1},
        },
        notes="bi-resolving cover of the even shift",
    )


def glued_fixed_points_entry() -> CorpusEntry:
    dom = ShiftSpace.labeled(
        LabeledPresentation.build(
            ("p0", "p1"),
            [
                ("l0", "p0", "p0", "a"),
                ("l1", "p1", "p1", "a"),
                ("x0", "p0", "p1", "b1"),
                ("x1", "p1", "p0", "b2"),
            ],
        )
    )
    cod = full_two_shift()
    code = BlockCode.one_block(dom, cod, {"a": "a", "b1": "b", "b2": "b"})
    doc = Document({"glued": dom, "full2": cod}, {"drop": code})
    return CorpusEntry(
        name="subscript-drop",
        document=doc,
        code_name="drop",
        expected={
            "open": "open",
            "right_closing": False,
            "left_closing": False,
            "bi_closing": False,
            "constant_to_one": "no",
            "finite_to_one": True,
            "onto": True,
            "fiber_counts": {"a": 1, "b": 2, "a.b": 2},
        },
        notes="open code that is neither closing nor constant-to-one",
    )


def tagged_even_entry() -> CorpusEntry:
    dom = ShiftSpace.labeled(
        LabeledPresentation.build(
            ("t10", "t11", "t20", "t21"),
            [
                ("e1a", "t10", "t10", "a1"),
                ("e1b1", "t10", "t11", "b1"),
                ("e1b2", "t11", "t10", "b2"),
                ("e2a", "t20", "t20", "a2"),
                ("e2b1", "t20", "t21", "b1"),
                ("e2b2", "t21", "t20", "b2"),
            ],
        )
    )
    cod = even_shift_space()
    code = BlockCode.one_block(
        dom, cod, {"a1": "a", "a2": "a", "b1": "b", "b2": "b"}
    )
    doc = Document({"tagged": dom, "even": cod}, {"drop2": code})
    return CorpusEntry(
        name="tagged-even",
        document=doc,
        code_name="drop2",
        expected={
            "constant_to_one": "yes",
            "constant_to_one_d": 2,
            "right_closing": False,
            "left_closing": False,
            "open": "not_open",
            "finite_to_one": True,
            "onto": True,
            "cross_sections": "not bi-closing",
        },
        notes="2-to-1 everywhere, neither closing nor open",
    )


def two_orbit_entry() -> CorpusEntry:
    dom = ShiftSpace.edge_shift(
        LabeledPresentation.build(
            ("A", "B", "C"),
            [("0", "A", "B", "0"), ("1", "B", "A", "1"), ("2", "C", "C", "2")],
        )
    )
    cod = ShiftSpace.labeled(
        LabeledPresentation.build(
            ("P", "Q"), [("la", "P", "P", "a"), ("lb", "Q", "Q", "b")]
        )
    )
    code = BlockCode.one_block(dom, cod, {"0": "a", "1": "a", "2": "b"})
    doc = Document({"orbits": dom, "pair": cod}, {"collapse": code})
    return CorpusEntry(
        name="two-orbit",
        document=doc,
        code_name="collapse",
        expected={
            "open": "open",
            "bi_closing": True,
            "constant_to_one": "no",
            "codomain_irreducible": False,
        },
        notes="irreducibility of the codomain is necessary",
    )


def parity_cover_entry() -> CorpusEntry:
    dom = ShiftSpace.edge_shift(
        LabeledPresentation.build(
            ("P", "Q"),
            [
                ("a1", "P", "Q", "a1"),
                ("b1", "P", "Q", "b1"),
                ("a2", "Q", "P", "a2"),
                ("b2", "Q", "P", "b2"),
            ],
        )
    )
    cod = full_two_shift()
    code = BlockCode.one_block(dom, cod, {"a1": "a", "a2": "a", "b1": "b", "b2": "b"})
    doc = Document({"double": dom, "full2": cod}, {"halve": code})
    return CorpusEntry(
        name="parity-cover",
        document=doc,
        code_name="halve",
        expected={
            "bi_closing": True,
            "constant_to_one": "yes",
            "constant_to_one_d": 2,
            "open": "open",
            "degree": 2,
        },
        notes="bi-covering 2-to-1 code onto the full 2-shift",
    )


def golden_identity_entry() -> CorpusEntry:
    x = golden_mean_space()
    code = BlockCode.one_block(x, x, {s: s for s in x.alphabet})
    doc = Document({"golden": x}, {"id": code})
    return CorpusEntry(
        name="golden-identity",
        document=doc,
        code_name="id",
        expected={
            "bi_closing": True,
            "constant_to_one": "yes",
            "constant_to_one_d": 1,
            "open": "open",
            "degree": 1,
        },
    )


def full_identity_entry() -> CorpusEntry:
    x = full_two_shift()
    code = BlockCode.one_block(x, x, {s: s for s in x.alphabet})
    doc = Document({"full2": x}, {"id": code})
    return CorpusEntry(
        name="full-identity",
        document=doc,
        code_name="id",
        expected={
            "bi_closing": True,
            "constant_to_one": "yes",
            "constant_to_one_d": 1,
            "open": "open",
            "degree": 1,
        },
    )


def non_aft_entry() -> CorpusEntry:
    """An irreducible strictly sofic space whose minimal cover is not
    left closing, for the almost-finite-type classifier."""
    space = ShiftSpace.labeled(
        LabeledPresentation.build(
            ("n1", "n2", "n3"),
            [
                ("f1", "n1", "n1", "a"),
                ("f2", "n1", "n1", "e"),
                ("f3", "n1", "n3", "b"),
                ("f4", "n2", "n2", "a"),
                ("f5", "n2", "n3", "b"),
                ("f6", "n3", "n1", "c"),
                ("f7", "n3", "n2", "d"),
            ],
        )
    )
    code = BlockCode.one_block(space, space, {s: s for s in space.alphabet})
    doc = Document({"nonaft": space}, {"id": code})
    return CorpusEntry(
        name="non-aft",
        document=doc,
        code_name="id",
        expected={"domain_class": "strictly-sofic-non-AFT"},
        notes="label-equal loops merging into one state break left closing",
    )


def corpus() -> list:
    return [
        even_cover_entry(),
        glued_fixed_points_entry(),
        tagged_even_entry(),
        two_orbit_entry(),
        parity_cover_entry(),
        golden_identity_entry(),
        full_identity_entry(),
        non_aft_entry(),
    ]


def parity_section(y: Point, swap: bool = False) -> Point:
    """Hand-coded cross section of the subscript-dropping code.

    Replaces each b by a subscripted copy according to the count of b's
    between the coordinate and the origin; `swap` exchanges the roles of
    the two subscripts.  Continuous but not shift-commuting.
    """
    b_odd_pos, b_even_pos = ("b1", "b2") if not swap else ("b2", "b1")
    b_odd_neg, b_even_neg = ("b2", "b1") if not swap else ("b1", "b2")

    def sub(i):
        s = y[i]
        if s != "b":
            return s
        if i >= 0:
            count = sum(1 for j in range(0, i + 1) if y[j] == "b")
            return b_odd_pos if count % 2 == 1 else b_even_pos
        count = sum(1 for j in range(i, 0) if y[j] == "b")
        return b_odd_neg if count % 2 == 1 else b_even_neg

    pl, pr = 2 * len(y.left), 2 * len(y.right)
    lo = min(y.offset, 0) - 2 * pl
    hi = max(y.offset + len(y.center), 1) + 2 * pr
    return Point(
        tuple(sub(i) for i in range(lo - pl, lo)),
        tuple(sub(i) for i in range(lo, hi)),
        tuple(sub(i) for i in range(hi, hi + pr)),
        lo,
    )

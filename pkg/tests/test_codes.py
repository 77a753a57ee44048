import pytest

from shiftcodes.codes import (
    BlockCode,
    compose,
    identity_code,
    image_presentation,
    is_onto,
    to_one_block,
    validate_code,
)
from shiftcodes.language import language_equal
from shiftcodes.presentation import LabeledPresentation, ShiftSpace, blocks
from shiftcodes.points import Point

from helpers import (
    even_cover_code,
    even_shift,
    full_shift,
    golden_mean_edge,
    subscript_drop_code,
)


def test_validate_even_cover():
    assert validate_code(even_cover_code()).ok


def test_validate_subscript_drop():
    assert validate_code(subscript_drop_code()).ok


def test_validate_violation_reports_shortest_word():
    # b maps to a symbol missing from the codomain alphabet
    dom = golden_mean_edge()
    cod = full_shift(("y",))
    c = BlockCode.one_block(dom, cod, {"a": "y", "b": "x", "c": "y"})
    v = validate_code(c)
    assert not v.ok
    assert v.violation == ("b",)


def test_validate_rejects_partial_table():
    dom = golden_mean_edge()
    cod = full_shift(("y",))
    c = BlockCode.one_block(dom, cod, {"a": "y", "b": "y"})
    with pytest.raises(ValueError):
        validate_code(c)


def test_image_presentation_even_cover():
    c = even_cover_code()
    assert language_equal(image_presentation(c), even_shift())
    assert is_onto(c)


def test_image_presentation_subscript_drop():
    c = subscript_drop_code()
    assert language_equal(image_presentation(c), full_shift(("a", "b")))
    assert is_onto(c)


def test_identity_image():
    c = identity_code(golden_mean_edge())
    assert language_equal(image_presentation(c), c.domain)


def xor_code():
    """A two-block map on the full 2-shift: output depends on the window
    (x_{i-1}, x_i)."""
    dom = full_shift(("0", "1"))
    cod = full_shift(("0", "1"))
    table = {}
    for w in blocks(dom, 2):
        table[w] = "1" if w[0] != w[1] else "0"
    return BlockCode.make(dom, cod, 1, 0, table)


def test_to_one_block_window_agreement():
    c = xor_code()
    c1, conj = to_one_block(c)
    assert c1.is_one_block
    assert len(c1.domain.presentation.edges) == 4
    for w in blocks(c.domain, 6):
        via_conj = c1.apply_to_word(conj.apply_to_word(w))
        assert via_conj == c.apply_to_word(w)


def test_to_one_block_identity_on_one_block():
    c = even_cover_code()
    c1, conj = to_one_block(c)
    assert c1 is c
    assert conj.mapping == identity_code(c.domain).mapping


def test_compose_with_identity():
    c = subscript_drop_code()
    comp = compose(c, identity_code(c.domain))
    for w in blocks(c.domain, 5):
        assert comp.apply_to_word(w) == c.apply_to_word(w)


def test_compose_one_block_codes():
    f = subscript_drop_code()
    swap = BlockCode.one_block(
        f.codomain, f.codomain, {"a": "b", "b": "a"}
    )
    g = compose(swap, f)
    assert g.is_one_block
    assert g.apply_to_word(("a", "b1")) == ("b", "a")


def test_compose_associative_on_blocks():
    f = subscript_drop_code()
    swap = BlockCode.one_block(f.codomain, f.codomain, {"a": "b", "b": "a"})
    left = compose(swap, compose(swap, f))
    right = compose(compose(swap, swap), f)
    for w in blocks(f.domain, 5):
        assert left.apply_to_word(w) == right.apply_to_word(w)


def test_compose_rejects_mismatched_interfaces():
    with pytest.raises(ValueError):
        compose(subscript_drop_code(), even_cover_code())


def test_apply_to_point_periodic():
    c = subscript_drop_code()
    x = Point.periodic(("b1", "b2"))
    y = c.apply_to_point(x)
    assert all(y[i] == "b" for i in range(-6, 6))


def test_apply_to_point_window_convention():
    c = xor_code()
    x = Point(("0",), ("1",), ("0",), 0)  # ...000 1 000...
    y = c.apply_to_point(x)
    # memory 1: coordinate i sees (x_{i-1}, x_i)
    assert y[0] == "1" and y[1] == "1"
    assert y[-1] == "0" and y[2] == "0"

import math

import pytest

from shiftcodes.codes import BlockCode, identity_code
from shiftcodes.fibers import (
    degree,
    fiber_of_periodic,
    is_constant_to_one,
    is_finite_to_one,
    periodic_words,
    word_spread,
)
from shiftcodes.presentation import LabeledPresentation, ShiftSpace

from helpers import (
    even_cover_code,
    full_shift,
    golden_mean_edge,
    parity_cover_code,
    subscript_drop_code,
    tagged_even_code,
    two_orbit_code,
)
import oracles


def collapse_all_code():
    dom = full_shift(("a", "b"))
    cod = full_shift(("u",))
    return BlockCode.one_block(dom, cod, {"a": "u", "b": "u"})


def test_fiber_even_cover_b_infinity():
    rep = fiber_of_periodic(even_cover_code(), ("b",))
    assert rep.count == 2


def test_fiber_even_cover_a_infinity():
    rep = fiber_of_periodic(even_cover_code(), ("a",))
    assert rep.count == 1


def test_fiber_subscript_drop():
    c = subscript_drop_code()
    assert fiber_of_periodic(c, ("a",)).count == 1
    assert fiber_of_periodic(c, ("a", "b")).count == 2
    assert fiber_of_periodic(c, ("b",)).count == 2


def test_fiber_points_map_back():
    c = subscript_drop_code()
    rep = fiber_of_periodic(c, ("a", "b"))
    for x in rep.points:
        for i in range(-6, 6):
            expected = ("a", "b")[i % 2]
            assert c.mapping[(x[i],)] == expected


def test_fiber_rotation_counts_match():
    c = subscript_drop_code()
    assert (
        fiber_of_periodic(c, ("a", "b")).count
        == fiber_of_periodic(c, ("b", "a")).count
    )


def test_fiber_rejects_foreign_point():
    with pytest.raises(ValueError):
        fiber_of_periodic(even_cover_code(), ("a", "b", "a"))


def test_fiber_infinite_collapse():
    rep = fiber_of_periodic(collapse_all_code(), ("u",))
    assert rep.count is math.inf


def test_finite_to_one_verdicts():
    assert is_finite_to_one(even_cover_code()).value
    assert is_finite_to_one(tagged_even_code()).value
    assert not is_finite_to_one(collapse_all_code()).value
    assert is_finite_to_one(subscript_drop_code()).value
    assert is_finite_to_one(two_orbit_code()).value


def test_finite_to_one_matches_oracle_on_fixtures():
    for c in (
        even_cover_code(),
        tagged_even_code(),
        subscript_drop_code(),
        collapse_all_code(),
        parity_cover_code(),
        two_orbit_code(),
    ):
        assert is_finite_to_one(c).value == oracles.oracle_finite_to_one(c)


def test_word_spread_even_cover():
    rep = word_spread(even_cover_code(), ("a",))
    assert rep.symbol_sets[0] == frozenset({"a"})
    assert rep.spread == 1


def test_word_spread_subscript_drop():
    # both a-loops carry the same label, so the label-level set is {a}
    rep = word_spread(subscript_drop_code(), ("a",))
    assert rep.symbol_sets[0] == frozenset({"a"})
    assert rep.spread == 1


def test_word_spread_monotone_under_extension():
    c = even_cover_code()
    for w in [("a",), ("b",), ("a", "b"), ("b", "b")]:
        base = word_spread(c, w).spread
        for s in ("a", "b"):
            from shiftcodes.presentation import contains_word

            if contains_word(c.codomain, w + (s,)):
                assert word_spread(c, w + (s,)).spread <= base


def test_degree_even_cover():
    rep = degree(even_cover_code())
    assert rep.degree == 1


def test_degree_parity_cover():
    rep = degree(parity_cover_code())
    assert rep.degree == 2


def test_degree_identity():
    rep = degree(identity_code(golden_mean_edge()))
    assert rep.degree == 1


def test_degree_subscript_drop():
    rep = degree(subscript_drop_code(), facts={"open": True})
    assert rep.degree == 2


def test_degree_tagged_even():
    rep = degree(tagged_even_code())
    assert rep.degree == 2 and rep.route == "uniform-scan"


def test_cto_even_cover_no():
    v = is_constant_to_one(even_cover_code())
    assert v.no
    (w1, c1), (w2, c2) = v.witness
    assert {c1, c2} == {1, 2}


def test_cto_subscript_drop_no():
    assert is_constant_to_one(subscript_drop_code()).no


def test_cto_parity_cover_yes():
    v = is_constant_to_one(parity_cover_code())
    assert v.yes and v.d == 2 and v.route == "cover-lift" and v.exact


def test_cto_tagged_even_yes_scanned():
    v = is_constant_to_one(tagged_even_code(), scan_bound=10)
    assert v.yes and v.d == 2
    assert not v.exact


def test_cto_two_orbit_no():
    v = is_constant_to_one(two_orbit_code())
    assert v.no


def test_cto_identity_yes():
    v = is_constant_to_one(identity_code(golden_mean_edge()))
    assert v.yes and v.d == 1 and v.exact


def test_cto_yes_means_uniform_scanned_fibers():
    for c, bound in ((parity_cover_code(), 6), (tagged_even_code(), 8)):
        v = is_constant_to_one(c, scan_bound=bound)
        assert v.yes
        for w in periodic_words(c.codomain, bound):
            assert fiber_of_periodic(c, w).count == v.d


def test_lemma_fiber_bounds():
    """Open codes have fibers at most the degree; bi-closing codes at
    least the degree; edge-shift domains at least the degree."""
    c = subscript_drop_code()  # open, degree 2
    for w in periodic_words(c.codomain, 6):
        assert fiber_of_periodic(c, w).count <= 2
    c = even_cover_code()  # bi-closing, degree 1, edge domain
    for w in periodic_words(c.codomain, 6):
        assert fiber_of_periodic(c, w).count >= 1

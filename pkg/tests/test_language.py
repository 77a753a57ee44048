import random

import pytest

from shiftcodes.presentation import LabeledPresentation, ShiftSpace, blocks
from shiftcodes.language import (
    determinize,
    find_synchronizing_word,
    is_intrinsically_synchronizing,
    is_irreducible,
    is_nonwandering,
    is_sft,
    language_components,
    language_equal,
    separating_word,
)

from helpers import even_shift, full_shift, golden_mean_edge, parity_presentation


def brute_words(x, n):
    """Independent word enumeration by walking raw presentation paths."""
    p = x.presentation
    out = set()

    def walk(v, acc):
        if len(acc) == n:
            out.add(acc)
            return
        for e in p._out[v]:
            walk(e.dst, acc + (e.label,))

    for v in p.vertices:
        walk(v, ())
    return out


@pytest.mark.parametrize("space", [even_shift(), golden_mean_edge(), full_shift()])
def test_determinize_preserves_language(space):
    d = ShiftSpace.labeled(determinize(space.presentation))
    for n in range(1, 6):
        assert brute_words(space, n) == brute_words(d, n)
    assert d.presentation.is_deterministic()


def redundant_even_shift():
    """A four-state presentation of the even shift built by splitting a
    state of the standard cover."""
    return ShiftSpace.labeled(
        LabeledPresentation.build(
            (1, 2, 3, 4),
            [
                ("a1", 1, 1, "a"),
                ("b1", 1, 2, "b"),
                ("b2", 2, 1, "b"),
                ("a2", 1, 3, "a"),
                ("a3", 3, 3, "a"),
                ("b3", 3, 4, "b"),
                ("b4", 4, 3, "b"),
            ],
        )
    )


def test_language_equal_redundant_presentation():
    assert language_equal(even_shift(), redundant_even_shift())


def test_language_equal_distinguishes():
    # golden mean over {a, b} forbids bb; the even shift allows it
    p = LabeledPresentation.build(
        (1, 2), [("e1", 1, 1, "a"), ("e2", 1, 2, "b"), ("e3", 2, 1, "a")]
    )
    gm = ShiftSpace.labeled(p)
    assert not language_equal(even_shift(), gm)
    w = separating_word(even_shift(), gm)
    assert w is not None and ("b", "b") == w[: len(w)]


def test_language_equal_reflexive():
    x = even_shift()
    assert language_equal(x, x)


def test_language_equal_equivalence_on_triples():
    spaces = [even_shift(), redundant_even_shift(), golden_mean_edge()]
    for a in spaces:
        for b in spaces:
            if language_equal(a, b):
                assert language_equal(b, a)
            for c in spaces:
                if language_equal(a, b) and language_equal(b, c):
                    assert language_equal(a, c)


def test_is_irreducible():
    assert is_irreducible(golden_mean_edge())
    assert is_irreducible(even_shift())
    two = ShiftSpace.labeled(
        LabeledPresentation.build(
            (1, 2), [("a", 1, 1, "a"), ("b", 2, 2, "b")]
        )
    )
    assert not is_irreducible(two)


def test_is_sft_golden_mean():
    v = is_sft(golden_mean_edge())
    assert v.is_sft and v.step == 1


def test_is_sft_full_shift():
    v = is_sft(full_shift())
    assert v.is_sft and v.step == 0


def test_is_sft_even_shift():
    v = is_sft(even_shift())
    assert not v.is_sft


def test_is_sft_glued_parity():
    v = is_sft(ShiftSpace.labeled(parity_presentation()))
    assert not v.is_sft


def test_sft_verdict_matches_step_oracle():
    """Brute-force k-step check: uw, wv allowed with |w| = k forces uwv."""

    def is_k_step(x, k, max_side=4):
        for w in blocks(x, k):
            for un in range(1, max_side):
                for u in blocks(x, un):
                    from shiftcodes.presentation import contains_word

                    if not contains_word(x, u + w):
                        continue
                    for vn in range(1, max_side):
                        for v in blocks(x, vn):
                            if contains_word(x, w + v) and not contains_word(
                                x, u + w + v
                            ):
                                return False
        return True

    gm = golden_mean_edge()
    assert not is_k_step(gm, 0)
    assert is_k_step(gm, 1)
    ev = even_shift()
    for k in range(4):
        assert not is_k_step(ev, k)


def test_synchronizing_word_even_shift():
    w = find_synchronizing_word(even_shift())
    assert w is not None
    assert is_intrinsically_synchronizing(even_shift(), w)


def test_intrinsic_synchronization_examples():
    ev = even_shift()
    # a focuses the cover to its single a-state
    assert is_intrinsically_synchronizing(ev, ("a",))
    # b does not: ba and ab are words, bab is not... (aba is forbidden)
    assert not is_intrinsically_synchronizing(ev, ("b",))
    # every word of a full shift synchronizes trivially
    assert is_intrinsically_synchronizing(full_shift(), ("a",))


def test_nonwandering_language_level():
    x = ShiftSpace.labeled(parity_presentation())
    assert is_nonwandering(x)
    p = LabeledPresentation.build(
        (1, 2), [("a", 1, 1, "a"), ("t", 1, 2, "b"), ("b", 2, 2, "a")]
    )
    y = ShiftSpace.labeled(p)
    # u = b admits no return: b occurs once per point
    assert not is_nonwandering(y)


def test_nonwandering_edge_level():
    p = LabeledPresentation.build(
        (1, 2), [("a", 1, 1, "a"), ("t", 1, 2, "t"), ("b", 2, 2, "b")]
    )
    assert not is_nonwandering(ShiftSpace.edge_shift(p))
    assert is_nonwandering(golden_mean_edge())


def test_language_components():
    p = LabeledPresentation.build(
        (1, 2), [("a", 1, 1, "a"), ("b", 2, 2, "b")]
    )
    x = ShiftSpace.labeled(p)
    comps = language_components(x)
    assert len(comps) == 2
    assert all(is_irreducible(c) for c in comps)

import pytest

from shiftcodes.presentation import (
    LabeledPresentation,
    ShiftSpace,
    blocks,
    component_decomposition,
    contains_word,
    graph_nonwandering,
    higher_block,
    trim_essential,
)

from helpers import golden_mean_edge, even_shift, full_shift


def test_trim_keeps_essential_graph():
    g = golden_mean_edge()
    assert trim_essential(g.presentation) == g.presentation


def test_trim_removes_dead_end():
    p = LabeledPresentation.build(
        (1, 2, 3),
        [("a", 1, 1, "a"), ("b", 1, 2, "b"), ("c", 2, 1, "c"), ("d", 1, 3, "d")],
    )
    t = trim_essential(p)
    assert 3 not in t.vertices
    assert all(e.eid != "d" for e in t.edges)


def test_trim_kills_acyclic_path():
    p = LabeledPresentation.build((1, 2, 3), [("a", 1, 2, "a"), ("b", 2, 3, "b")])
    assert trim_essential(p).is_empty


def test_trim_idempotent_random():
    import random

    rng = random.Random(7)
    for _ in range(40):
        n = rng.randint(1, 5)
        verts = list(range(n))
        edges = []
        for i in range(rng.randint(0, 8)):
            edges.append((f"e{i}", rng.choice(verts), rng.choice(verts), "x"))
        p = LabeledPresentation.build(verts, edges)
        t = trim_essential(p)
        assert trim_essential(t) == t
        assert t.is_essential() or t.is_empty


def test_component_decomposition_two_cycles_with_bridge():
    p = LabeledPresentation.build(
        (1, 2),
        [("a", 1, 1, "a"), ("b", 2, 2, "b"), ("t", 1, 2, "t")],
    )
    x = ShiftSpace.edge_shift(p)
    dec = component_decomposition(x)
    assert len(dec.components) == 2
    flags = sorted(dec.classification(i) for i in range(2))
    assert flags == ["sink", "source"]
    assert all(e.eid != "t" for e in dec.nonwandering_part.edges)
    assert not graph_nonwandering(x)


def test_component_decomposition_irreducible():
    x = golden_mean_edge()
    dec = component_decomposition(x)
    assert len(dec.components) == 1
    assert dec.classification(0) == "isolated"
    assert graph_nonwandering(x)


def test_component_decomposition_parity_presentation():
    from helpers import parity_presentation

    x = ShiftSpace.labeled(parity_presentation())
    dec = component_decomposition(x)
    assert len(dec.components) == 1


def test_blocks_even_shift():
    # the two-state cover walks exactly the even words
    x = even_shift()
    assert blocks(x, 2) == frozenset(
        {("a", "a"), ("a", "b"), ("b", "a"), ("b", "b")}
    )
    # an odd b-run between a's has no presenting path
    assert not contains_word(x, ("a", "b", "a"))
    assert not contains_word(x, ("a", "b", "b", "b", "a"))
    assert contains_word(x, ("b", "a", "b"))
    assert contains_word(x, ("a", "b", "b", "a"))


def test_blocks_full_shift():
    x = full_shift()
    assert len(blocks(x, 3)) == 8


def test_blocks_factorial():
    x = even_shift()
    for n in (2, 3, 4, 5):
        smaller = blocks(x, n - 1)
        for w in blocks(x, n):
            assert w[1:] in smaller and w[:-1] in smaller


def test_higher_block_full_shift():
    x = full_shift()
    hb = higher_block(x, 2)
    assert len(hb.space.presentation.vertices) == 2
    assert len(hb.space.presentation.edges) == 4


def test_higher_block_identity():
    x = golden_mean_edge()
    hb = higher_block(x, 1)
    assert hb.space == x


def test_higher_block_golden_mean_vertex_form():
    # golden mean over {a, b} with bb forbidden, vertices = 1-paths
    p = LabeledPresentation.build(
        (1, 2), [("e1", 1, 1, "a"), ("e2", 1, 2, "b"), ("e3", 2, 1, "a")]
    )
    x = ShiftSpace.labeled(p)
    hb = higher_block(x, 2)
    assert set(hb.encode) == {("a", "a"), ("a", "b"), ("b", "a")}
    # window consistency: recoded blocks project back to original blocks
    for n in range(1, 6):
        for w in blocks(hb.space, n):
            decoded = [hb.decode[s] for s in w]
            glued = decoded[0] + tuple(d[-1] for d in decoded[1:])
            assert contains_word(x, glued)


def test_higher_block_projection_identity_on_blocks():
    x = even_shift()
    hb = higher_block(x, 3)
    for n in range(1, 7):
        rebuilt = set()
        for w in blocks(hb.space, n):
            decoded = [hb.decode[s] for s in w]
            glued = decoded[0] + tuple(d[-1] for d in decoded[1:])
            rebuilt.add(glued)
        assert rebuilt == set(blocks(x, n + 2))

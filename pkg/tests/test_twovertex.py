"""Counting, enumeration, canonical types, and the nine lattice classes."""

import pytest
from helpers import G1, G4, G5, G6, G7, G8, L2

from leavitt import (
    DomainError,
    TwoVertexShape,
    build_skeleton,
    canonicalize16,
    classify,
    count_closed_form,
    enumerate_up_to_iso,
    k1_cycles,
    graded_lattice,
    validate_graph,
)
from leavitt.twovertex import _SHAPES_16, canonical_form_of_shape, class_members


# --- counting ------------------------------------------------------------------


def test_count_small_values():
    assert count_closed_form(0) == 1
    assert count_closed_form(1) == 2
    assert count_closed_form(2) == 6
    assert count_closed_form(3) == 10


def test_count_matches_enumeration():
    for k in range(9):
        assert count_closed_form(k) == len(enumerate_up_to_iso(k))


def test_count_rejects_negative():
    with pytest.raises(DomainError):
        count_closed_form(-1)


def test_enumeration_exact_lists():
    assert [s.astuple() for s in enumerate_up_to_iso(0)] == [(0, 0, 0, 0)]
    assert [s.astuple() for s in enumerate_up_to_iso(1)] == [(1, 0, 0, 0), (0, 0, 1, 0)]
    assert [s.astuple() for s in enumerate_up_to_iso(2)] == [
        (2, 0, 0, 0),
        (1, 1, 0, 0),
        (1, 0, 1, 0),
        (1, 0, 0, 1),
        (0, 0, 2, 0),
        (0, 0, 1, 1),
    ]


def test_enumeration_is_swap_canonical_and_duplicate_free():
    for k in range(7):
        shapes = enumerate_up_to_iso(k)
        assert len(set(shapes)) == len(shapes)
        for s in shapes:
            assert s.is_canonical
            assert s.swapped().canon() == s
            assert s.total == k


def test_enumeration_guard():
    with pytest.raises(DomainError):
        enumerate_up_to_iso(13)


# --- canonical sixteen -----------------------------------------------------------


def test_canonicalize_loop_cap():
    g = validate_graph(
        ["u", "v"],
        [("p1", "u", "u"), ("p2", "u", "u"), ("p3", "u", "u"), ("a", "u", "v")],
    )
    cf = canonicalize16(g)
    assert cf.id == 12
    assert cf.shape.astuple() == (2, 0, 1, 0)


def test_canonicalize_elementary_collapse():
    g = validate_graph(
        ["u", "v"],
        [("a", "u", "v"), ("b", "u", "v"), ("c", "u", "v"), ("d", "v", "u")],
    )
    assert canonicalize16(g).id == 4


def test_canonicalize_bare_pair():
    assert canonicalize16(G1).id == 1


def test_canonicalize_named_fixtures():
    assert canonicalize16(L2).id == 2
    assert canonicalize16(G4).id == 4
    assert canonicalize16(G8).id == 8
    assert canonicalize16(G5).id == 5
    assert canonicalize16(G6).id == 6
    assert canonicalize16(G7).id == 7


def test_canonicalize_idempotent_and_swap_invariant():
    for i, shape in _SHAPES_16.items():
        s = TwoVertexShape(*shape)
        cf = canonical_form_of_shape(s)
        assert cf.id == i
        assert canonical_form_of_shape(cf.shape).id == i
        assert canonical_form_of_shape(s.swapped()).id == i


def test_every_small_shape_maps_into_the_sixteen():
    for k in range(5):
        for s in enumerate_up_to_iso(k):
            cf = canonical_form_of_shape(s)
            assert 1 <= cf.id <= 16
            assert cf.shape.astuple() == _SHAPES_16[cf.id]


def test_loop_only_leftovers_share_their_lattice_targets():
    # (2,1,0,0) pairs with type [5] and (2,2,0,0) with type [1]
    assert canonical_form_of_shape(TwoVertexShape(2, 1, 0, 0)).id == 5
    assert canonical_form_of_shape(TwoVertexShape(2, 2, 0, 0)).id == 1
    a = build_skeleton(TwoVertexShape(2, 1, 0, 0).to_graph())
    b = build_skeleton(TwoVertexShape(*_SHAPES_16[5]).to_graph())
    assert a.isomorphic(b)
    c = build_skeleton(TwoVertexShape(2, 2, 0, 0).to_graph())
    d = build_skeleton(TwoVertexShape(*_SHAPES_16[1]).to_graph())
    assert c.isomorphic(d)


def test_canonicalize_rejects_wrong_vertex_count():
    with pytest.raises(DomainError):
        canonicalize16(validate_graph(["v"], [("e", "v", "v")]))


# --- skeletons and the nine classes ------------------------------------------------


def _skel(i):
    return build_skeleton(TwoVertexShape(*_SHAPES_16[i]).to_graph())


def test_skeleton_is_an_equivalence_with_nine_classes():
    keys = {i: _skel(i).canonical_key() for i in _SHAPES_16}
    assert len(set(keys.values())) == 9


def test_same_class_listings_are_isomorphic():
    for group in [(2, 4, 8, 13), (6, 15), (12, 16), (1, 11), (3, 7)]:
        base = _skel(group[0])
        for other in group[1:]:
            assert base.isomorphic(_skel(other)), group


def test_distinct_singletons():
    labels = {}
    for i in (3, 10, 12, 14, 5, 9):
        labels[i] = _skel(i).canonical_key()
    assert len(set(labels.values())) == 6


def test_class_members_table():
    members = class_members()
    assert members["I"] == (2, 4, 8, 13)
    assert members["II"] == (3, 7)
    assert members["III"] == (6, 15)
    assert members["IV"] == (10,)
    assert members["V"] == (12, 16)
    assert members["VI"] == (14,)
    assert members["VII"] == (1, 11)
    assert members["VIII"] == (5,)
    assert members["IX"] == (9,)


def test_classify_reference_examples():
    assert classify(L2).label == "I"
    assert classify(G1).label == "VII"
    g10 = TwoVertexShape(1, 1, 1, 0).to_graph()
    assert classify(g10).label == "IV"


def test_classify_type7_reports_the_double_listing():
    res = classify(G7)
    assert res.label == "II"
    assert res.canonical.id == 7
    assert res.note is not None
    assert "IX" in res.note and "[9]" in res.note


def test_classify_other_types_carry_no_note():
    assert classify(G4).note is None


def test_elementary_types_have_trivial_lattice_and_no_k1_cycles():
    for i in (4, 8):
        g = TwoVertexShape(*_SHAPES_16[i]).to_graph()
        assert len(graded_lattice(g)) == 2
        assert k1_cycles(g) == ()


def test_classify_requires_two_vertices():
    with pytest.raises(DomainError):
        classify(validate_graph(["v"], [("e", "v", "v")]))


def test_classify_agrees_with_canonical_representative():
    # classification happens on the input graph's own skeleton; it must agree
    # with the class of its canonical type
    for k in range(5):
        for s in enumerate_up_to_iso(k):
            g = s.to_graph()
            res = classify(g)
            rep = classify(TwoVertexShape(*_SHAPES_16[res.canonical.id]).to_graph())
            assert res.label == rep.label, s


def test_skeleton_structure_type5():
    skel = _skel(5)
    assert len(skel.nodes) == 4
    assert len(skel.families) == 2
    # families of the single loop attach to the empty set and to the bare vertex
    atts = sorted(tuple(sorted(skel.nodes[f.att])) for f in skel.families)
    assert atts == [(), ("v",)]


def test_skeleton_structure_type9():
    skel = _skel(9)
    assert len(skel.nodes) == 4
    assert len(skel.families) == 4
    cycles = {f.cycle.edges for f in skel.families}
    assert cycles == {("p1",), ("q1",)}


def test_skeleton_dot_output():
    dot = _skel(5).to_dot()
    assert dot.count("style=dashed") == 1  # <P> partially contains <P, v>
    assert 'label="<P(p1)>"' in dot
    assert 'label="<P(p1), v>"' in dot
    dot9 = _skel(9).to_dot()
    assert dot9.count("style=dashed") == 2

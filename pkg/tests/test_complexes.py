"""Marked 2-truncated complexes: construction invariants, shapes, products,
and the lifting decision procedure."""

from __future__ import annotations

import pytest

from relfa.algebra import to_relfa
from relfa.catalog import boolean, chain, cyclic_group_algebra
from relfa.complexes import (
    SHAPE_NAMES,
    binomial,
    boundary,
    box_inclusion,
    braiding_shape,
    braiding_square,
    check_lifting,
    count_homs,
    count_maximal_chains,
    hom_maps,
    horn,
    make_complex,
    marked_horn,
    product,
    shape_from_name,
    simplex,
    subcomplex_on_faces,
    wedge_shape,
)
from relfa.nerve import nerve


def test_simplex_counts_are_frozen():
    assert simplex(0).counts() == {
        "vertices": 1, "edges": 1, "triangles": 1,
        "nondegenerate_triangles": 0, "marked": 0}
    assert simplex(1).counts() == {
        "vertices": 2, "edges": 3, "triangles": 4,
        "nondegenerate_triangles": 0, "marked": 0}
    assert simplex(2).counts() == {
        "vertices": 3, "edges": 6, "triangles": 10,
        "nondegenerate_triangles": 1, "marked": 0}
    assert simplex(1, marked_top=True).counts()["marked"] == 1


def test_make_complex_adds_degenerate_triangles():
    C = simplex(1)
    # Both degenerate fillers of the identity square on each vertex exist.
    for v in C.vertices:
        i = C.identity[v]
        assert (i, i, i) in C.triangles
    e = next(e for e in C.edges if not C.is_identity(e))
    assert (e, e, C.identity[C.src[e]]) in C.triangles
    assert (C.identity[C.tgt[e]], e, e) in C.triangles


def test_make_complex_rejects_incompatible_triangles():
    with pytest.raises(ValueError):
        make_complex("bad", ("u", "v"), ("i", "j", "e"),
                     {"i": "u", "j": "v", "e": "u"},
                     {"i": "u", "j": "v", "e": "v"},
                     {"u": "i", "v": "j"},
                     [("e", "e", "e")], ())
    with pytest.raises(ValueError):
        make_complex("bad-mark", ("u",), ("i",), {"i": "u"}, {"i": "u"},
                     {"u": "i"}, (), ("ghost",))


def test_shape_constructors_are_literal_inclusions():
    h = horn(2, 1)
    assert h.name == "horn-2-1"
    assert set(h.domain.edges) <= set(h.codomain.edges)
    b = boundary(2)
    assert len(b.domain.nonidentity_edges()) == 3
    m = marked_horn(2, 0)
    assert m.codomain.marked
    with pytest.raises(ValueError):
        marked_horn(2, 1)
    w = wedge_shape()
    assert w.name == "wedge-02-1"


def test_every_named_shape_resolves():
    for name in SHAPE_NAMES:
        shape = shape_from_name(name)
        assert shape.name == name


def test_box_shape_names_resolve_recursively():
    shape = shape_from_name("box(horn-2-0,boundary-1)")
    direct = box_inclusion(horn(2, 0), boundary(1))
    assert shape.name == direct.name
    assert shape.codomain.counts() == direct.codomain.counts()
    nested = shape_from_name("box(box(horn-2-0,boundary-1),vertex-0-in-edge)")
    assert "box(" in nested.name
    with pytest.raises(ValueError):
        shape_from_name("pentagon-3")


def test_product_counts():
    P = product(simplex(1), simplex(1))
    assert P.counts() == {
        "vertices": 4, "edges": 9, "triangles": 16,
        "nondegenerate_triangles": 2, "marked": 0}


def test_hom_counting_matches_enumeration():
    assert count_homs(simplex(1), simplex(2)) == 6
    assert count_homs(simplex(2), simplex(2)) == 10
    assert len(hom_maps(simplex(1), simplex(2))) == 6
    assert count_maximal_chains(simplex(2)) == 1
    assert binomial(4, 2) == 6


def test_braiding_square_shapes():
    B = braiding_square()
    assert len(B.vertices) == 2
    left, right = braiding_shape("left"), braiding_shape("right")
    assert left.name == "braiding-left"
    assert set(left.domain.edges) < set(B.edges)
    assert set(right.domain.edges) < set(B.edges)


def test_lifting_positive_and_negative_verdicts():
    # Inner horns fill exactly when every pair composes, so a group algebra
    # nerve satisfies them while a partial sum table does not.
    ok = check_lifting(horn(2, 1), nerve(cyclic_group_algebra(3)),
                       mode="exists")
    assert ok.passed
    assert ok.boundaries > 0
    partial = check_lifting(horn(2, 1), nerve(to_relfa(boolean(2))),
                            mode="exists")
    assert not partial.passed
    bad = check_lifting(boundary(2), nerve(to_relfa(chain(2))), mode="exists")
    assert not bad.passed
    assert bad.boundaries == 27
    assert bad.failures
    failure = bad.failures[0]
    assert set(failure) == {"boundary", "extensions"}
    assert failure["extensions"] == 0
    with pytest.raises(ValueError):
        check_lifting(horn(2, 1), nerve(to_relfa(chain(1))), mode="all")


def test_unique_mode_lifts():
    unique_marked = check_lifting(marked_horn(1, 0),
                                  nerve(to_relfa(chain(2))), mode="unique")
    assert unique_marked.passed
    # Group multiplication is single valued, so inner horn fillers are
    # unique as well as existent.
    unique_inner = check_lifting(horn(2, 1), nerve(cyclic_group_algebra(3)),
                                 mode="unique")
    assert unique_inner.passed


def test_lifting_report_serializes():
    N = nerve(to_relfa(chain(1)))
    report = check_lifting(horn(2, 1), N, mode="exists")
    doc = report.to_dict()
    assert doc["shape"] == "horn-2-1"
    assert doc["mode"] == "exists"
    assert doc["method"] in ("enumeration", "count-comparison")
    assert isinstance(doc["boundaries"], int)


def test_subcomplex_requires_closed_face_sets():
    C = simplex(2)
    faces = [frozenset({"0", "1"}), frozenset({"1", "2"})]
    D = subcomplex_on_faces(C, faces, "spine")
    assert set(D.vertices) == {"0", "1", "2"}
    assert len(D.nonidentity_edges()) == 2

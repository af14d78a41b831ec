"""Morphism enumeration, conjugation, mapping complexes, the componentwise
hom object, and the evaluation fibration check."""

from __future__ import annotations

import pytest

from relfa.algebra import to_relfa, validate
from relfa.catalog import boolean, chain
from relfa.mapping import (
    FIBRATION_SHAPES,
    PMMorphism,
    conjugate,
    enriched_compose,
    eval_fibration_check,
    hom_complex_invariants,
    hom_object_ea,
    interval_algebra,
    mapping_complex,
    pm_morphisms,
    verify_mapping_theorem,
)
from relfa.nerve import nerve


def test_morphism_counts_are_frozen():
    assert len(pm_morphisms(chain(1), chain(1))) == 2
    assert len(pm_morphisms(chain(1), chain(2))) == 3
    assert len(pm_morphisms(chain(2), chain(2))) == 2
    assert len(pm_morphisms(boolean(2), chain(2))) == 6


def test_morphisms_preserve_bottom_and_sums():
    for h in pm_morphisms(boolean(2), chain(2)):
        h.check()
    keys = [h.key() for h in pm_morphisms(chain(1), chain(2))]
    assert keys == sorted(keys)


def test_morphism_composition():
    homs12 = pm_morphisms(chain(1), chain(2))
    identity = next(h for h in pm_morphisms(chain(2), chain(2))
                    if all(h(a) == a for a in chain(2).elements))
    for h in homs12:
        assert identity.compose(h).key() == h.key()
    with pytest.raises(ValueError):
        h = homs12[0]
        h.compose(h)


def test_conjugation_by_bottom_is_identity():
    b = boolean(2)
    for h in pm_morphisms(b, b):
        g = conjugate(b, h, b.zero)
        assert g.key() == h.key()


def test_interval_algebra_restriction():
    b = boolean(2)
    block = interval_algebra(b, "a")
    assert set(block.elements) == {"0", "a"}
    assert block.one == "a"
    assert validate("effect-algebra", block).passed


def test_hom_object_components_of_the_two_chain():
    hob = hom_object_ea(chain(1), chain(1))
    assert len(hob.components) == 2
    sizes = sorted(len(c.carrier) for c in hob.components)
    # The bottom map contributes a full interval, the identity a point.
    assert sizes == [1, 2]
    assert validate("frobenius", hob.algebra).passed
    tops = {c.morphism.key(): c.top for c in hob.components}
    assert tops[("0", "0")] == "1"
    assert tops[("0", "1")] == "0"


def test_mapping_complex_counts_for_the_two_chain():
    N = nerve(to_relfa(chain(1)))
    M = mapping_complex(N, N)
    counts = M.complex.counts()
    assert counts["vertices"] == 2
    assert counts["edges"] == 3
    assert counts["marked"] == 2
    assert counts["triangles"] == 4
    assert set(M.vertex_refs) == set(M.complex.vertices)
    assert set(M.edge_refs) == set(M.complex.edges)


def test_mapping_theorem_on_small_pairs():
    assert verify_mapping_theorem(chain(1), chain(1))
    assert verify_mapping_theorem(chain(1), chain(2))
    assert verify_mapping_theorem(chain(2), chain(1))


def test_hom_complex_invariants_frozen():
    assert hom_complex_invariants(chain(2), chain(3)) == {
        "vertices": 2,
        "loops_are_intervals": True,
        "marked_loop_is_supplement": True,
        "recognized_as_nerve": True,
        "rebuilt_is_frobenius": True,
        "rebuilt_is_cancellative": True,
        "unit_vertices_are_top_preserving": True,
    }
    inv = hom_complex_invariants(boolean(2), chain(2))
    assert all(v is True for k, v in inv.items() if k != "vertices")
    assert inv["vertices"] == 6


def test_enriched_composition_closes():
    arrow = enriched_compose(chain(1), chain(1), chain(2))
    # Composition maps out of the product of the two mapping complexes and
    # lands in the outer mapping complex.
    assert "x" in arrow.domain.name
    assert arrow.codomain.name == "[nerve(relfa(chain(1))),nerve(relfa(chain(2)))]"
    assert enriched_compose(chain(1), chain(2), chain(2)) is not None


def test_fibration_shape_roster():
    names = [s.name for s in FIBRATION_SHAPES]
    assert names == ["horn-1-0", "horn-1-1", "horn-2-0", "horn-2-1",
                     "horn-2-2", "horn-3-0", "horn-3-1", "horn-3-2",
                     "horn-3-3", "boundary-2", "boundary-3", "mark-edge"]


def test_eval_fibration_check_passes_and_reports():
    report = eval_fibration_check(chain(1), chain(2))
    assert report.kind == "evaluation-fibration"
    assert report.name == "eval(chain(1);chain(2))"
    assert report.passed
    names = [c.name for c in report.checks]
    assert names == [f"{s.name}:unique-relative-lift" for s in FIBRATION_SHAPES]

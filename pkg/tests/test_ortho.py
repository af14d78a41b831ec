"""Orthogonality relations, the internal lifting relation on elements, and
the classification flags with their order-theoretic cross checks."""

from __future__ import annotations

import pytest

from relfa.algebra import PseudoEffectAlgebraTable, to_relfa, validate
from relfa.catalog import boolean, chain, cyclic_group_algebra, wright_triangle
from relfa.ortho import (
    boxslash_order_oracle,
    boxslash_relation,
    classify,
    coherence_check,
    epsilon_boxslash,
    inverse_analysis,
    is_cancellative,
    is_commutative,
    perp_relation,
    rotate_edge,
)


def cyclic_pea():
    els = ("0", "a", "b", "c", "1")
    sums = {("0", "0"): "0", ("0", "1"): "1", ("1", "0"): "1"}
    for x in "abc":
        sums[("0", x)] = x
        sums[(x, "0")] = x
    sums.update({("a", "b"): "1", ("b", "c"): "1", ("c", "a"): "1"})
    return PseudoEffectAlgebraTable("cyclic", els, "0", "1", sums)


def test_boxslash_matches_the_order_oracle():
    for t in (chain(3), boolean(2), wright_triangle()):
        assert boxslash_relation(to_relfa(t)) == boxslash_order_oracle(t)


def test_boxslash_on_boolean_square_lists_joinable_pairs():
    b = boolean(2)
    bx = boxslash_relation(to_relfa(b))
    assert ("a", "b") in bx
    assert ("a", "a") not in bx
    for x in b.elements:
        assert ("0", x) in bx


def test_epsilon_boxslash_recovers_the_unit():
    for t in (chain(2), boolean(2)):
        f = to_relfa(t)
        assert set(epsilon_boxslash(f)) == set(f.eta)


def test_perp_contains_boxslash_on_effect_algebras():
    f = to_relfa(wright_triangle())
    assert boxslash_relation(f) <= perp_relation(f)


def test_commutativity_and_cancellativity_witnesses():
    good = to_relfa(boolean(2))
    assert is_commutative(good) == (True, None)
    assert is_cancellative(good) == (True, None)
    twisted = to_relfa(cyclic_pea())
    flag, witness = is_commutative(twisted)
    assert not flag
    assert witness is not None


def test_classification_of_three_chain():
    flags = classify(to_relfa(chain(2)))
    assert flags.effect_algebra
    assert flags.commutative and flags.cancellative
    assert flags.orthoalgebra is False
    assert flags.orthomodular_poset is False
    assert flags.braided is True
    assert all(flags.cross_checks.values())


def test_classification_of_boolean_square():
    flags = classify(to_relfa(boolean(2)))
    assert flags.effect_algebra
    assert flags.orthoalgebra is True
    assert flags.orthomodular_poset is True
    assert flags.braided is True
    assert all(flags.cross_checks.values())


def test_classification_of_pasted_blocks():
    flags = classify(to_relfa(wright_triangle()))
    assert flags.effect_algebra
    assert flags.orthoalgebra is True
    assert flags.orthomodular_poset is False
    assert flags.braided is True
    assert all(flags.cross_checks.values())
    assert "orthomodular_poset" in flags.witnesses


def test_classification_of_group_algebra():
    flags = classify(cyclic_group_algebra(3))
    assert flags.commutative and flags.cancellative
    assert flags.effect_algebra is False
    assert flags.orthoalgebra is None
    assert flags.orthomodular_poset is None
    assert flags.braided is True
    assert flags.cross_checks["counit_singleton_equivalence"]


def test_classification_serializes():
    doc = classify(to_relfa(chain(2))).to_dict()
    assert doc["name"] == "relfa(chain(2))"
    assert set(doc) == {
        "name", "commutative", "cancellative", "eta_singleton",
        "epsilon_boxslash_is_eta", "effect_algebra", "orthoalgebra",
        "orthomodular_poset", "braided", "witnesses", "cross_checks"}


def test_coherence_check_frozen_verdicts():
    assert coherence_check(boolean(2)) == (True, None)
    assert coherence_check(chain(2)) == (False, ("1", "1", "1"))
    assert coherence_check(wright_triangle()) == (False, ("a", "c", "e"))


def test_inverse_analysis_on_a_group_element():
    result = inverse_analysis(cyclic_group_algebra(3), "g1")
    assert result["element"] == "g1"
    assert result["right_inverse"] == "g2"
    assert result["cancellative"] is True
    assert result["F_boxslash_a"] is True
    assert result["epsilon_boxslash_a"] is True
    assert result["epsilon_perp"] is True
    assert result["perp_all_at_target"] is True


def test_rotate_edge_is_the_supplement():
    f = to_relfa(chain(2))
    assert rotate_edge(f, "1") == "1"
    assert rotate_edge(f, "0") == "2"
    assert rotate_edge(f, "2") == "0"
    assert rotate_edge(f, rotate_edge(f, "1", inverse=True)) == "1"

"""Exhaustive small-structure enumeration: frozen class counts, soundness
of every emitted structure, isomorph rejection, and the candidate stream."""

from __future__ import annotations

import itertools

import pytest

from relfa.algebra import to_relfa, validate
from relfa.catalog import chain
from relfa.enumerate_small import (
    CANDIDATE_BOUND,
    KINDS,
    RELATIONAL_BOUND,
    TABLE_BOUND,
    enumerate_small,
    tables_isomorphic,
    transported_delta,
)


def test_kind_names_and_bounds():
    assert KINDS == ("effect-algebra", "pseudo-effect-algebra",
                     "frobenius", "frobenius-candidates")
    assert (TABLE_BOUND, RELATIONAL_BOUND, CANDIDATE_BOUND) == (5, 2, 4)


def test_effect_algebra_class_counts():
    counts = [len(enumerate_small(n, "effect-algebra")) for n in range(1, 6)]
    assert counts == [1, 1, 1, 3, 4]


def test_pseudo_effect_algebra_class_counts():
    counts = [len(enumerate_small(n, "pseudo-effect-algebra"))
              for n in range(1, 6)]
    assert counts == [1, 1, 1, 3, 5]


def test_every_enumerated_table_passes_its_validator():
    for n in range(1, 6):
        for t in enumerate_small(n, "effect-algebra"):
            assert validate("effect-algebra", t).passed, t.name
        for t in enumerate_small(n, "pseudo-effect-algebra"):
            assert validate("pseudo-effect-algebra", t).passed, t.name


def test_enumerated_tables_are_pairwise_nonisomorphic():
    for kind in ("effect-algebra", "pseudo-effect-algebra"):
        for n in range(1, 5):
            items = enumerate_small(n, kind)
            for s, t in itertools.combinations(items, 2):
                assert not tables_isomorphic(s, t), (s.name, t.name)


def test_size_two_class_is_the_two_chain():
    (t,) = enumerate_small(2, "effect-algebra")
    assert tables_isomorphic(t, chain(1))


def test_exactly_one_noncommutative_class_at_size_five():
    peas = enumerate_small(5, "pseudo-effect-algebra")
    noncomm = [t for t in peas if not validate("effect-algebra", t).passed]
    assert [t.name for t in noncomm] == ["pea5_4"]
    t = noncomm[0]
    # Three atoms whose supplements run around a cycle: a+b = b+c = c+a = top.
    tops = sorted((a, b) for (a, b), s in t.sums.items()
                  if s == t.one and t.zero not in (a, b))
    assert tops == [("a", "b"), ("b", "c"), ("c", "a")]
    assert validate("pseudo-effect-algebra", t).passed


def test_commutative_classes_embed_in_pseudo_enumeration():
    # Every commutative class appears among the pseudo classes of that size.
    for n in range(1, 6):
        eas = enumerate_small(n, "effect-algebra")
        peas = enumerate_small(n, "pseudo-effect-algebra")
        for t in eas:
            assert any(tables_isomorphic(t, p) for p in peas), t.name


def test_relational_class_counts_and_soundness():
    ones = enumerate_small(1, "frobenius")
    twos = enumerate_small(2, "frobenius")
    assert len(ones) == 1
    assert len(twos) == 5
    for f in ones + twos:
        assert validate("frobenius", f).passed, f.name
        assert f.delta == transported_delta(f.elements, f.mu, f.eta, f.epsilon)


def test_transported_delta_reproduces_translation():
    for t in (chain(1), chain(2)):
        f = to_relfa(t)
        assert transported_delta(f.elements, f.mu, f.eta, f.epsilon) == f.delta


def test_candidate_stream_counts():
    stream = enumerate_small(CANDIDATE_BOUND, "frobenius-candidates")
    assert len(stream) == 411
    verdicts = [validate("frobenius", c).passed for c in stream]
    assert verdicts.count(True) == 24
    assert verdicts.count(False) == 387


def test_candidate_stream_is_cumulative_and_deterministic():
    small = enumerate_small(2, "frobenius-candidates")
    large = enumerate_small(3, "frobenius-candidates")
    assert [c.name for c in large][: len(small)] == [c.name for c in small]
    again = enumerate_small(3, "frobenius-candidates")
    assert [c.signature() for c in again] == [c.signature() for c in large]


def test_bounds_are_enforced_with_clear_messages():
    with pytest.raises(ValueError, match="only up to size 5"):
        enumerate_small(6, "effect-algebra")
    with pytest.raises(ValueError, match="only up to size 5"):
        enumerate_small(6, "pseudo-effect-algebra")
    with pytest.raises(ValueError, match="only up to size 2"):
        enumerate_small(3, "frobenius")
    with pytest.raises(ValueError, match="only up to size 4"):
        enumerate_small(5, "frobenius-candidates")
    with pytest.raises(ValueError, match="unknown kind"):
        enumerate_small(2, "monoid")
    with pytest.raises(ValueError, match="positive integer"):
        enumerate_small(0, "effect-algebra")

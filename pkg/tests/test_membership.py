"""Tests for language membership and step-count classification.

The exhaustive checks run every term of size <= 6 through both the
grammars and the reduction oracle.
"""
import pytest

from app.errors import MissingGrammarError
from app.grammar import BoundedCache, GrammarStore, mesh_set
from app.membership import (
    InSteps,
    NotWithin,
    classify,
    count_matching_productions,
    generates,
    matching_productions,
    reduces_in,
)
from app.terms import Normalized, S, enumerate_terms, parse_term, reduce_count
from app.trees import R, parse_tree

SMALL_TERMS = [term for size in range(7) for term in enumerate_terms(size)]


def test_generates_examples(store):
    assert generates(parse_tree('S R0'), parse_term('S K'), store)
    assert generates(R(1), parse_term('K K K'), store)
    assert not generates(R(0), parse_term('K S K'), store)


def test_c_generates_everything(store):
    assert generates(parse_tree('C'), parse_term('S (K K) S'), store)
    assert generates(parse_tree('K C S'), parse_term('K (S S S) S'), store)
    assert not generates(parse_tree('K C S'), parse_term('K (S S S) K'), store)


def test_classify_examples(store):
    assert classify(S, 3, store) == InSteps(0)
    assert classify(parse_term('S K K S'), 3, store) == InSteps(2)
    assert classify(parse_term('K S K'), 0, store) == NotWithin(0)


def test_classify_needs_constructed_grammars():
    with pytest.raises(MissingGrammarError):
        classify(S, 0, GrammarStore())


def test_count_matching_productions_examples(store):
    assert count_matching_productions(0, S, store) == 1
    assert count_matching_productions(1, parse_term('K K K'), store) == 1
    assert count_matching_productions(0, parse_term('K S K'), store) == 0


def test_matching_production_of_one_step_term(store):
    assert matching_productions(1, parse_term('K K K'), store) == [
        parse_tree('K R0 C'),
    ]


def test_reduces_in():
    assert reduces_in(parse_term('S K K S'), 2)
    assert not reduces_in(parse_term('S K K S'), 1)
    assert reduces_in(S, 0)


def test_grammars_agree_with_oracle_on_small_terms(store):
    for term in SMALL_TERMS:
        outcome = reduce_count(term, 64)
        matched = [n for n in range(4) if generates(R(n), term, store)]
        if isinstance(outcome, Normalized) and outcome.steps <= 3:
            assert matched == [outcome.steps], str(term)
        else:
            assert matched == [], str(term)


def test_members_match_exactly_one_production(store):
    for term in SMALL_TERMS:
        for n in range(4):
            if generates(R(n), term, store):
                assert count_matching_productions(n, term, store) == 1, str(term)


def test_classify_agrees_with_naive_check(store):
    for size in range(5):
        for term in enumerate_terms(size):
            result = classify(term, 3, store)
            for n in range(4):
                assert reduces_in(term, n) == (result == InSteps(n)), str(term)


@pytest.mark.parametrize('left, right', [
    ('R0', 'S R0 C'),
    ('K C R0 S', 'K S (S R0 C) S'),
    ('R1', 'S C R0'),
    ('R2', 'K C (S R0)'),
])
def test_mesh_partitions_the_intersection(store, left, right):
    a, b = parse_tree(left), parse_tree(right)
    meshes = mesh_set(a, b, store)
    for size in range(6):
        for term in enumerate_terms(size):
            in_both = generates(a, term, store) and generates(b, term, store)
            hits = sum(generates(mesh, term, store) for mesh in meshes)
            assert hits == (1 if in_both else 0), str(term)


def test_membership_cache_is_bounded():
    bounded = GrammarStore(membership_cache_size=64)
    bounded.ensure(1)
    for term in enumerate_terms(5):
        outcome = reduce_count(term, 64)
        expected = (
            InSteps(outcome.steps)
            if isinstance(outcome, Normalized) and outcome.steps <= 1
            else NotWithin(1)
        )
        assert classify(term, 1, bounded) == expected
        assert len(bounded.membership_cache) <= 64


def test_bounded_cache_evicts_least_recently_used():
    cache = BoundedCache(2)
    cache['a'] = 1
    cache['b'] = 2
    assert cache.get('a') == 1
    cache['c'] = 3
    assert list(cache) == ['a', 'c']
    assert cache.get('b') is None
    with pytest.raises(ValueError):
        BoundedCache(0)

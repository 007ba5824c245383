"""Tests for SK-terms: syntax, enumeration and the reduction oracle."""
import pickle

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from app.errors import TermSyntaxError
from app.terms import (
    FuelExhausted,
    K,
    Normalized,
    S,
    application,
    enumerate_terms,
    normal_order_step,
    parse_term,
    print_term,
    reduce_count,
    reduction_trace,
    spine,
)

terms = st.recursive(
    st.sampled_from([S, K]),
    lambda children: st.tuples(children, children).map(
        lambda pair: application(*pair)
    ),
    max_leaves=12,
)


def test_parse_examples():
    assert parse_term('S K (K K)') is application(
        application(S, K), application(K, K)
    )
    assert parse_term('S') is S
    assert parse_term('((S K) K)') is parse_term('S K K')


def test_print_examples():
    assert print_term(application(application(S, K), application(K, K))) == (
        'S K (K K)'
    )
    assert print_term(S) == 'S'
    assert print_term(application(S, application(K, K))) == 'S (K K)'


@pytest.mark.parametrize('text', ['S (K', 'S K)', '', '()', 'S X'])
def test_parse_rejects_malformed_text(text):
    with pytest.raises(TermSyntaxError):
        parse_term(text)


def test_syntax_error_reports_position_of_unknown_token():
    with pytest.raises(TermSyntaxError) as info:
        parse_term('S X')
    assert info.value.position == 2
    assert 'position 2' in str(info.value)


def test_deeply_nested_text_is_rejected():
    text = 'S (' * 1500 + 'K' + ')' * 1500
    with pytest.raises(TermSyntaxError) as info:
        parse_term(text)
    assert 'nested deeper than 100' in str(info.value)
    assert info.value.position == 3 * 101 - 1


def test_nesting_up_to_the_limit_is_accepted():
    text = 'S (' * 100 + 'K' + ')' * 100
    term = parse_term(text)
    assert term.size == 100
    assert print_term(term) == 'S (' * 99 + 'S K' + ')' * 99
    with pytest.raises(TermSyntaxError):
        parse_term(text, max_depth=99)


def test_enumerate_small_sizes():
    assert enumerate_terms(0) == [S, K]
    assert [print_term(t) for t in enumerate_terms(1)] == [
        'S S', 'S K', 'K S', 'K K',
    ]
    assert len(enumerate_terms(3)) == 80


@pytest.mark.parametrize('size, count', [(2, 16), (4, 448), (5, 2688)])
def test_enumeration_is_complete_and_distinct(size, count):
    found = enumerate_terms(size)
    assert len(found) == count
    assert len(set(found)) == count
    assert all(term.size == size for term in found)


def test_enumerate_rejects_negative_size():
    with pytest.raises(ValueError):
        enumerate_terms(-1)


def test_normal_order_step_examples():
    assert normal_order_step(parse_term('K S K')) is S
    assert normal_order_step(parse_term('S K K S')) is parse_term('K S (K S)')
    assert normal_order_step(parse_term('S (K K S) K')) is parse_term('S K K')
    assert normal_order_step(S) is None


def test_leftmost_argument_reduces_first():
    term = parse_term('S (K K S) (K S K)')
    assert normal_order_step(term) is parse_term('S K (K S K)')


def test_reduce_count_examples():
    assert reduce_count(S, 10) == Normalized(0)
    assert reduce_count(parse_term('K S K'), 10) == Normalized(1)
    assert reduce_count(parse_term('S K K S'), 10) == Normalized(2)


def test_reduce_count_runs_out_of_fuel():
    assert reduce_count(parse_term('S K K S'), 1) == FuelExhausted(1)
    assert reduce_count(parse_term('K S K'), 0) == FuelExhausted(0)
    omega = parse_term('S (S K K) (S K K) (S (S K K) (S K K))')
    assert reduce_count(omega) == FuelExhausted(64)


def test_reduce_count_rejects_negative_fuel():
    with pytest.raises(ValueError):
        reduce_count(S, -1)


def test_reduction_trace():
    assert [print_term(t) for t in reduction_trace(parse_term('S K K S'))] == [
        'S K K S', 'K S (K S)', 'S',
    ]
    assert reduction_trace(S) == [S]


def test_terms_survive_pickling_as_the_same_object():
    term = parse_term('S (K K) S')
    assert pickle.loads(pickle.dumps(term)) is term


def test_spine():
    head, args = spine(parse_term('K (S K) S'))
    assert head is K
    assert args == [parse_term('S K'), S]


@pytest.mark.property_based
@given(terms)
@settings(max_examples=200)
def test_print_parse_round_trip(term):
    assert parse_term(print_term(term)) is term


@pytest.mark.property_based
@given(terms)
@settings(max_examples=200)
def test_size_counts_applications(term):
    text = print_term(term)
    assert term.size == text.count('S') + text.count('K') - 1


@pytest.mark.property_based
@given(terms)
@settings(max_examples=100)
def test_reduction_is_deterministic(term):
    assert reduce_count(term, 32) == reduce_count(term, 32)
    assert normal_order_step(term) is normal_order_step(term)


@pytest.mark.property_based
@given(terms)
@settings(max_examples=200)
def test_head_redex_changes_size_as_expected(term):
    head, args = spine(term)
    if head is K and len(args) >= 2:
        assert normal_order_step(term).size == term.size - 2 - args[1].size
    elif head is S and len(args) >= 3:
        assert normal_order_step(term).size == term.size + args[2].size


@pytest.mark.parametrize('size', [
    *range(6),
    pytest.param(6, marks=pytest.mark.slow),
    pytest.param(7, marks=pytest.mark.slow),
])
def test_classification_is_stable_for_small_terms(size):
    for term in enumerate_terms(size):
        outcome = reduce_count(term, 64)
        assert isinstance(outcome, (Normalized, FuelExhausted))
        assert reduce_count(term, 64) == outcome

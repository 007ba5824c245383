"""Language membership x ∈ L(α) and step-count classification of terms.

Membership is a memoised top-down matcher over the grammar trees rather
than a compiled tree automaton. Each (tree, term) pair is decided once
per store; because every R_k inside a production sits strictly below an
application, the term shrinks on every recursive step through R_k.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from app.grammar import GrammarStore
from app.terms import DEFAULT_FUEL, Normalized, Term, reduce_count
from app.trees import Tree, nonterminal


@dataclass(frozen=True)
class InSteps:
    """The term normalises in exactly `steps` normal-order steps."""
    steps: int


@dataclass(frozen=True)
class NotWithin:
    """The term is in none of R_0 .. R_max_n."""
    max_n: int


Classification = Union[InSteps, NotWithin]


def _term_shape(term: Term) -> tuple[str, int]:
    return (term.head.symbol, term.arity)


def generates(tree: Tree, term: Term, store: GrammarStore) -> bool:
    """Decides term ∈ L(tree).

    Raises:
        MissingGrammarError: If `tree` references an unconstructed R_i.
    """
    store.require(tree)
    return _generates(tree, term, store)


def _generates(tree: Tree, term: Term, store: GrammarStore) -> bool:
    kind = tree.kind
    if kind == 'C':
        return True
    if kind in ('S', 'K'):
        return term.symbol == kind
    if kind == '@' and term.symbol is not None:
        return False
    pair = (tree, term)
    cache = store.membership_cache
    known = cache.get(pair)
    if known is not None:
        return known
    if kind == '@':
        result = (
            _generates(tree.left, term.left, store)
            and _generates(tree.right, term.right, store)
        )
    else:
        result = any(
            _generates(production, term, store)
            for production in store.shaped(tree.index, _term_shape(term))
        )
    cache[pair] = result
    return result


def classify(term: Term, max_n: int, store: GrammarStore) -> Classification:
    """Finds the n <= max_n with term ∈ L(R_n).

    Raises:
        MissingGrammarError: If R_max_n has not been constructed.
    """
    store.grammar(max_n)
    for n in range(max_n + 1):
        if _generates(nonterminal(n), term, store):
            return InSteps(n)
    return NotWithin(max_n)


def matching_productions(n: int, term: Term, store: GrammarStore) -> list[Tree]:
    """The productions of R_n generating `term`."""
    return [
        production
        for production in store.shaped(n, _term_shape(term))
        if _generates(production, term, store)
    ]


def count_matching_productions(n: int, term: Term, store: GrammarStore) -> int:
    """How many productions of R_n generate `term`; 0 or 1 for R_n
    unambiguous."""
    return len(matching_productions(n, term, store))


def reduces_in(term: Term, n: int, fuel: int = DEFAULT_FUEL) -> bool:
    """Answers "does `term` normalise in exactly n steps" by reducing it."""
    return reduce_count(term, max(fuel, n)) == Normalized(n)

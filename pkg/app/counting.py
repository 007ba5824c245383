"""Exact counting series of the reduction grammars.

r_{n,k} is the number of SK-terms of size k normalising in exactly n
steps. Because R_n is unambiguous, it can be counted by summing over the
productions of R_n; `count_tree` does that by dynamic programming over
interned trees. `series_by_equation` reaches the same numbers another way,
from the linear equation R_n satisfies once its self-referencing
productions are isolated, and the normal-form and all-terms recurrences
give closed-form checks for R_0 and C.

Counts are exact integers throughout; the series arithmetic works on sympy
polynomials over ZZ, truncated after z^kmax.
"""
from __future__ import annotations

import functools
from collections import Counter
from dataclasses import dataclass

from sympy import Poly, Symbol, ZZ

from app.errors import GrammarError
from app.grammar import (
    GrammarStore,
    phi_productions,
    self_referencing_productions,
)
from app.trees import Tree, nonterminal


@functools.lru_cache(maxsize=None)
def _all_terms(k: int) -> int:
    if k == 0:
        return 2
    return sum(_all_terms(i) * _all_terms(k - 1 - i) for i in range(k))


def all_terms_coeffs(kmax: int) -> list[int]:
    """c_0 .. c_kmax, the number of SK-terms of each size (C = 2 + zC²)."""
    if kmax < 0:
        raise ValueError('kmax must be non-negative')
    return [_all_terms(k) for k in range(kmax + 1)]


def normal_form_coeffs(kmax: int) -> list[int]:
    """Number of normal forms of each size, from N = 2 + 2zN + z²N²."""
    if kmax < 0:
        raise ValueError('kmax must be non-negative')
    coeffs: list[int] = []
    for k in range(kmax + 1):
        if k == 0:
            coeffs.append(2)
            continue
        value = 2 * coeffs[k - 1]
        value += sum(coeffs[i] * coeffs[k - 2 - i] for i in range(k - 1))
        coeffs.append(value)
    return coeffs


def count_tree(tree: Tree, k: int, store: GrammarStore) -> int:
    """#{x ∈ L(tree) : |x| = k}.

    Raises:
        MissingGrammarError: If `tree` references an unconstructed R_i.
    """
    if k < 0:
        raise ValueError('size must be non-negative')
    store.require(tree)
    _fill(tree, k, store)
    return _count(tree, k, store)


def _fill(tree: Tree, k: int, store: GrammarStore) -> None:
    """Memoises the counts of every R_i below `tree` for sizes below k.

    Sizes go up one at a time, so each count only recurses into entries
    that are already cached and the stack stays shallow for large k.
    """
    all_terms_coeffs(k)
    for size in range(k):
        for index in range(tree.degree):
            _count(nonterminal(index), size, store)


def _count(tree: Tree, k: int, store: GrammarStore) -> int:
    if k < tree.size:
        return 0
    kind = tree.kind
    if kind == 'C':
        return _all_terms(k)
    if kind in ('S', 'K'):
        return 1 if k == 0 else 0
    key = (tree, k)
    cache = store.count_cache
    known = cache.get(key)
    if known is not None:
        return known
    if kind == '@':
        left, right = tree.left, tree.right
        result = sum(
            _count(left, i, store) * _count(right, k - 1 - i, store)
            for i in range(left.size, k - right.size)
        )
    else:
        # Self-references sit below an application, so they only ask for
        # strictly smaller k.
        result = sum(
            _count(production, k, store)
            for production in store.productions(tree.index)
        )
    cache[key] = result
    return result


@dataclass(frozen=True)
class Series:
    """Coefficients r_{index,0} .. r_{index,kmax}."""
    index: int
    coefficients: tuple[int, ...]

    @property
    def kmax(self) -> int:
        return len(self.coefficients) - 1

    def rows(self):
        """(n, k, r_{n,k}) triples, the CSV layout."""
        return [(self.index, k, value) for k, value in enumerate(self.coefficients)]


def series(n: int, kmax: int, store: GrammarStore) -> Series:
    """Counting series of R_n up to z^kmax.

    Raises:
        MissingGrammarError: If R_n has not been constructed.
    """
    if kmax < 0:
        raise ValueError('kmax must be non-negative')
    store.grammar(n)
    grammar = nonterminal(n)
    _fill(grammar, kmax, store)
    return Series(n, tuple(_count(grammar, k, store) for k in range(kmax + 1)))


@dataclass(frozen=True)
class ProductionStats:
    """How a production contributes to the equation of R_n(z).

    Attributes:
        applications (int): k(α), equal to the size of α.
        c_occurrences (int): c(α), occurrences of C.
        r_occurrences (tuple[int, ...]): r_i(α) for i = 0 .. degree(α) - 1.
    """
    applications: int
    c_occurrences: int
    r_occurrences: tuple[int, ...]


def production_stats(tree: Tree) -> ProductionStats:
    leaves = Counter()
    pending = [tree]
    while pending:
        node = pending.pop()
        if node.kind == '@':
            pending.append(node.left)
            pending.append(node.right)
        else:
            leaves[(node.kind, node.index)] += 1
    return ProductionStats(
        applications=tree.size,
        c_occurrences=leaves[('C', None)],
        r_occurrences=tuple(leaves[('R', i)] for i in range(tree.degree)),
    )


_z = Symbol('z')


def _poly(coefficients) -> Poly:
    """The integer polynomial Σ coefficients[k] z^k."""
    return Poly.from_list(list(reversed(coefficients)) or [0], _z, domain=ZZ)


def _coefficients(poly: Poly, kmax: int) -> list[int]:
    return [int(poly.nth(k)) for k in range(kmax + 1)]


def _truncate(poly: Poly, kmax: int) -> Poly:
    if poly.degree() <= kmax:
        return poly
    return _poly(_coefficients(poly, kmax))


def _power(poly: Poly, exponent: int, kmax: int) -> Poly:
    result = Poly(1, _z, domain=ZZ)
    base = _truncate(poly, kmax)
    while exponent:
        if exponent & 1:
            result = _truncate(result * base, kmax)
        exponent >>= 1
        if exponent:
            base = _truncate(base * base, kmax)
    return result


def series_mul(a: list[int], b: list[int], kmax: int) -> list[int]:
    """Product of two power series truncated after z^kmax."""
    return _coefficients(_poly(a[:kmax + 1]) * _poly(b[:kmax + 1]), kmax)


def series_pow(a: list[int], exponent: int, kmax: int) -> list[int]:
    """a(z)**exponent truncated after z^kmax, by repeated squaring."""
    if exponent < 0:
        raise ValueError('exponent must be non-negative')
    return _coefficients(_power(_poly(a), exponent, kmax), kmax)


def _weighted_sum(
    groups: Counter,
    known: list[list[int]],
    kmax: int,
) -> list[int]:
    """Σ multiplicity · z^{k(α)} C^{c(α)} Π R_i^{r_i(α)} over `groups`, with
    every R_i drawn from `known`."""
    all_terms = _poly(all_terms_coeffs(kmax))
    factors = [_poly(coefficients) for coefficients in known]
    total = Poly(0, _z, domain=ZZ)
    for stats, multiplicity in groups.items():
        if stats.applications > kmax:
            continue
        monomial = Poly(_z ** stats.applications, _z, domain=ZZ)
        if stats.c_occurrences:
            monomial = _truncate(
                monomial * _power(all_terms, stats.c_occurrences, kmax), kmax
            )
        for index, occurrences in enumerate(stats.r_occurrences):
            if occurrences:
                monomial = _truncate(
                    monomial * _power(factors[index], occurrences, kmax), kmax
                )
        total += multiplicity * monomial
    return _coefficients(total, kmax)


def _without(stats: ProductionStats, index: int) -> ProductionStats:
    occurrences = list(stats.r_occurrences)
    occurrences[index] -= 1
    while occurrences and not occurrences[-1]:
        occurrences.pop()
    return ProductionStats(
        stats.applications, stats.c_occurrences, tuple(occurrences)
    )


def self_reference_series(
    n: int,
    kmax: int,
    store: GrammarStore,
    known: list[list[int]],
) -> list[int]:
    """The factor multiplying R_n(z) in its own equation.

    For n >= 1 this is 2z + 2z²R_0(z): S R_n, K R_n, S R_0 R_n, S R_n R_0.
    `known` holds the series of R_0 .. R_{n-1}.

    Raises:
        GrammarError: If some production of R_n is not linear in R_n.
    """
    groups: Counter = Counter()
    for production in self_referencing_productions(n, store):
        stats = production_stats(production)
        if stats.r_occurrences[n] != 1:
            raise GrammarError(
                f'production {production} of R{n} is not linear in R{n}'
            )
        groups[_without(stats, n)] += 1
    return _weighted_sum(groups, known, kmax)


def series_by_equation(n: int, kmax: int, store: GrammarStore) -> Series:
    """Counting series of R_n solved from its linear functional equation.

    R_n(z) = M(z) R_n(z) + Σ_{α∈Φ(R_n)} z^{k(α)} C(z)^{c(α)} Π R_i(z)^{r_i(α)}
    where M is `self_reference_series`. M has no constant term, so the
    coefficients follow one after another. The result agrees with `series`.

    Raises:
        MissingGrammarError: If R_n has not been constructed.
    """
    if kmax < 0:
        raise ValueError('kmax must be non-negative')
    store.grammar(n)
    # S R_0 R_0 makes R_0 quadratic in itself; its equation is the
    # normal-form one.
    known: list[list[int]] = [normal_form_coeffs(kmax)]
    for index in range(1, n + 1):
        phi = Counter(
            production_stats(production)
            for production in phi_productions(index, store)
        )
        inhomogeneous = _weighted_sum(phi, known, kmax)
        multiplier = self_reference_series(index, kmax, store, known)
        coefficients: list[int] = []
        for k in range(kmax + 1):
            coefficients.append(inhomogeneous[k] + sum(
                multiplier[i] * coefficients[k - i] for i in range(1, k + 1)
            ))
        known.append(coefficients)
    return Series(n, tuple(known[n]))


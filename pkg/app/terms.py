"""Concrete SK-combinators and the normal-order reduction oracle.

Terms are hash-consed: there is exactly one live `Term` object per
structure, so equality is identity and terms can be used as memo keys at
no cost. Every term caches its size, its head constant and the number of
arguments on its left spine, and whether it is in normal form. The last
flag lets `normal_order_step` walk straight to the leftmost outermost
redex without rescanning normal subterms.
"""
import functools
import weakref
from dataclasses import dataclass
from typing import Optional, Union

from app.syntax import MAX_DEPTH, Reader, TERM_GRAMMAR

DEFAULT_FUEL = 64


class Term:
    """An SK-combinator: the constant S or K, or an application.

    Do not instantiate directly, use `constant` and `application`.

    Attributes:
        symbol (Optional[str]): 'S' or 'K' for constants, None for
            applications.
        left (Optional[Term]): Function part of an application.
        right (Optional[Term]): Argument part of an application.
        size (int): Number of applications.
        head (Term): The constant at the end of the left spine.
        arity (int): Number of arguments applied to `head`.
        normal (bool): True if the term contains no redex.
        key (tuple): Canonical ordering key (S < K < applications, then
            left and right subterms lexicographically).
    """
    __slots__ = (
        'symbol', 'left', 'right', 'size', 'head', 'arity', 'normal', 'key',
        '__weakref__',
    )

    def __str__(self) -> str:
        return print_term(self)

    def __repr__(self) -> str:
        return f'<Term {print_term(self)}>'

    def __reduce__(self):
        return (parse_term, (print_term(self),))


_interned: 'weakref.WeakValueDictionary' = weakref.WeakValueDictionary()


def constant(symbol: str) -> Term:
    """Returns the constant S or K."""
    if symbol not in ('S', 'K'):
        raise ValueError(f'unknown combinator {symbol!r}')
    term = _interned.get(symbol)
    if term is None:
        term = object.__new__(Term)
        term.symbol = symbol
        term.left = term.right = None
        term.size = 0
        term.head = term
        term.arity = 0
        term.normal = True
        term.key = (0,) if symbol == 'S' else (1,)
        term = _interned.setdefault(symbol, term)
    return term


S = constant('S')
K = constant('K')


def application(left: Term, right: Term) -> Term:
    """Returns the (unique) term `left right`."""
    pair = (left, right)
    term = _interned.get(pair)
    if term is not None:
        return term
    term = object.__new__(Term)
    term.symbol = None
    term.left = left
    term.right = right
    term.size = left.size + right.size + 1
    term.head = left.head
    term.arity = left.arity + 1
    term.normal = left.normal and right.normal and not _head_redex(term)
    term.key = (2, left.key, right.key)
    return _interned.setdefault(pair, term)


def _head_redex(term: Term) -> bool:
    return (
        (term.head is K and term.arity >= 2)
        or (term.head is S and term.arity >= 3)
    )


def apply_all(head: Term, args) -> Term:
    """Builds the left-associated application `head a_1 ... a_m`."""
    return functools.reduce(application, args, head)


def spine(term: Term) -> tuple[Term, list[Term]]:
    """Splits `term` into its head constant and its spine arguments."""
    args = []
    while term.symbol is None:
        args.append(term.right)
        term = term.left
    args.reverse()
    return term, args


_reader = Reader(TERM_GRAMMAR, constant=constant, apply=application)


def parse_term(text: str, max_depth: int = MAX_DEPTH) -> Term:
    """Parses S/K juxtaposition syntax, e.g. ``S K (K K)``.

    Application is left-associative and parentheses group.

    Raises:
        TermSyntaxError: On an unknown token, unbalanced parentheses or
            parentheses nested deeper than `max_depth`.
    """
    return _reader.read(text, max_depth)


def print_term(term: Term) -> str:
    """Renders `term` with the fewest parentheses that still round-trip."""
    head, args = spine(term)
    parts = [head.symbol]
    for arg in args:
        text = print_term(arg)
        parts.append(f'({text})' if arg.symbol is None else text)
    return ' '.join(parts)


@functools.lru_cache(maxsize=None)
def _terms_of_size(size: int) -> tuple[Term, ...]:
    if size == 0:
        return (S, K)
    found = []
    for left_size in range(size):
        for left in _terms_of_size(left_size):
            for right in _terms_of_size(size - 1 - left_size):
                found.append(application(left, right))
    return tuple(sorted(found, key=lambda term: term.key))


def enumerate_terms(size: int) -> list[Term]:
    """Returns every term with exactly `size` applications.

    The order is deterministic: S < K < applications, applications
    compared by their left and then right subterms.
    """
    if size < 0:
        raise ValueError('size must be non-negative')
    return list(_terms_of_size(size))


def normal_order_step(term: Term) -> Optional[Term]:
    """Contracts the leftmost outermost redex of `term`.

    Returns:
        The one-step reduct, or None if `term` is already in normal form.
    """
    if term.normal:
        return None
    head, args = spine(term)
    if head is K and len(args) >= 2:
        return apply_all(args[0], args[2:])
    if head is S and len(args) >= 3:
        x, y, z = args[:3]
        contracted = application(application(x, z), application(y, z))
        return apply_all(contracted, args[3:])
    # No head redex: arguments normalise one after another, left to right.
    for position, arg in enumerate(args):
        if not arg.normal:
            args[position] = normal_order_step(arg)
            return apply_all(head, args)
    raise AssertionError(f'non-normal term without a redex: {term}')


@dataclass(frozen=True)
class Normalized:
    """The term reached its normal form after exactly `steps` steps."""
    steps: int


@dataclass(frozen=True)
class FuelExhausted:
    """No normal form within `fuel` steps. Says nothing about divergence."""
    fuel: int


ReductionOutcome = Union[Normalized, FuelExhausted]


def reduce_count(term: Term, fuel: int = DEFAULT_FUEL) -> ReductionOutcome:
    """Counts normal-order steps to normal form, giving up after `fuel`."""
    if fuel < 0:
        raise ValueError('fuel must be non-negative')
    steps = 0
    while not term.normal:
        if steps == fuel:
            return FuelExhausted(fuel)
        term = normal_order_step(term)
        steps += 1
    return Normalized(steps)


def reduction_trace(term: Term, fuel: int = DEFAULT_FUEL) -> list[Term]:
    """Returns `term` followed by each of its reducts, at most `fuel` of them."""
    trace = [term]
    while not term.normal and len(trace) <= fuel:
        term = normal_order_step(term)
        trace.append(term)
    return trace

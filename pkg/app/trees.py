"""Normal trees: right-hand sides of the reduction grammars.

A tree is built from the constants S and K, the nonterminal C (all
SK-terms), the nonterminals R0, R1, ... (terms normalising in exactly n
steps) and binary application. Like terms, trees are hash-consed, so
structural equality is identity and pairs of trees make cheap memo keys.

The measures that do not need any grammar (size, length, degree) are
cached on the tree. The ones that do (the rewriting relation and the
potential) take the `GrammarStore` holding R0..RN and memoise there.
"""
from __future__ import annotations

import functools
import weakref
from typing import TYPE_CHECKING, Iterable, Optional

from app.errors import MissingGrammarError, NotNormalTreeError
from app.syntax import MAX_DEPTH, Reader, TREE_GRAMMAR

if TYPE_CHECKING:
    from app.grammar import GrammarStore

# Canonical order: constants < C < R_i < applications.
_RANK = {'S': (0, 0), 'K': (0, 1), 'C': (1,)}


class Tree:
    """A grammar tree. Build them with `constant`, `nonterminal` and
    `application`; never instantiate directly.

    Attributes:
        kind (str): 'S', 'K', 'C', 'R' or '@' (application).
        index (Optional[int]): n for R_n.
        left, right (Optional[Tree]): Children of an application.
        size (int): Number of applications.
        head (Optional[Tree]): The S or K constant heading the tree, or None
            if the tree is C, some R_n, or headed by one of them.
        length (int): Number of spine arguments of a complex tree, else 0.
        normal (bool): True for constants, nonterminals and complex trees
            whose arguments are all normal.
        nonterminals (frozenset[int]): Indices n of every R_n occurring.
        key (tuple): Canonical ordering key.
    """
    __slots__ = (
        'kind', 'index', 'left', 'right', 'size', 'head', 'length', 'normal',
        'nonterminals', 'key', '_args', '__weakref__',
    )

    @property
    def degree(self) -> int:
        """Least n such that no R_i with i >= n occurs in the tree."""
        return max(self.nonterminals) + 1 if self.nonterminals else 0

    @property
    def is_complex(self) -> bool:
        return self.kind == '@' and self.head is not None

    @property
    def args(self) -> tuple[Tree, ...]:
        """Spine arguments α_1 ... α_m of a tree headed by S or K."""
        if self._args is None:
            args = []
            tree = self
            while tree.kind == '@':
                args.append(tree.right)
                tree = tree.left
            args.reverse()
            self._args = tuple(args)
        return self._args

    def __str__(self) -> str:
        return print_tree(self)

    def __repr__(self) -> str:
        return f'<Tree {print_tree(self)}>'

    def __reduce__(self):
        return (parse_tree, (print_tree(self),))


_interned: 'weakref.WeakValueDictionary' = weakref.WeakValueDictionary()


def _leaf(kind: str, index: Optional[int]) -> Tree:
    tree = object.__new__(Tree)
    tree.kind = kind
    tree.index = index
    tree.left = tree.right = None
    tree.size = 0
    tree.length = 0
    tree.normal = True
    tree._args = ()
    if kind == 'R':
        tree.head = None
        tree.nonterminals = frozenset((index,))
        tree.key = (2, index)
    else:
        tree.head = tree if kind in ('S', 'K') else None
        tree.nonterminals = frozenset()
        tree.key = _RANK[kind]
    return tree


def constant(symbol: str) -> Tree:
    """Returns the constant S or K, or the nonterminal C."""
    if symbol not in _RANK:
        raise ValueError(f'unknown tree symbol {symbol!r}')
    tree = _interned.get(symbol)
    if tree is None:
        tree = _interned.setdefault(symbol, _leaf(symbol, None))
    return tree


def nonterminal(index: int) -> Tree:
    """Returns the nonterminal R_index."""
    if index < 0:
        raise ValueError('grammar index must be non-negative')
    key = ('R', index)
    tree = _interned.get(key)
    if tree is None:
        tree = _interned.setdefault(key, _leaf('R', index))
    return tree


S = constant('S')
K = constant('K')
C = constant('C')
R = nonterminal


def application(left: Tree, right: Tree) -> Tree:
    """Returns the (unique) tree `left right`."""
    pair = (left, right)
    tree = _interned.get(pair)
    if tree is not None:
        return tree
    tree = object.__new__(Tree)
    tree.kind = '@'
    tree.index = None
    tree.left = left
    tree.right = right
    tree.size = left.size + right.size + 1
    tree.head = left.head
    tree.length = left.length + 1 if left.head is not None else 0
    tree.normal = left.head is not None and left.normal and right.normal
    tree.nonterminals = left.nonterminals | right.nonterminals
    tree.key = (3, left.key, right.key)
    tree._args = None
    return _interned.setdefault(pair, tree)


def apply_all(head: Tree, args: Iterable[Tree]) -> Tree:
    """Builds `head a_1 ... a_m`."""
    return functools.reduce(application, args, head)


def canonical(trees: Iterable[Tree]) -> tuple[Tree, ...]:
    """Deduplicates `trees` and sorts them into canonical order."""
    return tuple(sorted(dict.fromkeys(trees), key=lambda tree: tree.key))


def require_normal(tree: Tree) -> Tree:
    """Returns `tree`, raising `NotNormalTreeError` if it is not normal."""
    if not tree.normal:
        raise NotNormalTreeError(tree)
    return tree


def shape(tree: Tree) -> tuple[Optional[str], int]:
    """(head symbol, length): trees can only overlap if their shapes agree."""
    return (tree.head.kind if tree.head is not None else None, tree.length)


_reader = Reader(
    TREE_GRAMMAR,
    constant=constant,
    apply=application,
    nonterminal=nonterminal,
)


def parse_tree(text: str, max_depth: int = MAX_DEPTH) -> Tree:
    """Parses tree syntax such as ``S (K R1) C`` or ``K R_0 C``.

    Raises:
        TermSyntaxError: On an unknown token, unbalanced parentheses or
            parentheses nested deeper than `max_depth`.
    """
    return _reader.read(text, max_depth)


def print_tree(tree: Tree) -> str:
    """Renders `tree` left-associatively; R_n prints as ``Rn``."""
    if tree.kind == 'R':
        return f'R{tree.index}'
    if tree.kind != '@':
        return tree.kind
    left = print_tree(tree.left)
    right = print_tree(tree.right)
    return f'{left} ({right})' if tree.right.kind == '@' else f'{left} {right}'


def length(tree: Tree) -> int:
    """m for a complex X α_1 ... α_m, otherwise 0."""
    return tree.length


def degree(tree: Tree) -> int:
    return tree.degree


def similar(a: Tree, b: Tree) -> bool:
    """True iff both trees are complex with the same head and length."""
    return (
        a.is_complex
        and b.is_complex
        and a.head is b.head
        and a.length == b.length
    )


def is_short(tree: Tree) -> bool:
    """True for X α_1 and S α_1 α_2: trees that cannot carry a head redex."""
    return tree.is_complex and (
        tree.length == 1 or (tree.head is S and tree.length == 2)
    )


def rewrites(a: Tree, b: Tree, store: GrammarStore) -> bool:
    """Decides a ⊵ b, i.e. whether a rewrites to b (so L(b) ⊆ L(a)).

    Raises:
        MissingGrammarError: If either tree references an R_i that the
            store has not constructed.
    """
    store.require(a)
    store.require(b)
    return rewrites_unchecked(a, b, store)


def rewrites_unchecked(a: Tree, b: Tree, store: GrammarStore) -> bool:
    if a is b or a is C:
        return True
    if a.kind in ('S', 'K'):
        return False
    if a.kind == '@' and b.kind != '@':
        return False
    pair = (a, b)
    cache = store.rewrite_cache
    known = cache.get(pair)
    if known is not None:
        return known
    if a.kind == '@':
        # Agreeing spines compare argument-wise; a constant never rewrites
        # to an application, so dissimilar trees fail on the way down.
        result = (
            rewrites_unchecked(a.left, b.left, store)
            and rewrites_unchecked(a.right, b.right, store)
        )
    else:
        # Only productions of the same shape as b can rewrite to it. The
        # recursion terminates because b strictly shrinks every other call.
        result = any(
            rewrites_unchecked(production, b, store)
            for production in store.shaped(a.index, shape(b))
        )
    cache[pair] = result
    return result


def potential(tree: Tree, store: GrammarStore) -> int:
    """Tree potential: a size-like measure accounting for R_n's depth.

    ‖S‖ = ‖K‖ = ‖C‖ = 0, ‖X α_1 ... α_m‖ = m + Σ ‖α_i‖ and
    ‖R_n‖ = 1 + max of ‖γ‖ over the productions γ of R_n not mentioning R_n.

    Raises:
        MissingGrammarError: If a referenced R_i is not constructed.
        NotNormalTreeError: If the tree is not normal.
    """
    store.require(require_normal(tree))
    return potential_unchecked(tree, store)


def potential_unchecked(tree: Tree, store: GrammarStore) -> int:
    if tree.kind == 'R':
        return store.grammar_potential(tree.index)
    if tree.kind != '@':
        return 0
    return tree.length + sum(potential_unchecked(arg, store) for arg in tree.args)


def check_store_holds(tree: Tree, capacity: int) -> None:
    """Raises `MissingGrammarError` for the first R_i beyond `capacity`."""
    missing = [i for i in tree.nonterminals if i >= capacity]
    if missing:
        raise MissingGrammarError(min(missing))

"""Construction of the reduction grammars R_0, R_1, ...

R_n generates exactly the SK-terms that reach their normal form in n
normal-order steps. R_0 is fixed; R_n is assembled from the short
productions every R_n shares plus the K- and S-Expansions of the
productions of R_{n-1}. S-Expansions need the rewriting and mesh sets
defined here, which in turn consult the rewriting relation of
`app.trees`.

All grammars and every memo table live in a `GrammarStore`. Grammars
are built strictly in index order and never change afterwards.
"""
from __future__ import annotations

import itertools
import logging
import threading
import time
from collections import OrderedDict
from dataclasses import dataclass, field

from app.errors import GrammarOrderError, MissingGrammarError
from app.trees import (
    C,
    K,
    R,
    S,
    Tree,
    application,
    apply_all,
    canonical,
    check_store_holds,
    potential_unchecked,
    require_normal,
    rewrites_unchecked,
    shape,
    similar,
)

logger = logging.getLogger(__name__)

MEMBERSHIP_CACHE_SIZE = 200_000


@dataclass(frozen=True)
class Grammar:
    """The productions of one reduction grammar R_n.

    Attributes:
        index (int): n.
        productions (tuple[Tree, ...]): Duplicate-free, canonically ordered.
        shapes (dict): Productions grouped by (head symbol, length), the
            only ones that can overlap a tree of that shape.
    """
    index: int
    productions: tuple[Tree, ...]
    shapes: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        shapes: dict = {}
        for production in self.productions:
            shapes.setdefault(shape(production), []).append(production)
        object.__setattr__(
            self,
            'shapes',
            {key: tuple(group) for key, group in shapes.items()},
        )

    def __len__(self) -> int:
        return len(self.productions)

    def __repr__(self) -> str:
        return f'<Grammar R{self.index}: {len(self.productions)} productions>'

    def __contains__(self, tree: Tree) -> bool:
        return tree in self.shapes.get(shape(tree), ())

    @property
    def max_length(self) -> int:
        return max(production.length for production in self.productions)


class BoundedCache(OrderedDict):
    """A memo dict that forgets its least recently used entries.

    Only `get` and item assignment refresh an entry. Eviction never changes
    an answer, it only means the entry is computed again.
    """

    def __init__(self, maxsize: int):
        if maxsize < 1:
            raise ValueError('cache size must be positive')
        super().__init__()
        self.maxsize = maxsize

    def get(self, key, default=None):
        try:
            value = self[key]
            self.move_to_end(key)
        except KeyError:
            return default
        return value

    def __setitem__(self, key, value):
        super().__setitem__(key, value)
        self.move_to_end(key)
        while len(self) > self.maxsize:
            self.popitem(last=False)


class GrammarStore:
    """Memoised table of R_0 .. R_N plus the caches derived from it.

    Caches are keyed by interned trees (and terms). Inserting a key twice
    stores the same value, so concurrent readers are safe; construction
    itself is serialised by a lock. The grammar caches are bounded by the
    grammars themselves. The membership cache grows with every term ever
    asked about, so it keeps at most `membership_cache_size` entries.
    """

    def __init__(self, membership_cache_size: int = MEMBERSHIP_CACHE_SIZE):
        self._grammars: list[Grammar] = []
        self._lock = threading.RLock()
        self._potentials: dict[int, int] = {}
        self.rewrite_cache: dict = {}
        self.mesh_cache: dict = {}
        self.rewriting_cache: dict = {}
        self.membership_cache = BoundedCache(membership_cache_size)
        self.count_cache: dict = {}

    def __repr__(self) -> str:
        return f'<GrammarStore R0..R{self.capacity - 1}>'

    @property
    def capacity(self) -> int:
        """Number of constructed grammars (R_0 .. R_{capacity-1})."""
        return len(self._grammars)

    def grammar(self, index: int) -> Grammar:
        """Returns a constructed grammar, raising `MissingGrammarError`."""
        if not 0 <= index < len(self._grammars):
            raise MissingGrammarError(index)
        return self._grammars[index]

    def productions(self, index: int) -> tuple[Tree, ...]:
        return self.grammar(index).productions

    def shaped(self, index: int, key: tuple) -> tuple[Tree, ...]:
        """Productions of R_index with the given (head, length) shape."""
        return self.grammar(index).shapes.get(key, ())

    def require(self, tree: Tree) -> Tree:
        """Checks that every R_i occurring in `tree` is constructed."""
        check_store_holds(tree, self.capacity)
        return tree

    def construct(self, index: int) -> Grammar:
        """Builds R_index; only the next unbuilt index is accepted.

        Raises:
            GrammarOrderError: If `index` is not `capacity`.
        """
        with self._lock:
            if index != self.capacity:
                raise GrammarOrderError(index, self.capacity)
            started = time.perf_counter()
            grammar = Grammar(index, _build_productions(index, self))
            self._grammars.append(grammar)
            logger.info(
                'constructed R%d: %d productions in %.2fs',
                index,
                len(grammar),
                time.perf_counter() - started,
            )
            return grammar

    def ensure(self, index: int) -> Grammar:
        """Builds every missing grammar up to R_index and returns it."""
        with self._lock:
            while self.capacity <= index:
                self.construct(self.capacity)
        return self._grammars[index]

    def grammar_potential(self, index: int) -> int:
        """‖R_index‖, memoised."""
        known = self._potentials.get(index)
        if known is None:
            known = 1 + max(
                potential_unchecked(production, self)
                for production in phi_productions(index, self)
            )
            self._potentials[index] = known
        return known


def reduction_grammar(n: int, store: GrammarStore) -> Grammar:
    """Returns R_n, constructing R_0 .. R_n in order as needed."""
    if n < 0:
        raise ValueError('grammar index must be non-negative')
    return store.ensure(n)


def _build_productions(n: int, store: GrammarStore) -> tuple[Tree, ...]:
    if n == 0:
        return canonical([
            S,
            K,
            application(S, R(0)),
            application(K, R(0)),
            apply_all(S, [R(0), R(0)]),
        ])
    previous = store.productions(n - 1)
    productions = [application(S, R(n)), application(K, R(n))]
    productions += [apply_all(S, [R(n - i), R(i)]) for i in range(n + 1)]
    productions.append(apply_all(K, [R(n - 1), C]))
    k_expanded = [t for p in previous for t in k_expansions(p)]
    s_expanded = [t for p in previous for t in s_expansions(p, store)]
    logger.debug(
        'R%d: %d K-Expansions, %d S-Expansions of %d productions',
        n,
        len(k_expanded),
        len(s_expanded),
        len(previous),
    )
    return canonical(productions + k_expanded + s_expanded)


def phi_productions(n: int, store: GrammarStore) -> list[Tree]:
    """Φ(R_n): the productions of R_n that do not mention R_n."""
    return [
        production for production in store.productions(n)
        if n not in production.nonterminals
    ]


def self_referencing_productions(n: int, store: GrammarStore) -> list[Tree]:
    """The productions of R_n that mention R_n."""
    return [
        production for production in store.productions(n)
        if n in production.nonterminals
    ]


def k_expansions(production: Tree) -> list[Tree]:
    """K (X α_1..α_k) C α_{k+1}..α_m for k = 0..m-1.

    Every term of a K-Expansion contracts its head K-redex into a term of
    `production`.
    """
    require_normal(production)
    if not production.is_complex:
        return []
    args = production.args
    return [
        apply_all(K, [apply_all(production.head, args[:k]), C, *args[k:]])
        for k in range(len(args))
    ]


def s_expansions(production: Tree, store: GrammarStore) -> list[Tree]:
    """S (X α_1..α_k) φ_l φ_r α_{k+3}..α_m for k = 0..m-2.

    (φ_l φ_r) ranges over the rewriting set of α_{k+1} and α_{k+2}, so the
    head S-redex of every generated term contracts into `production`.
    """
    require_normal(production)
    if not production.is_complex:
        return []
    store.require(production)
    args = production.args
    expanded = []
    for k in range(len(args) - 1):
        prefix = apply_all(production.head, args[:k])
        rest = args[k + 2:]
        for pair in _rewriting_set(args[k], args[k + 1], store):
            expanded.append(
                apply_all(S, [prefix, pair.left, pair.right, *rest])
            )
    return expanded


def mesh_set(a: Tree, b: Tree, store: GrammarStore) -> list[Tree]:
    """Trees γ with a ⊵ γ and b ⊵ γ partitioning L(a) ∩ L(b).

    Meant for non-rewritable a and b; the result is canonically ordered.
    """
    store.require(require_normal(a))
    store.require(require_normal(b))
    return list(_mesh_set(a, b, store))


def _mesh_set(a: Tree, b: Tree, store: GrammarStore) -> tuple[Tree, ...]:
    pair = (a, b)
    cache = store.mesh_cache
    known = cache.get(pair)
    if known is not None:
        return known

    if a.is_complex and b.is_complex:
        result = _mesh_similar(a, b, store) if similar(a, b) else ()
    elif a.kind == 'R' and b.is_complex:
        result = canonical(itertools.chain.from_iterable(
            _mesh_set(production, b, store)
            for production in store.shaped(a.index, shape(b))
        ))
    elif b.kind == 'R' and a.is_complex:
        result = canonical(itertools.chain.from_iterable(
            _mesh_set(a, production, store)
            for production in store.shaped(b.index, shape(a))
        ))
    else:
        # Includes R_i against R_j: distinct reduction grammars are disjoint.
        result = ()

    cache[pair] = result
    return result


def _mesh_similar(a: Tree, b: Tree, store: GrammarStore) -> tuple[Tree, ...]:
    candidates = []
    for left, right in zip(a.args, b.args):
        if rewrites_unchecked(left, right, store):
            candidates.append((right,))
        elif rewrites_unchecked(right, left, store):
            candidates.append((left,))
        else:
            meshes = _mesh_set(left, right, store)
            if not meshes:
                return ()
            candidates.append(meshes)
    return canonical(
        apply_all(a.head, combination)
        for combination in itertools.product(*candidates)
    )


def rewriting_set(a: Tree, b: Tree, store: GrammarStore) -> list[Tree]:
    """Applications φ_l φ_r with a ⊵ φ_r and b ⊵ φ_l φ_r.

    Together they cover every way a term of L(b) can have the shape y z
    with z in L(a), which is what an S-redex S x y z needs.
    """
    store.require(require_normal(a))
    store.require(require_normal(b))
    return list(_rewriting_set(a, b, store))


def _rewriting_set(a: Tree, b: Tree, store: GrammarStore) -> tuple[Tree, ...]:
    if b.kind in ('S', 'K'):
        return ()
    if b is C:
        return (application(C, a),)
    pair = (a, b)
    cache = store.rewriting_cache
    known = cache.get(pair)
    if known is not None:
        return known

    if b.kind == 'R':
        result = canonical(itertools.chain.from_iterable(
            _rewriting_set(a, production, store)
            for production in store.productions(b.index)
        ))
    else:
        last = b.right
        if rewrites_unchecked(a, last, store):
            result = (b,)
        elif rewrites_unchecked(last, a, store):
            result = (application(b.left, a),)
        else:
            result = canonical(
                application(b.left, mesh)
                for mesh in _mesh_set(a, last, store)
            )

    cache[pair] = result
    return result


def dump_grammar(grammar: Grammar) -> str:
    """One production per line, canonical order."""
    return ''.join(f'{production}\n' for production in grammar.productions)


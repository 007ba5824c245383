"""Text syntax shared by SK-terms and grammar trees.

Both languages are left-associative juxtaposition over a handful of
tokens with parentheses for grouping, e.g. ``S K (K K)``. Terms only know
the constants S and K; trees additionally know the nonterminal C and the
reduction grammars R0, R1, ... (``R_0`` is accepted as well).
"""
from __future__ import annotations

import functools
from typing import Callable, Generic, TypeVar

from lark import Lark, Transformer
from lark.exceptions import (
    UnexpectedCharacters,
    UnexpectedEOF,
    UnexpectedInput,
)

from app.errors import TermSyntaxError

T = TypeVar('T')

# Deepest parenthesis nesting `Reader.read` accepts unless told otherwise
MAX_DEPTH = 100

TERM_GRAMMAR = r'''
    start: expr
    expr: atom+
    ?atom: CONSTANT
         | "(" expr ")"
    CONSTANT: "S" | "K"
    %import common.WS
    %ignore WS
'''

TREE_GRAMMAR = r'''
    start: expr
    expr: atom+
    ?atom: CONSTANT
         | NONTERMINAL
         | "(" expr ")"
    CONSTANT: "S" | "K" | "C"
    NONTERMINAL: /R_?[0-9]+/
    %import common.WS
    %ignore WS
'''


class _Builder(Transformer):
    """Folds the parse tree into a value using the given constructors."""

    def __init__(
        self,
        constant: Callable[[str], T],
        apply: Callable[[T, T], T],
        nonterminal: Callable[[int], T] | None = None,
    ):
        super().__init__()
        self._constant = constant
        self._apply = apply
        self._nonterminal = nonterminal

    def CONSTANT(self, token) -> T:
        return self._constant(str(token))

    def NONTERMINAL(self, token) -> T:
        return self._nonterminal(int(str(token).lstrip('R_')))

    def expr(self, children) -> T:
        return functools.reduce(self._apply, children)

    def start(self, children) -> T:
        return children[0]


class Reader(Generic[T]):
    """LALR reader turning text into terms or trees.

    Args:
        grammar (str): Lark grammar text, `TERM_GRAMMAR` or `TREE_GRAMMAR`.
        constant: Builds a constant from its symbol.
        apply: Builds an application from two parsed values.
        nonterminal: Builds R_i from its index (tree grammar only).
    """

    def __init__(self, grammar: str, constant, apply, nonterminal=None):
        self._parser = Lark(grammar, parser='lalr')
        self._builder = _Builder(constant, apply, nonterminal)

    def read(self, text: str, max_depth: int = MAX_DEPTH) -> T:
        """Parse `text`, raising `TermSyntaxError` with the failing offset.

        Text nested deeper than `max_depth` parentheses is rejected before
        parsing; the fold into terms recurses once per level.
        """
        _check_depth(text, max_depth)
        try:
            parsed = self._parser.parse(text)
        except UnexpectedInput as err:
            raise TermSyntaxError(_describe(err), _position(err, text)) from err
        return self._builder.transform(parsed)


def _check_depth(text: str, max_depth: int) -> None:
    depth = 0
    for position, char in enumerate(text):
        if char == '(':
            depth += 1
            if depth > max_depth:
                raise TermSyntaxError(
                    f'parentheses nested deeper than {max_depth}', position
                )
        elif char == ')':
            depth -= 1


def _position(err: UnexpectedInput, text: str) -> int:
    position = getattr(err, 'pos_in_stream', None)
    if position is None or position < 0:
        return len(text)
    return position


def _describe(err: UnexpectedInput) -> str:
    if isinstance(err, UnexpectedCharacters):
        return f'unknown token {err.char!r}'
    if isinstance(err, UnexpectedEOF):
        return 'unexpected end of input (unbalanced parentheses?)'
    token = getattr(err, 'token', None)
    if token is not None and token.type == '$END':
        return 'unexpected end of input (unbalanced parentheses?)'
    return f'unexpected {str(token)!r}' if token is not None else 'syntax error'
